#include <catch2/catch.hpp>
#include <random>

#include "sdlab/fft.hpp"

using namespace sdlab;

namespace {

// Direct O(n^2) reference transform.
std::vector<cdouble> dft_naive(const std::vector<cdouble>& a, int sign) {
    const std::size_t n = a.size();
    std::vector<cdouble> out(n, cdouble(0.0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sign * 2.0 * pi * static_cast<double>(j * k % n) /
                               static_cast<double>(n);
            out[k] += a[j] * cdouble(std::cos(ang), std::sin(ang));
        }
    }
    return out;
}

std::vector<cdouble> random_signal(std::size_t n, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cdouble> a(n);
    for (auto& z : a) z = cdouble(dist(rng), dist(rng));
    return a;
}

}  // namespace

TEST_CASE("dft matches the direct transform") {
    for (std::size_t n : {8u, 16u, 64u, 12u, 37u, 101u}) {
        const auto a = random_signal(n, static_cast<unsigned>(n));
        const auto fast = dft(a, -1);
        const auto slow = dft_naive(a, -1);
        double err = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            err = std::max(err, std::abs(fast[i] - slow[i]));
            scale = std::max(scale, std::abs(slow[i]));
        }
        INFO("n = " << n);
        CHECK(err <= 1e-10 * std::max(1.0, scale));
    }
}

TEST_CASE("dft round-trips") {
    for (std::size_t n : {4u, 256u, 1000u, 6u, 121u}) {
        const auto a = random_signal(n, 7u + static_cast<unsigned>(n));
        auto b = dft(a, -1);
        b = dft(b, +1);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            err = std::max(err, std::abs(b[i] / static_cast<double>(n) - a[i]));
        INFO("n = " << n);
        CHECK(err <= 1e-12);
    }
}

TEST_CASE("dft is unitary up to scale (Parseval)") {
    const auto a = random_signal(512, 3u);
    const auto b = dft(a, -1);
    double ea = 0.0, eb = 0.0;
    for (const auto& z : a) ea += std::norm(z);
    for (const auto& z : b) eb += std::norm(z);
    CHECK(eb / static_cast<double>(a.size()) == Approx(ea).epsilon(1e-12));
}
