#ifndef SDLAB_FFT_HPP
#define SDLAB_FFT_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace sdlab {

using cdouble = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place iterative radix-2 transform. sign = -1 for the forward convention
// sum_j a_j e^{-2 pi i jk/n}, +1 for the adjoint. No normalization.
inline void fft_radix2(std::vector<cdouble>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    // Twiddles from direct trig per level; avoids recurrence error growth.
    std::vector<cdouble> tw(n / 2);
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const double ang = sign * 2.0 * pi / static_cast<double>(len);
        for (std::size_t j = 0; j < half; ++j)
            tw[j] = cdouble(std::cos(ang * static_cast<double>(j)),
                            std::sin(ang * static_cast<double>(j)));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                const cdouble u = a[i + j];
                const cdouble t = tw[j] * a[i + j + half];
                a[i + j] = u + t;
                a[i + j + half] = u - t;
            }
        }
    }
}

// Bluestein chirp transform for arbitrary length, via one power-of-two
// circular convolution. Exact chirp angles use j^2 mod 2n in integers.
inline void fft_bluestein(std::vector<cdouble>& a, int sign) {
    const std::size_t n = a.size();
    if (n <= 1) return;
    std::vector<cdouble> chirp(n);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t j2 = (j * j) % (2 * n);
        const double ang = sign * pi * static_cast<double>(j2) / static_cast<double>(n);
        chirp[j] = cdouble(std::cos(ang), std::sin(ang));
    }
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;
    std::vector<cdouble> x(m, cdouble(0.0)), y(m, cdouble(0.0));
    for (std::size_t j = 0; j < n; ++j) x[j] = a[j] * chirp[j];
    for (std::size_t j = 0; j < n; ++j) {
        y[j] = std::conj(chirp[j]);
        if (j != 0) y[m - j] = std::conj(chirp[j]);
    }
    fft_radix2(x, -1);
    fft_radix2(y, -1);
    for (std::size_t j = 0; j < m; ++j) x[j] *= y[j];
    fft_radix2(x, +1);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) a[k] = chirp[k] * x[k] * scale;
}

}  // namespace detail

// Unnormalized discrete Fourier transform of any length.
// sign = -1: b_k = sum_j a_j e^{-2 pi i jk/n}; sign = +1: the adjoint.
inline void dft_inplace(std::vector<cdouble>& a, int sign) {
    if (detail::is_power_of_two(a.size()))
        detail::fft_radix2(a, sign);
    else
        detail::fft_bluestein(a, sign);
}

inline std::vector<cdouble> dft(std::vector<cdouble> a, int sign) {
    dft_inplace(a, sign);
    return a;
}

}  // namespace sdlab

#endif
