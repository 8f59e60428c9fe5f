#include <catch2/catch.hpp>
#include <random>

#include "sdlab/dynamics.hpp"
#include "sdlab/experiments.hpp"

using namespace sdlab;

namespace {

double max_pointwise_error(const Field& a, const Field& b) {
    double err = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        err = std::max(err, std::abs(a.samples[i] - b.samples[i]));
    return err;
}

double max_pointwise_error(const SDState& a, const SDState& b) {
    return std::max(max_pointwise_error(a.u, b.u), max_pointwise_error(a.v, b.v));
}

// RK4 on the pointwise ODE pair {i u_t = u v, sigma v_t + v = eps |u|^2};
// independent oracle for the closed-form nonlinear substep.
std::pair<cdouble, double> ode_oracle(cdouble u0, double v0, double sigma, double eps, double t,
                                      int steps) {
    struct Y {
        cdouble u;
        double v;
    };
    auto rhs = [&](const Y& y) {
        return Y{cdouble(0.0, -1.0) * y.u * y.v, (eps * std::norm(y.u) - y.v) / sigma};
    };
    Y y{u0, v0};
    const double h = t / steps;
    for (int k = 0; k < steps; ++k) {
        const Y k1 = rhs(y);
        const Y k2 = rhs(Y{y.u + 0.5 * h * k1.u, y.v + 0.5 * h * k1.v});
        const Y k3 = rhs(Y{y.u + 0.5 * h * k2.u, y.v + 0.5 * h * k2.v});
        const Y k4 = rhs(Y{y.u + h * k3.u, y.v + h * k3.v});
        y.u += h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
        y.v += h / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    }
    return {y.u, y.v};
}

}  // namespace

TEST_CASE("linear_step") {
    const Grid1D g = make_grid(32, 2.0 * pi);
    SECTION("plane waves are eigenfunctions") {
        const Field f = plane_wave_data(g, cdouble(1.0), 5);
        const Field out = linear_step(f, 0.3);
        const cdouble expect(std::cos(-25.0 * 0.15), std::sin(-25.0 * 0.15));
        for (std::size_t i = 0; i < g.num_points(); ++i)
            CHECK(std::abs(out.samples[i] - expect * f.samples[i]) <= 1e-13);
    }
    SECTION("dt = 0 is the identity") {
        const Field f = gaussian_data(g, 0.5, 1.0);
        CHECK(max_pointwise_error(linear_step(f, 0.0), f) == 0.0);
    }
    SECTION("preserves the L2 norm") {
        std::mt19937 rng(4);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        const Field f = make_field(g, [&](double) { return cdouble(dist(rng), dist(rng)); });
        CHECK(l2_norm(linear_step(f, 0.77)) == Approx(l2_norm(f)).epsilon(1e-12));
    }
}

TEST_CASE("nonlinear_step closed form") {
    const Grid1D g = make_grid(16, 2.0 * pi);
    SECTION("constant v relaxes toward eps|u|^2") {
        const double c = 0.4, dt = 0.2, sigma = 0.7;
        const SDParams p{sigma, 1, dt};
        Field u = gaussian_data(g, 0.8, 1.3);
        Field v = make_field(g, [&](double) { return cdouble(c, 0.0); });
        const SDState out = nonlinear_step(make_sd_state(u, v), p, dt);
        for (std::size_t i = 0; i < g.num_points(); ++i) {
            const double rho = std::norm(u.samples[i]);
            const double expect = rho + (c - rho) * std::exp(-dt / sigma);
            CHECK(out.v.samples[i].real() == Approx(expect).margin(1e-14));
            CHECK(out.v.samples[i].imag() == 0.0);
        }
    }
    SECTION("equilibrium v = eps|u|^2 is a fixed point with pure phase rotation") {
        const double dt = 0.15;
        const SDParams p{2.0, -1, dt};
        Field u = gaussian_data(g, 0.6, 0.9);
        Field v = u;
        for (std::size_t i = 0; i < g.num_points(); ++i)
            v.samples[i] = cdouble(-std::norm(u.samples[i]), 0.0);
        const SDState out = nonlinear_step(make_sd_state(u, v), p, dt);
        for (std::size_t i = 0; i < g.num_points(); ++i) {
            CHECK(out.v.samples[i].real() == Approx(v.samples[i].real()).margin(1e-14));
            const double phi = v.samples[i].real() * dt;
            const cdouble expect = u.samples[i] * cdouble(std::cos(phi), -std::sin(phi));
            CHECK(std::abs(out.u.samples[i] - expect) <= 1e-14);
        }
    }
    SECTION("sigma=1, eps=1, u=1, v=0, dt=1 frozen values") {
        const SDParams p{1.0, 1, 1.0};
        Field u = make_field(g, [](double) { return cdouble(1.0, 0.0); });
        Field v = zero_field(g);
        const SDState out = nonlinear_step(make_sd_state(u, v), p, 1.0);
        const double v_expect = 1.0 - std::exp(-1.0);         // 0.63212...
        const double phi_expect = std::exp(-1.0);             // 0.36787...
        CHECK(out.v.samples[0].real() == Approx(v_expect).epsilon(1e-12));
        const cdouble u_expect(std::cos(phi_expect), -std::sin(phi_expect));
        CHECK(std::abs(out.u.samples[0] - u_expect) <= 1e-12);
        CHECK(v_expect == Approx(0.632121).margin(1e-6));
        CHECK(phi_expect == Approx(0.367879).margin(1e-6));
    }
    SECTION("matches a fine-step ODE integration") {
        const double sigma = 0.9, dt = 0.31;
        const SDParams p{sigma, 1, dt};
        const cdouble u0(0.7, -0.4);
        const double v0 = -0.3;
        Field u = make_field(g, [&](double) { return u0; });
        Field v = make_field(g, [&](double) { return cdouble(v0, 0.0); });
        const SDState out = nonlinear_step(make_sd_state(u, v), p, dt);
        const auto [u_ref, v_ref] = ode_oracle(u0, v0, sigma, 1.0, dt, 4000);
        CHECK(std::abs(out.u.samples[0] - u_ref) <= 1e-10);
        CHECK(std::abs(out.v.samples[0].real() - v_ref) <= 1e-10);
    }
}

TEST_CASE("evolve against the plane-wave oracle") {
    const Grid1D g = make_grid(64, 2.0 * pi);
    for (double dt : {0.1, 0.01}) {
        for (int eps : {1, -1}) {
            const SDParams p{1.0, eps, dt};
            const SDState init = make_sd_state(plane_wave_data(g, cdouble(1.0), 1), zero_field(g));
            const Trajectory tr = evolve(init, p, 1.0,
                                         static_cast<std::size_t>(std::llround(1.0 / dt)));
            const SDState ref = plane_wave_oracle(g, cdouble(1.0), 1, 0.0, p, 1.0);
            SDState last{tr.u.frames.back(), tr.v.frames.back(), 1.0};
            INFO("dt = " << dt << " eps = " << eps);
            CHECK(max_pointwise_error(last, ref) <= 1e-10);
        }
    }
}

TEST_CASE("plane_wave_oracle edge cases") {
    const Grid1D g = make_grid(32, 2.0 * pi);
    const SDParams p{1.0, 1, 0.01};
    SECTION("t = 0 returns the initial data") {
        const SDState s = plane_wave_oracle(g, cdouble(1.0), 2, 0.5, p, 0.0);
        const Field u0 = plane_wave_data(g, cdouble(1.0), 2);
        CHECK(max_pointwise_error(s.u, u0) <= 1e-14);
        CHECK(s.v.samples[0].real() == Approx(0.5).margin(1e-15));
    }
    SECTION("equilibrium initial v is time-invariant") {
        const SDParams pm{1.0, -1, 0.01};
        const SDState s = plane_wave_oracle(g, cdouble(1.0), 1, -1.0, pm, 2.7);
        for (const auto& z : s.v.samples) CHECK(z.real() == Approx(-1.0).margin(1e-14));
    }
    SECTION("frozen values at t = 1, sigma = 1, eps = 1") {
        const SDState s = plane_wave_oracle(g, cdouble(1.0), 1, 0.0, p, 1.0);
        CHECK(s.v.samples[0].real() == Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
        // u = e^{ix} e^{-i/2} e^{-i e^{-1}}
        const double phase_at_zero = -(0.5 + std::exp(-1.0));
        CHECK(s.u.samples[0].real() == Approx(std::cos(phase_at_zero)).epsilon(1e-12));
        CHECK(s.u.samples[0].imag() == Approx(std::sin(phase_at_zero)).epsilon(1e-12));
    }
    SECTION("requires the 2 pi grid") {
        const Grid1D bad = make_grid(32, 5.0);
        CHECK_THROWS_AS(plane_wave_oracle(bad, cdouble(1.0), 1, 0.0, p, 1.0),
                        std::invalid_argument);
    }
}

TEST_CASE("strang splitting self-convergence is second order") {
    const Grid1D g = make_grid(128, 2.0 * pi);
    const SDState init =
        make_sd_state(gaussian_data(g, 0.5, 1.2), zero_field(g));
    const double order = strang_self_convergence_order(init, SDParams{1.0, 1, 4e-3}, 0.5);
    CHECK(order == Approx(2.0).margin(0.2));
}

TEST_CASE("mass conservation and reality over many steps") {
    const Grid1D g = make_grid(128, 2.0 * pi);
    const SDParams p{1.0, 1, 1e-3};
    SDState state = make_sd_state(gaussian_data(g, 0.5, 1.0), zero_field(g));
    const double mass0 = l2_norm(state.u);
    double max_drift = 0.0, max_imag = 0.0;
    for (int k = 0; k < 1000; ++k) {
        state = strang_step(state, p);
        max_drift = std::max(max_drift, std::abs(l2_norm(state.u) - mass0) / mass0);
        for (const auto& z : state.v.samples) max_imag = std::max(max_imag, std::abs(z.imag()));
    }
    CHECK(max_drift <= 1e-10);
    CHECK(max_imag == 0.0);
}

TEST_CASE("equilibrium invariance for x-independent modulus") {
    const Grid1D g = make_grid(32, 2.0 * pi);
    const SDParams p{0.5, 1, 0.02};
    const SDState init = make_sd_state(plane_wave_data(g, cdouble(0.8), 3),
                                       make_field(g, [](double) { return cdouble(0.64, 0.0); }));
    SDState state = init;
    for (int k = 0; k < 50; ++k) state = strang_step(state, p);
    for (std::size_t i = 0; i < g.num_points(); ++i) {
        CHECK(std::abs(state.u.samples[i]) == Approx(0.8).epsilon(1e-12));
        CHECK(state.v.samples[i].real() == Approx(0.64).epsilon(1e-12));
    }
}

TEST_CASE("large sigma approaches the free flow") {
    const Grid1D g = make_grid(64, 2.0 * pi);
    const Field u0 = gaussian_data(g, 0.5, 1.0);
    const double t_final = 0.5;
    double peak_intensity = 0.0;
    for (const auto& z : u0.samples) peak_intensity = std::max(peak_intensity, std::norm(z));
    auto deviation = [&](double sigma, double* v_max) {
        const SDParams p{sigma, 1, 1e-3};
        const Trajectory tr = evolve(make_sd_state(u0, zero_field(g)), p, t_final, 500);
        *v_max = 0.0;
        for (const auto& fr : tr.v.frames)
            for (const auto& z : fr.samples) *v_max = std::max(*v_max, std::abs(z.real()));
        const Field free_u = linear_step(u0, t_final);
        return max_pointwise_error(tr.u.frames.back(), free_u);
    };
    double v1 = 0.0, v2 = 0.0;
    const double d1 = deviation(100.0, &v1);
    const double d2 = deviation(200.0, &v2);
    CHECK(d2 < d1);
    CHECK(d2 <= 0.7 * d1);  // error ~ C / sigma
    // with v0 = 0 the response stays O(t / sigma)
    CHECK(v1 <= 1.05 * peak_intensity * t_final / 100.0);
    CHECK(v2 <= 1.05 * peak_intensity * t_final / 200.0);
}

TEST_CASE("nls_evolve") {
    const Grid1D g = make_grid(64, 2.0 * pi);
    SECTION("plane-wave exact solution") {
        const Field u0 = plane_wave_data(g, cdouble(1.5), 2);
        const SpaceTimeField tr = nls_evolve(u0, 1, 1.0, 0.01, 100);
        const double omega = 0.5 * 4.0 + 2.25;  // n^2/2 + eps |A|^2
        const Field expect = make_field(g, [&](double x) {
            return cdouble(1.5, 0.0) * cdouble(std::cos(2 * x - omega), std::sin(2 * x - omega));
        });
        CHECK(max_pointwise_error(tr.frames.back(), expect) <= 1e-10);
    }
    SECTION("self-convergence order 2") {
        const Field u0 = gaussian_data(g, 0.5, 1.2);
        const double order = nls_self_convergence_order(u0, 1, 0.5, 4e-3);
        CHECK(order == Approx(2.0).margin(0.2));
    }
    SECTION("mass conserved over 1000 steps") {
        const Field u0 = gaussian_data(g, 0.5, 1.0);
        const SpaceTimeField tr = nls_evolve(u0, 1, 1.0, 1e-3, 1000);
        CHECK(l2_norm(tr.frames.back()) == Approx(l2_norm(u0)).epsilon(1e-10));
    }
}

TEST_CASE("evolve input validation and abort") {
    const Grid1D g = make_grid(16, 2.0 * pi);
    const SDState init = make_sd_state(gaussian_data(g, 0.5, 1.0), zero_field(g));
    SECTION("non-divisible horizon") {
        CHECK_THROWS_AS(evolve(init, SDParams{1.0, 1, 0.3}, 1.0), std::invalid_argument);
    }
    SECTION("record_every must divide") {
        CHECK_THROWS_AS(evolve(init, SDParams{1.0, 1, 0.1}, 1.0, 3), std::invalid_argument);
    }
    SECTION("divergence reports the step index") {
        // Huge amplitude blows past the 1e8 threshold quickly via check_finite.
        const SDState big = make_sd_state(gaussian_data(g, 0.5, 2e8), zero_field(g));
        try {
            evolve(big, SDParams{1.0, 1, 0.1}, 1.0);
            FAIL("expected numerical_error");
        } catch (const numerical_error& e) {
            CHECK(e.step() >= 1);
        }
    }
}
