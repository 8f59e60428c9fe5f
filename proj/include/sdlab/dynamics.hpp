#ifndef SDLAB_DYNAMICS_HPP
#define SDLAB_DYNAMICS_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sdlab/errors.hpp"
#include "sdlab/field.hpp"
#include "sdlab/spacetime.hpp"

namespace sdlab {

inline constexpr double kBlowupThreshold = 1e8;

struct SDParams {
    double sigma = 1.0;   // relaxation time, > 0
    int epsilon = +1;     // coupling sign, -1 or +1
    double dt = 1e-3;     // time step, > 0
};

inline void validate(const SDParams& p) {
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma))
        throw std::invalid_argument("SDParams: sigma must be positive");
    if (p.epsilon != 1 && p.epsilon != -1)
        throw std::invalid_argument("SDParams: epsilon must be +1 or -1");
    if (!(p.dt > 0.0) || !std::isfinite(p.dt))
        throw std::invalid_argument("SDParams: dt must be positive");
}

// Complex field u, real field v (imaginary parts kept exactly zero), at one time.
struct SDState {
    Field u;
    Field v;
    double time = 0.0;
};

inline SDState make_sd_state(Field u, Field v, double time = 0.0) {
    if (!u.grid.compatible(v.grid))
        throw std::invalid_argument("SDState: u and v must share one grid");
    for (auto& z : v.samples) z = cdouble(z.real(), 0.0);
    return SDState{std::move(u), std::move(v), time};
}

// Exact flow of i u_t + (1/2) u_xx = 0: multiply the spectrum by e^{-i xi^2 dt / 2}.
inline Field linear_step(const Field& u, double dt) {
    if (dt == 0.0) return u;
    Spectrum s = forward_transform(u);
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
        const double xi = s.grid.wavenumber(i);
        const double phase = -0.5 * xi * xi * dt;
        s.coefficients[i] *= cdouble(std::cos(phase), std::sin(phase));
    }
    return inverse_transform(s);
}

// Exact flow of the x-pointwise subsystem {i u_t = u v, sigma v_t + v = eps |u|^2}.
// |u| is constant along this flow, so the v-equation is a linear relaxation
// toward rho = eps |u|^2 and the u-phase integrates in closed form:
//   v(dt) = rho + (v - rho) e^{-dt/sigma}
//   u(dt) = u exp(-i Phi),  Phi = rho dt + sigma (v - rho)(1 - e^{-dt/sigma}).
inline SDState nonlinear_step(const SDState& state, const SDParams& params, double dt) {
    SDState out = state;
    const double decay = std::exp(-dt / params.sigma);
    const double eps = static_cast<double>(params.epsilon);
    for (std::size_t i = 0; i < out.u.samples.size(); ++i) {
        const double rho = eps * std::norm(state.u.samples[i]);
        const double v0 = state.v.samples[i].real();
        const double v1 = rho + (v0 - rho) * decay;
        const double phi = rho * dt + params.sigma * (v0 - rho) * (1.0 - decay);
        out.u.samples[i] = state.u.samples[i] * cdouble(std::cos(phi), -std::sin(phi));
        out.v.samples[i] = cdouble(v1, 0.0);
    }
    return out;
}

// Strang composition: linear(dt/2) after nonlinear(dt) after linear(dt/2).
inline SDState strang_step(const SDState& state, const SDParams& params) {
    SDState mid = state;
    mid.u = linear_step(state.u, 0.5 * params.dt);
    mid = nonlinear_step(mid, params, params.dt);
    mid.u = linear_step(mid.u, 0.5 * params.dt);
    mid.time = state.time + params.dt;
    return mid;
}

struct Trajectory {
    SpaceTimeField u;
    SpaceTimeField v;
};

namespace detail {

inline std::size_t step_count_for(double t_from, double t_final, double dt) {
    if (!(t_final > t_from)) throw std::invalid_argument("evolve: t_final must exceed state time");
    const double raw = (t_final - t_from) / dt;
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 1e-9 * std::max(1.0, std::abs(raw)))
        throw std::invalid_argument("evolve: horizon is not an integer number of steps");
    return static_cast<std::size_t>(rounded);
}

inline void check_finite(const Field& u, std::size_t step) {
    for (const auto& z : u.samples) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw numerical_error("evolve: non-finite value at step " + std::to_string(step), step);
        if (std::abs(z) > kBlowupThreshold)
            throw numerical_error("evolve: divergence (|u| > 1e8) at step " + std::to_string(step),
                                  step);
    }
}

}  // namespace detail

// Integrates to t_final with params.dt, recording every record_every steps
// (which must divide the step count). Frame 0 is the initial state.
inline Trajectory evolve(const SDState& initial, const SDParams& params, double t_final,
                         std::size_t record_every = 1) {
    validate(params);
    if (record_every == 0) throw std::invalid_argument("evolve: record_every must be >= 1");
    const std::size_t steps = detail::step_count_for(initial.time, t_final, params.dt);
    if (steps % record_every != 0)
        throw std::invalid_argument("evolve: record_every must divide the step count");

    std::vector<Field> u_frames, v_frames;
    u_frames.reserve(steps / record_every + 1);
    v_frames.reserve(steps / record_every + 1);
    SDState state = initial;
    u_frames.push_back(state.u);
    v_frames.push_back(state.v);
    for (std::size_t k = 1; k <= steps; ++k) {
        state = strang_step(state, params);
        detail::check_finite(state.u, k);
        if (k % record_every == 0) {
            u_frames.push_back(state.u);
            v_frames.push_back(state.v);
        }
    }
    const double frame_dt = params.dt * static_cast<double>(record_every);
    return Trajectory{make_space_time_field(initial.time, frame_dt, std::move(u_frames)),
                      make_space_time_field(initial.time, frame_dt, std::move(v_frames))};
}

// Exact solution for single-mode u and spatially constant v0:
//   v(t) = rho + (v0 - rho) e^{-t/sigma},  rho = eps |A|^2
//   u(x,t) = A e^{inx} e^{-i n^2 t / 2} e^{-i Phi(t)},
//   Phi(t) = rho t + sigma (v0 - rho)(1 - e^{-t/sigma}).
inline SDState plane_wave_oracle(const Grid1D& grid, cdouble amplitude, long mode, double v0_const,
                                 const SDParams& params, double t) {
    if (std::abs(grid.length() - 2.0 * pi) > 1e-12 * 2.0 * pi)
        throw std::invalid_argument("plane_wave_oracle: grid must have length 2*pi");
    const double rho = static_cast<double>(params.epsilon) * std::norm(amplitude);
    const double decay = std::exp(-t / params.sigma);
    const double v_t = rho + (v0_const - rho) * decay;
    const double phi = rho * t + params.sigma * (v0_const - rho) * (1.0 - decay);
    const double n = static_cast<double>(mode);
    const double omega = 0.5 * n * n * t + phi;
    Field u = make_field(grid, [&](double x) {
        return amplitude * cdouble(std::cos(n * x - omega), std::sin(n * x - omega));
    });
    Field v = make_field(grid, [&](double) { return cdouble(v_t, 0.0); });
    return SDState{std::move(u), std::move(v), t};
}

// Cubic NLS reference integrator for i u_t + (1/2) u_xx = eps |u|^2 u,
// Strang splitting with the exact phase substep u <- u e^{-i eps |u|^2 dt}.
inline SpaceTimeField nls_evolve(const Field& u0, int epsilon, double t_final, double dt,
                                 std::size_t record_every = 1, double t_start = 0.0) {
    if (epsilon != 1 && epsilon != -1)
        throw std::invalid_argument("nls_evolve: epsilon must be +1 or -1");
    if (!(dt > 0.0)) throw std::invalid_argument("nls_evolve: dt must be positive");
    if (record_every == 0) throw std::invalid_argument("nls_evolve: record_every must be >= 1");
    const std::size_t steps = detail::step_count_for(t_start, t_final, dt);
    if (steps % record_every != 0)
        throw std::invalid_argument("nls_evolve: record_every must divide the step count");

    const double eps = static_cast<double>(epsilon);
    std::vector<Field> frames;
    frames.reserve(steps / record_every + 1);
    Field u = u0;
    frames.push_back(u);
    for (std::size_t k = 1; k <= steps; ++k) {
        u = linear_step(u, 0.5 * dt);
        for (auto& z : u.samples) {
            const double phi = eps * std::norm(z) * dt;
            z *= cdouble(std::cos(phi), -std::sin(phi));
        }
        u = linear_step(u, 0.5 * dt);
        detail::check_finite(u, k);
        if (k % record_every == 0) frames.push_back(u);
    }
    const double frame_dt = dt * static_cast<double>(record_every);
    return make_space_time_field(t_start, frame_dt, std::move(frames));
}

}  // namespace sdlab

#endif
