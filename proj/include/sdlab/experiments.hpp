#ifndef SDLAB_EXPERIMENTS_HPP
#define SDLAB_EXPERIMENTS_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sdlab/config.hpp"
#include "sdlab/dynamics.hpp"
#include "sdlab/errors.hpp"
#include "sdlab/fit.hpp"
#include "sdlab/norms.hpp"
#include "sdlab/rational.hpp"

namespace sdlab {

// ---------------------------------------------------------------------------
// Initial data generators
// ---------------------------------------------------------------------------

// A * exp(-(x - L/2)^2 / (2 w^2)) * e^{i kc x}, kc = 2 pi * center_mode / L.
inline Field gaussian_data(const Grid1D& grid, double width, double amplitude,
                           double center_mode = 0.0) {
    if (!(width > 0.0)) throw std::invalid_argument("gaussian_data: width must be positive");
    const double l = grid.length();
    const double xc = 0.5 * l;
    const double kc = 2.0 * pi * center_mode / l;
    return make_field(grid, [&](double x) {
        const double d = x - xc;
        const double env = amplitude * std::exp(-0.5 * d * d / (width * width));
        return cdouble(env * std::cos(kc * x), env * std::sin(kc * x));
    });
}

inline Field plane_wave_data(const Grid1D& grid, cdouble amplitude, long mode) {
    const double n = 2.0 * pi * static_cast<double>(mode) / grid.length();
    return make_field(grid, [&](double x) {
        return amplitude * cdouble(std::cos(n * x), std::sin(n * x));
    });
}

namespace detail {
// Box-Muller over the raw 64-bit stream: identical samples on every platform.
inline double standard_normal(std::mt19937_64& rng) {
    const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
    const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * pi * u2);
}
}  // namespace detail

// Random H^s sample: coefficients <xi>^{-s-0.51} * complex normal inside the
// band, zero outside; marginally H^s on average.
inline Field random_hs_data(const Grid1D& grid, double s, std::uint64_t seed, double bandwidth) {
    std::mt19937_64 rng(seed);
    Spectrum sp{grid, std::vector<cdouble>(grid.num_points(), cdouble(0.0))};
    for (std::size_t i = 0; i < grid.num_points(); ++i) {
        const double xi = grid.wavenumber(i);
        const double g1 = detail::standard_normal(rng);
        const double g2 = detail::standard_normal(rng);
        if (std::abs(xi) > bandwidth) continue;
        const double amp = std::pow(bracket(xi), -s - 0.51) / std::sqrt(2.0);
        sp.coefficients[i] = amp * cdouble(g1, g2);
    }
    return inverse_transform(sp);
}

// data.kind = gaussian | plane_wave | random_hs; v0 from data.v0kind =
// zero | prepared | constant (prepared: v0 = eps |u0|^2).
inline SDState make_initial_state(const Grid1D& grid, const Config& cfg, int epsilon,
                                  std::uint64_t seed) {
    const std::string kind = cfg.get_string("data.kind", "gaussian");
    Field u0;
    if (kind == "gaussian") {
        u0 = gaussian_data(grid, cfg.get_double("data.width", 1.0),
                           cfg.get_double("data.amplitude", 1.0),
                           cfg.get_double("data.center_mode", 0.0));
    } else if (kind == "plane_wave") {
        u0 = plane_wave_data(grid, cdouble(cfg.get_double("data.amplitude", 1.0), 0.0),
                             cfg.get_long("data.mode", 1));
    } else if (kind == "random_hs") {
        u0 = random_hs_data(grid, cfg.get_double("data.s", 0.0), seed,
                            cfg.get_double("data.bandwidth", 32.0));
    } else {
        throw config_error("data.kind", "unknown generator '" + kind + "'");
    }
    const std::string v0kind = cfg.get_string("data.v0kind", "zero");
    Field v0 = zero_field(grid);
    if (v0kind == "prepared") {
        for (std::size_t i = 0; i < v0.samples.size(); ++i)
            v0.samples[i] = cdouble(epsilon * std::norm(u0.samples[i]), 0.0);
    } else if (v0kind == "constant") {
        const double c = cfg.get_double("data.v0const", 0.0);
        for (auto& z : v0.samples) z = cdouble(c, 0.0);
    } else if (v0kind == "scaled_intensity") {
        const double c = cfg.get_double("data.v0scale", 1.0);
        for (std::size_t i = 0; i < v0.samples.size(); ++i)
            v0.samples[i] = cdouble(c * epsilon * std::norm(u0.samples[i]), 0.0);
    } else if (v0kind != "zero") {
        throw config_error("data.v0kind", "unknown value '" + v0kind + "'");
    }
    return make_sd_state(std::move(u0), std::move(v0));
}

inline Grid1D grid_from_config(const Config& cfg, std::size_t default_m = 256,
                               double default_length = 2.0 * pi) {
    const long m = cfg.get_long("grid.m", static_cast<long>(default_m));
    if (m < 4) throw config_error("grid.m", "must be >= 4");
    return make_grid(static_cast<std::size_t>(m), cfg.get_double("grid.length", default_length));
}

inline SDParams params_from_config(const Config& cfg) {
    SDParams p;
    p.sigma = cfg.get_double("sd.sigma", 1.0);
    p.epsilon = static_cast<int>(cfg.get_long("sd.epsilon", 1));
    p.dt = cfg.get_double("run.dt", 1e-3);
    validate(p);
    return p;
}

// ---------------------------------------------------------------------------
// I-method arithmetic
// ---------------------------------------------------------------------------

// delta = c * (||I u0|| + ||I v0||)^{-4/3 - eps}, capped at 1; cap for zero data.
inline double local_timestep(const Field& u0, const Field& v0, double cutoff, double s,
                             double c_delta, double eps = 0.01) {
    if (!(c_delta > 0.0)) throw std::invalid_argument("local_timestep: c_delta must be positive");
    const IMultiplier im = make_i_multiplier(cutoff, -s);
    const double size = l2_norm(i_apply(forward_transform(u0), im)) +
                        l2_norm(i_apply(forward_transform(v0), im));
    if (size == 0.0) return 1.0;
    return std::min(1.0, c_delta * std::pow(size, -4.0 / 3.0 - eps));
}

// s > -6 l / (5 + 8 l), exact.
inline Rational gwp_exponent(const Rational& l) {
    if (!(Rational(0) < l) || !(l < Rational(1, 2)))
        throw std::invalid_argument("gwp_exponent: l must lie in (0, 1/2)");
    return -(Rational(6) * l) / (Rational(5) + Rational(8) * l);
}

// ---------------------------------------------------------------------------
// Experiment runners
// ---------------------------------------------------------------------------

struct ConservationReport {
    std::size_t steps = 0;
    std::vector<double> times;
    std::vector<double> rel_mass_drift;   // per step, relative to the initial mass
    std::vector<double> v_imag_defect;    // max |Im v| per step
    double max_rel_mass_drift = 0.0;
    double max_v_imag_defect = 0.0;
    double oracle_max_error = -1.0;       // plane-wave data only, else -1
};

inline ConservationReport run_conservation(const Config& cfg, std::uint64_t seed) {
    const Grid1D grid = grid_from_config(cfg);
    const SDParams params = params_from_config(cfg);
    const double t_final = cfg.get_double("run.tfinal", 1.0);
    SDState state = make_initial_state(grid, cfg, params.epsilon, seed);
    const std::size_t steps = detail::step_count_for(0.0, t_final, params.dt);

    const bool against_oracle = cfg.get_string("data.kind", "gaussian") == "plane_wave";
    const cdouble amp(cfg.get_double("data.amplitude", 1.0), 0.0);
    const long mode = cfg.get_long("data.mode", 1);
    const double v0c = against_oracle ? state.v.samples[0].real() : 0.0;

    ConservationReport rep;
    rep.steps = steps;
    const double mass0 = l2_norm(state.u);
    for (std::size_t k = 1; k <= steps; ++k) {
        state = strang_step(state, params);
        detail::check_finite(state.u, k);
        double defect = 0.0;
        for (const auto& z : state.v.samples) defect = std::max(defect, std::abs(z.imag()));
        const double drift = std::abs(l2_norm(state.u) - mass0) / mass0;
        rep.times.push_back(state.time);
        rep.rel_mass_drift.push_back(drift);
        rep.v_imag_defect.push_back(defect);
        rep.max_rel_mass_drift = std::max(rep.max_rel_mass_drift, drift);
        rep.max_v_imag_defect = std::max(rep.max_v_imag_defect, defect);
        if (against_oracle) {
            const SDState ref = plane_wave_oracle(grid, amp, mode, v0c, params, state.time);
            double err = 0.0;
            for (std::size_t i = 0; i < grid.num_points(); ++i) {
                err = std::max(err, std::abs(state.u.samples[i] - ref.u.samples[i]));
                err = std::max(err, std::abs(state.v.samples[i] - ref.v.samples[i]));
            }
            rep.oracle_max_error = std::max(rep.oracle_max_error, err);
        }
    }
    return rep;
}

struct ACReport {
    std::vector<int> n_values;
    double delta = 0.0, s = 0.0, ell = 0.0;
    std::vector<double> de_endpoint, de_quadrature, rel_mismatch;
    LineFit slope_fit;                  // log2 |dE| vs log2 N
    double predicted_param_slope = 0.0;     // -2 l, the parameter-form N power
    double predicted_endpoint_slope = -0.5; // the endpoint-form N power (l -> 1/4)
};

// For each N: evolve the same data to t = delta, then Delta E(Iu) by endpoint
// differencing and by trapezoid quadrature of the derivative identity.
inline ACReport run_almost_conservation(const Config& cfg, std::uint64_t seed) {
    const Grid1D grid = grid_from_config(cfg, 4096, 4.0 * pi);
    const SDParams params = params_from_config(cfg);
    const double delta = cfg.get_double("ac.delta", 0.1);
    const double s = cfg.get_double("ac.s", -0.2);
    const double ell = cfg.get_double("ac.l", 0.24);
    const std::vector<int> ns = cfg.get_int_list("sweep.N", {8, 16, 32, 64, 128});

    const double xi_max = std::abs(grid.wavenumbers().front());
    for (int n : ns)
        if (2.0 * n > xi_max)
            throw config_error("sweep.N",
                               "cutoff " + std::to_string(n) + " exceeds grid bandwidth " +
                                   std::to_string(xi_max) + "/2");

    const SDState initial = make_initial_state(grid, cfg, params.epsilon, seed);
    const Trajectory traj = evolve(initial, params, delta, 1);
    const std::size_t frames = traj.u.num_frames();

    ACReport rep;
    rep.n_values = ns;
    rep.delta = delta;
    rep.s = s;
    rep.ell = ell;
    rep.predicted_param_slope = -2.0 * ell;
    std::vector<double> abs_de;
    for (int n : ns) {
        const double cutoff = static_cast<double>(n);
        const double e0 = modified_energy(traj.u.frames.front(), cutoff, s);
        const double e1 = modified_energy(traj.u.frames.back(), cutoff, s);
        const double de_end = e1 - e0;
        // Trapezoid over every recorded step.
        double quad = 0.0;
        double prev = energy_derivative(traj.u.frames[0], traj.v.frames[0], cutoff, s);
        for (std::size_t k = 1; k < frames; ++k) {
            const double cur = energy_derivative(traj.u.frames[k], traj.v.frames[k], cutoff, s);
            quad += 0.5 * (prev + cur) * traj.u.dt;
            prev = cur;
        }
        rep.de_endpoint.push_back(de_end);
        rep.de_quadrature.push_back(quad);
        const double denom = std::max({std::abs(de_end), std::abs(quad), 1e-300});
        rep.rel_mismatch.push_back(std::abs(de_end - quad) / denom);
        abs_de.push_back(std::max(std::abs(de_end), 1e-300));
    }
    if (rep.n_values.size() >= 2) rep.slope_fit = log2_fit(rep.n_values, abs_de, 0);
    return rep;
}

struct SigmaLimitReport {
    std::vector<double> sigmas, errs;
    double fitted_order = 0.0;
    bool monotone = false;
};

// err(sigma) = max over recorded times of ||u_SD - u_NLS||_L2, same u0 and dt.
inline SigmaLimitReport run_sigma_limit(const Config& cfg, std::uint64_t seed) {
    const Grid1D grid = grid_from_config(cfg, 512, 50.0);
    const int epsilon = static_cast<int>(cfg.get_long("sd.epsilon", 1));
    const double t_final = cfg.get_double("run.tfinal", 0.5);
    std::vector<double> sigmas = cfg.get_double_list("sweep.sigma", {0.2, 0.1, 0.05, 0.025});
    for (std::size_t i = 0; i + 1 < sigmas.size(); ++i)
        if (sigmas[i + 1] >= sigmas[i])
            throw config_error("sweep.sigma", "list must be strictly decreasing");
    double sigma_min = sigmas.back();
    const double dt = cfg.get_double("run.dt", sigma_min / 10.0);
    if (dt > sigma_min / 10.0 + 1e-15)
        throw config_error("run.dt", "stiffness guard requires dt <= min(sigma)/10");

    Config prepared = cfg;
    if (!cfg.has("data.v0kind")) prepared.set("data.v0kind", "prepared");
    const SDState initial = make_initial_state(grid, prepared, epsilon, seed);

    const std::size_t steps = detail::step_count_for(0.0, t_final, dt);
    std::size_t record_every = std::max<std::size_t>(1, steps / 20);
    while (steps % record_every != 0) --record_every;
    const SpaceTimeField nls = nls_evolve(initial.u, epsilon, t_final, dt, record_every);

    SigmaLimitReport rep;
    rep.sigmas = sigmas;
    for (double sigma : sigmas) {
        SDParams p{sigma, epsilon, dt};
        const Trajectory sd = evolve(initial, p, t_final, record_every);
        double err = 0.0;
        for (std::size_t k = 0; k < sd.u.num_frames(); ++k) {
            Field diff = sd.u.frames[k];
            for (std::size_t i = 0; i < diff.samples.size(); ++i)
                diff.samples[i] -= nls.frames[k].samples[i];
            err = std::max(err, l2_norm(diff));
        }
        rep.errs.push_back(err);
    }
    rep.monotone = true;
    for (std::size_t i = 0; i + 1 < rep.errs.size(); ++i)
        if (rep.errs[i + 1] >= rep.errs[i]) rep.monotone = false;
    // log2 err vs log2 sigma over the sweep.
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < sigmas.size(); ++i) {
        xs.push_back(std::log2(sigmas[i]));
        ys.push_back(std::log2(std::max(rep.errs[i], 1e-300)));
    }
    rep.fitted_order = fit_line(xs, ys).slope;
    return rep;
}

struct VBoundReport {
    std::vector<double> times, v_norms;
    double sup_v = 0.0;
    double v0_norm = 0.0;
    double u0_sq = 0.0;   // ||u0||_L2^2
    double c_fit = 0.0;   // sup_t ||v|| / ||u0||^2
    std::string verdict;
};

inline VBoundReport run_v_bound(const Config& cfg, std::uint64_t seed) {
    const Grid1D grid = grid_from_config(cfg);
    const SDParams params = params_from_config(cfg);
    const double t_final = cfg.get_double("run.tfinal", 1.0);
    SDState state = make_initial_state(grid, cfg, params.epsilon, seed);

    VBoundReport rep;
    rep.v0_norm = l2_norm(state.v);
    const double u0_norm = l2_norm(state.u);
    rep.u0_sq = u0_norm * u0_norm;
    rep.times.push_back(0.0);
    rep.v_norms.push_back(rep.v0_norm);
    rep.sup_v = rep.v0_norm;
    const std::size_t steps = detail::step_count_for(0.0, t_final, params.dt);
    for (std::size_t k = 1; k <= steps; ++k) {
        state = strang_step(state, params);
        detail::check_finite(state.u, k);
        const double vn = l2_norm(state.v);
        rep.times.push_back(state.time);
        rep.v_norms.push_back(vn);
        rep.sup_v = std::max(rep.sup_v, vn);
    }
    rep.c_fit = rep.u0_sq > 0.0 ? rep.sup_v / rep.u0_sq : 0.0;
    const double bound = std::max(rep.v0_norm, rep.c_fit * rep.u0_sq);
    rep.verdict = rep.sup_v <= bound * (1.0 + 1e-12) ? "BOUNDED" : "UNBOUNDED";
    return rep;
}

// Self-convergence order by Richardson halving: runs at dt, dt/2, dt/4 and
// compares successive differences at the final time.
inline double strang_self_convergence_order(const SDState& initial, SDParams params,
                                            double t_final) {
    auto final_u = [&](double dt) {
        SDParams p = params;
        p.dt = dt;
        const Trajectory tr = evolve(initial, p, t_final,
                                     detail::step_count_for(0.0, t_final, dt));
        return tr.u.frames.back();
    };
    const Field a = final_u(params.dt);
    const Field b = final_u(0.5 * params.dt);
    const Field c = final_u(0.25 * params.dt);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        e1 = std::max(e1, std::abs(a.samples[i] - b.samples[i]));
        e2 = std::max(e2, std::abs(b.samples[i] - c.samples[i]));
    }
    return std::log2(e1 / e2);
}

inline double nls_self_convergence_order(const Field& u0, int epsilon, double t_final,
                                         double dt) {
    auto final_u = [&](double step) {
        const SpaceTimeField tr = nls_evolve(u0, epsilon, t_final, step,
                                             detail::step_count_for(0.0, t_final, step));
        return tr.frames.back();
    };
    const Field a = final_u(dt);
    const Field b = final_u(0.5 * dt);
    const Field c = final_u(0.25 * dt);
    double e1 = 0.0, e2 = 0.0;
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        e1 = std::max(e1, std::abs(a.samples[i] - b.samples[i]));
        e2 = std::max(e2, std::abs(b.samples[i] - c.samples[i]));
    }
    return std::log2(e1 / e2);
}

}  // namespace sdlab

#endif
