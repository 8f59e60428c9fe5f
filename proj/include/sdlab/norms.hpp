#ifndef SDLAB_NORMS_HPP
#define SDLAB_NORMS_HPP

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdlab/dynamics.hpp"
#include "sdlab/field.hpp"
#include "sdlab/spacetime.hpp"

namespace sdlab {

// <x> = 1 + |x| throughout, not the smooth (1 + x^2)^{1/2} variant.
inline double bracket(double x) { return 1.0 + std::abs(x); }

// Exponent pair: spatial s (or k) and temporal b (or -a).
struct BourgainIndex {
    double spatial = 0.0;
    double temporal = 0.0;
};

// Phase weight selector: <tau + c * xi^2> with c per tag, or plain <tau>.
enum class Dispersion {
    half_laplacian,   // tau + xi^2 / 2  (the system's 1/2 d_xx)
    unit_laplacian,   // tau + xi^2      (periodic-audit weights)
    conjugate_half,   // tau - xi^2 / 2
    none,             // tau             (mixed norm H^b_t H^s_x)
};

inline double dispersion_phase(Dispersion d, double xi, double tau) {
    switch (d) {
        case Dispersion::half_laplacian: return tau + 0.5 * xi * xi;
        case Dispersion::unit_laplacian: return tau + xi * xi;
        case Dispersion::conjugate_half: return tau - 0.5 * xi * xi;
        case Dispersion::none: return tau;
    }
    return tau;
}

// Discrete H^s: ||f||^2 = sum_xi <xi>^{2s} |fhat(xi)|^2.
inline double sobolev_norm(const Spectrum& s, double exponent) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.coefficients.size(); ++i)
        acc += std::pow(bracket(s.grid.wavenumber(i)), 2.0 * exponent) *
               std::norm(s.coefficients[i]);
    return std::sqrt(acc);
}

inline double sobolev_norm(const Field& f, double exponent) {
    return sobolev_norm(forward_transform(f), exponent);
}

// ||f||^2 = sum_{xi,tau} <xi>^{2s} <phase(xi,tau)>^{2b} |F(xi,tau)|^2 over the
// discrete 2-D transform of the windowed trajectory.
inline double bourgain_norm(const SpaceTimeField& traj, const BourgainIndex& idx, Dispersion disp,
                            std::span<const double> window) {
    const SpaceTimeSpectrum sp = space_time_transform(traj, window);
    const std::size_t m = sp.grid.num_points();
    double acc = 0.0;
    for (std::size_t it = 0; it < sp.num_tau(); ++it) {
        for (std::size_t ix = 0; ix < m; ++ix) {
            const double xi = sp.grid.wavenumber(ix);
            const double w = std::pow(bracket(xi), 2.0 * idx.spatial) *
                             std::pow(bracket(dispersion_phase(disp, xi, sp.tau[it])),
                                      2.0 * idx.temporal);
            acc += w * std::norm(sp.at(it, ix));
        }
    }
    return std::sqrt(acc);
}

// Smooth even profile m: 1 on |xi| <= 1, |xi|^{-1} on |xi| >= 2, monotone
// raised-cosine blend in between (m(xi) = xi^{-w(|xi|-1)} on (1,2)).
struct IMultiplier {
    double cutoff = 1.0;  // N >= 1
    double alpha = 0.0;

    static double profile(double xi) {
        const double a = std::abs(xi);
        if (a <= 1.0) return 1.0;
        if (a >= 2.0) return 1.0 / a;
        const double ramp = 0.5 * (1.0 - std::cos(pi * (a - 1.0)));
        return std::exp(-ramp * std::log(a));
    }

    double value(double xi) const { return std::pow(profile(xi / cutoff), alpha); }
};

inline IMultiplier make_i_multiplier(double cutoff, double alpha) {
    if (!(cutoff >= 1.0)) throw std::invalid_argument("IMultiplier: cutoff must be >= 1");
    if (!std::isfinite(alpha)) throw std::invalid_argument("IMultiplier: alpha must be finite");
    return IMultiplier{cutoff, alpha};
}

inline Spectrum i_apply(const Spectrum& s, const IMultiplier& im) {
    return apply_multiplier(s, [&](double xi) { return cdouble(im.value(xi), 0.0); });
}

inline Field i_apply(const Field& f, const IMultiplier& im) {
    return inverse_transform(i_apply(forward_transform(f), im));
}

// E(Iu) = ||I_N^{-s} u||^2 in the normalized L2 (pure modes have unit norm).
inline double modified_energy(const Field& u, double cutoff, double s) {
    if (s > 0.0)
        std::fprintf(stderr, "modified_energy: warning, s = %g is outside the s <= 0 regime\n", s);
    const double e = l2_norm(i_apply(forward_transform(u), make_i_multiplier(cutoff, -s)));
    return e * e;
}

// dE(Iu)/dt in commutator form: 2 Im (1/L) integral (I(uv) - Iu Iv) conj(Iu) dx.
// The 1/L matches the normalized L2 used by modified_energy.
inline double energy_derivative(const Field& u, const Field& v, double cutoff, double s) {
    const IMultiplier im = make_i_multiplier(cutoff, -s);
    const std::size_t m = u.grid.num_points();
    Field uv{u.grid, std::vector<cdouble>(m)};
    for (std::size_t i = 0; i < m; ++i) uv.samples[i] = u.samples[i] * v.samples[i].real();
    const Field i_uv = i_apply(uv, im);
    const Field iu = i_apply(u, im);
    const Field iv = i_apply(v, im);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const cdouble comm = i_uv.samples[i] - iu.samples[i] * iv.samples[i];
        acc += (comm * std::conj(iu.samples[i])).imag();
    }
    return 2.0 * acc / static_cast<double>(m);
}

inline double energy_derivative(const SDState& state, double cutoff, double s) {
    return energy_derivative(state.u, state.v, cutoff, s);
}

// psi_T sampled on a time lattice: 1 on |t| <= T, 0 on |t| >= 2T,
// cos^2(pi (|t| - T) / (2T)) in between.
inline double time_window_value(double t, double big_t) {
    const double a = std::abs(t);
    if (a <= big_t) return 1.0;
    if (a >= 2.0 * big_t) return 0.0;
    const double c = std::cos(0.5 * pi * (a - big_t) / big_t);
    return c * c;
}

inline std::vector<double> time_window(double big_t, std::span<const double> lattice) {
    if (!(big_t > 0.0)) throw std::invalid_argument("time_window: T must be positive");
    if (lattice.empty() || lattice.back() < 2.0 * big_t - 1e-12)
        throw std::invalid_argument("time_window: lattice too short, must cover [0, 2T]");
    std::vector<double> w(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i) w[i] = time_window_value(lattice[i], big_t);
    return w;
}

// D_x^{1/2}: multiplier |xi|^{1/2} (even symmetry, Nyquist untouched).
inline Field half_derivative(const Field& f) {
    return apply_multiplier(f, [](double xi) { return cdouble(std::sqrt(std::abs(xi)), 0.0); });
}

namespace detail {

// Active band of a trajectory: [min, max] of |xi| over wavenumbers whose
// coefficient exceeds rel_tol * (global max) in any frame.
inline std::pair<double, double> active_band(const SpaceTimeField& traj, double rel_tol = 1e-9) {
    const std::size_t m = traj.grid().num_points();
    std::vector<double> peak(m, 0.0);
    double global = 0.0;
    for (const auto& fr : traj.frames) {
        const Spectrum sp = forward_transform(fr);
        for (std::size_t i = 0; i < m; ++i) {
            peak[i] = std::max(peak[i], std::abs(sp.coefficients[i]));
            global = std::max(global, peak[i]);
        }
    }
    if (global == 0.0) return {0.0, 0.0};
    double lo = 1e300, hi = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        if (peak[i] > rel_tol * global) {
            const double a = std::abs(traj.grid().wavenumber(i));
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
    }
    return {lo, hi};
}

}  // namespace detail

// || (D_x^{1/2} f) g ||_{L2_xt} / (||f||_{X^{0,1/2+}} ||g||_{X^{0,1/2+}}) over
// a common window, with f the high-frequency factor. Requires the bands to be
// separated by a factor >= 8; returns 0 for g == 0 with f nonzero.
inline double strichartz_ratio(const SpaceTimeField& f_traj, const SpaceTimeField& g_traj,
                               std::span<const double> window, double eps_exponent = 0.01) {
    if (f_traj.num_frames() != g_traj.num_frames())
        throw std::invalid_argument("strichartz_ratio: trajectories must share the time lattice");
    const auto f_band = detail::active_band(f_traj);
    const auto g_band = detail::active_band(g_traj);
    if (g_band.second > 0.0 && f_band.first < 8.0 * g_band.second - 1e-9)
        throw std::invalid_argument("strichartz_ratio: frequency bands not separated by >= 8");

    const BourgainIndex x_idx{0.0, 0.5 + eps_exponent};
    const double fx = bourgain_norm(f_traj, x_idx, Dispersion::half_laplacian, window);
    const double gx = bourgain_norm(g_traj, x_idx, Dispersion::half_laplacian, window);

    std::vector<Field> prod(f_traj.num_frames());
    for (std::size_t k = 0; k < f_traj.num_frames(); ++k) {
        Field df = half_derivative(f_traj.frames[k]);
        for (std::size_t i = 0; i < df.samples.size(); ++i)
            df.samples[i] *= g_traj.frames[k].samples[i];
        prod[k] = std::move(df);
    }
    const SpaceTimeField prod_traj = make_space_time_field(f_traj.time_start, f_traj.dt,
                                                           std::move(prod));
    const double num = bourgain_norm(prod_traj, BourgainIndex{0.0, 0.0}, Dispersion::none, window);

    const double denom = fx * gx;
    if (denom == 0.0) {
        if (num == 0.0) return 0.0;
        throw std::invalid_argument("strichartz_ratio: zero right-hand side");
    }
    return num / denom;
}

}  // namespace sdlab

#endif
