#ifndef SDLAB_SPACETIME_HPP
#define SDLAB_SPACETIME_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "sdlab/field.hpp"

namespace sdlab {

// A trajectory sampled on a uniform time lattice: num_steps() = K intervals,
// K+1 frames, all sharing one Grid1D.
struct SpaceTimeField {
    double time_start = 0.0;
    double dt = 0.0;
    std::vector<Field> frames;

    std::size_t num_steps() const { return frames.empty() ? 0 : frames.size() - 1; }
    std::size_t num_frames() const { return frames.size(); }
    const Grid1D& grid() const { return frames.front().grid; }
    double time_of(std::size_t k) const { return time_start + dt * static_cast<double>(k); }
    std::vector<double> times() const {
        std::vector<double> t(frames.size());
        for (std::size_t k = 0; k < frames.size(); ++k) t[k] = time_of(k);
        return t;
    }
};

inline SpaceTimeField make_space_time_field(double time_start, double dt,
                                            std::vector<Field> frames) {
    if (frames.empty()) throw std::invalid_argument("space-time field needs at least one frame");
    if (!(dt > 0.0)) throw std::invalid_argument("space-time field needs dt > 0");
    for (const auto& fr : frames)
        if (!fr.grid.compatible(frames.front().grid))
            throw std::invalid_argument("space-time frames must share one grid");
    return SpaceTimeField{time_start, dt, std::move(frames)};
}

// 2-D coefficients indexed by (temporal frequency tau, wavenumber xi), both
// ascending. The T = K+1 frames are transformed as one period of length T*dt,
// so tau_m = 2*pi*m/(T*dt) with m centered like the spatial modes.
struct SpaceTimeSpectrum {
    Grid1D grid;
    double dt = 0.0;
    std::vector<double> tau;        // length T
    std::vector<cdouble> coef;      // row-major: coef[it * M + ix]

    std::size_t num_tau() const { return tau.size(); }
    cdouble at(std::size_t it, std::size_t ix) const { return coef[it * grid.num_points() + ix]; }
};

inline std::vector<double> all_ones_window(std::size_t n) {
    return std::vector<double>(n, 1.0);
}

// Applies the time window pointwise, then transforms in x and in t.
// Normalization matches the spatial convention in both axes: the separable
// exponential e^{i(n x + tau0 t)} with on-lattice tau0 becomes a unit spike.
inline SpaceTimeSpectrum space_time_transform(const SpaceTimeField& traj,
                                              std::span<const double> window) {
    const std::size_t t_count = traj.num_frames();
    if (window.size() != t_count)
        throw std::invalid_argument("space_time_transform: window length must equal frame count");
    const Grid1D& grid = traj.grid();
    const std::size_t m = grid.num_points();

    SpaceTimeSpectrum out;
    out.grid = grid;
    out.dt = traj.dt;
    out.coef.assign(t_count * m, cdouble(0.0));
    out.tau.resize(t_count);
    const long t_half_hi = static_cast<long>(t_count) / 2;              // exclusive
    const long t_half_lo = t_half_hi - static_cast<long>(t_count) + 1;  // inclusive
    const double t_len = traj.dt * static_cast<double>(t_count);
    for (std::size_t it = 0; it < t_count; ++it) {
        const long mm = t_half_lo + static_cast<long>(it);
        out.tau[it] = 2.0 * pi * static_cast<double>(mm) / t_len;
    }

    // Spatial transform of each windowed frame.
    for (std::size_t k = 0; k < t_count; ++k) {
        Field fr = traj.frames[k];
        for (auto& z : fr.samples) z *= window[k];
        Spectrum sp = forward_transform(fr);
        for (std::size_t ix = 0; ix < m; ++ix) out.coef[k * m + ix] = sp.coefficients[ix];
    }
    // Temporal transform down each wavenumber column.
    std::vector<cdouble> col(t_count);
    const double scale = 1.0 / static_cast<double>(t_count);
    for (std::size_t ix = 0; ix < m; ++ix) {
        for (std::size_t k = 0; k < t_count; ++k) col[k] = out.coef[k * m + ix];
        dft_inplace(col, -1);
        for (std::size_t it = 0; it < t_count; ++it) {
            const long mm = t_half_lo + static_cast<long>(it);
            const std::size_t bin = static_cast<std::size_t>((mm + static_cast<long>(t_count)) %
                                                             static_cast<long>(t_count));
            out.coef[it * m + ix] = col[bin] * scale;
        }
    }
    // The time samples sit at t = time_start + k*dt while the DFT phase is
    // e^{-2 pi i m k / T}; shift so coefficients refer to e^{i tau t}.
    if (traj.time_start != 0.0) {
        for (std::size_t it = 0; it < t_count; ++it) {
            const cdouble ph(std::cos(-out.tau[it] * traj.time_start),
                             std::sin(-out.tau[it] * traj.time_start));
            for (std::size_t ix = 0; ix < m; ++ix) out.coef[it * m + ix] *= ph;
        }
    }
    return out;
}

inline SpaceTimeField inverse_space_time_transform(const SpaceTimeSpectrum& sp,
                                                   double time_start = 0.0) {
    const std::size_t t_count = sp.num_tau();
    const std::size_t m = sp.grid.num_points();
    const long t_half_hi = static_cast<long>(t_count) / 2;
    const long t_half_lo = t_half_hi - static_cast<long>(t_count) + 1;

    std::vector<cdouble> work(t_count * m);
    std::vector<cdouble> col(t_count);
    for (std::size_t ix = 0; ix < m; ++ix) {
        for (std::size_t it = 0; it < t_count; ++it) {
            const long mm = t_half_lo + static_cast<long>(it);
            const std::size_t bin = static_cast<std::size_t>((mm + static_cast<long>(t_count)) %
                                                             static_cast<long>(t_count));
            cdouble c = sp.coef[it * m + ix];
            if (time_start != 0.0) {
                const cdouble ph(std::cos(sp.tau[it] * time_start),
                                 std::sin(sp.tau[it] * time_start));
                c *= ph;
            }
            col[bin] = c;
        }
        std::vector<cdouble> tmp = col;
        dft_inplace(tmp, +1);
        for (std::size_t k = 0; k < t_count; ++k) work[k * m + ix] = tmp[k];
    }
    std::vector<Field> frames(t_count);
    for (std::size_t k = 0; k < t_count; ++k) {
        Spectrum s{sp.grid, std::vector<cdouble>(m)};
        for (std::size_t ix = 0; ix < m; ++ix) s.coefficients[ix] = work[k * m + ix];
        frames[k] = inverse_transform(s);
    }
    return SpaceTimeField{time_start, sp.dt, std::move(frames)};
}

// Normalized space-time L2: sqrt(sum |coef|^2) over the 2-D transform;
// by Parseval this is the mean-square of the windowed samples.
inline double l2_norm(const SpaceTimeSpectrum& sp) {
    double acc = 0.0;
    for (const auto& z : sp.coef) acc += std::norm(z);
    return std::sqrt(acc);
}

}  // namespace sdlab

#endif
