#ifndef SDLAB_FIELD_HPP
#define SDLAB_FIELD_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "sdlab/errors.hpp"
#include "sdlab/fft.hpp"
#include "sdlab/grid.hpp"

namespace sdlab {

// Physical-space samples on a periodic grid.
struct Field {
    Grid1D grid;
    std::vector<cdouble> samples;
};

// Fourier coefficients indexed like grid.wavenumbers() (ascending j).
// Normalization: coef(xi_j) = (1/L) * sum_x f(x) e^{-i xi_j x} * spacing,
// so the pure mode e^{i n x} has unit coefficient at xi = n.
struct Spectrum {
    Grid1D grid;
    std::vector<cdouble> coefficients;
};

template <class Fn>
Field make_field(const Grid1D& grid, Fn&& fn) {
    Field f{grid, std::vector<cdouble>(grid.num_points())};
    for (std::size_t i = 0; i < grid.num_points(); ++i) f.samples[i] = fn(grid.point(i));
    return f;
}

inline Field zero_field(const Grid1D& grid) {
    return Field{grid, std::vector<cdouble>(grid.num_points(), cdouble(0.0))};
}

inline Spectrum forward_transform(const Field& f) {
    const std::size_t m = f.grid.num_points();
    if (f.samples.size() != m) throw std::invalid_argument("forward_transform: size mismatch");
    std::vector<cdouble> a = f.samples;
    dft_inplace(a, -1);
    Spectrum s{f.grid, std::vector<cdouble>(m)};
    const double scale = 1.0 / static_cast<double>(m);
    const std::size_t half = m / 2;
    // DFT bin k corresponds to mode j = k for k < M/2 and j = k-M for k >= M/2.
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t k = (i + half) % m;
        s.coefficients[i] = a[k] * scale;
    }
    return s;
}

inline Field inverse_transform(const Spectrum& s) {
    const std::size_t m = s.grid.num_points();
    if (s.coefficients.size() != m) throw std::invalid_argument("inverse_transform: size mismatch");
    std::vector<cdouble> a(m);
    const std::size_t half = m / 2;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t k = (i + half) % m;
        a[k] = s.coefficients[i];
    }
    dft_inplace(a, +1);
    return Field{s.grid, std::move(a)};
}

// Pointwise spectral multiplication. The symbol must be finite at every
// wavenumber carrying a nonzero coefficient; a singular symbol is allowed
// where the data vanishes (the output coefficient is then zero).
// odd_symmetry = true zeroes the unpaired Nyquist mode (derivative-type
// multipliers with odd symmetry).
template <class SymbolFn>
Spectrum apply_multiplier(const Spectrum& s, SymbolFn&& symbol, bool odd_symmetry = false) {
    Spectrum out{s.grid, std::vector<cdouble>(s.coefficients.size())};
    for (std::size_t i = 0; i < s.coefficients.size(); ++i) {
        const cdouble sym = symbol(s.grid.wavenumber(i));
        const bool finite = std::isfinite(sym.real()) && std::isfinite(sym.imag());
        if (!finite) {
            if (std::abs(s.coefficients[i]) != 0.0)
                throw numerical_error("apply_multiplier: non-finite symbol at active wavenumber");
            out.coefficients[i] = cdouble(0.0);
        } else {
            out.coefficients[i] = sym * s.coefficients[i];
        }
    }
    if (odd_symmetry) out.coefficients[0] = cdouble(0.0);
    return out;
}

template <class SymbolFn>
Field apply_multiplier(const Field& f, SymbolFn&& symbol, bool odd_symmetry = false) {
    return inverse_transform(apply_multiplier(forward_transform(f), symbol, odd_symmetry));
}

// Normalized L2: ||f||^2 = (1/L) * integral |f|^2 dx, so ||e^{inx}|| = 1.
// Equals the l2 norm of the coefficients by Parseval.
inline double l2_norm(const Field& f) {
    double acc = 0.0;
    for (const auto& z : f.samples) acc += std::norm(z);
    return std::sqrt(acc / static_cast<double>(f.grid.num_points()));
}

inline double l2_norm(const Spectrum& s) {
    double acc = 0.0;
    for (const auto& z : s.coefficients) acc += std::norm(z);
    return std::sqrt(acc);
}

inline double max_abs(const Field& f) {
    double m = 0.0;
    for (const auto& z : f.samples) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace sdlab

#endif
