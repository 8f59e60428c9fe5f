#ifndef SDLAB_GRID_HPP
#define SDLAB_GRID_HPP

#include <cmath>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "sdlab/fft.hpp"

namespace sdlab {

// Periodic spatial lattice on [0, L). Wavenumbers are 2*pi*j/L for
// j = -M/2 .. M/2-1, stored ascending; on the L = 2*pi grid they are exactly
// the integers. Immutable after construction; copies share the lattice data.
class Grid1D {
public:
    Grid1D() = default;

    std::size_t num_points() const { return d_->m; }
    double length() const { return d_->length; }
    double spacing() const { return d_->spacing; }
    const std::vector<double>& wavenumbers() const { return d_->wavenumbers; }
    double wavenumber(std::size_t i) const { return d_->wavenumbers[i]; }
    double point(std::size_t i) const { return d_->spacing * static_cast<double>(i); }

    // Index of the integer mode j (j in [-M/2, M/2)).
    std::size_t index_of_mode(long j) const {
        const long half = static_cast<long>(d_->m) / 2;
        if (j < -half || j >= half) throw std::invalid_argument("mode outside grid range");
        return static_cast<std::size_t>(j + half);
    }
    long mode_of_index(std::size_t i) const {
        return static_cast<long>(i) - static_cast<long>(d_->m) / 2;
    }

    bool same_grid(const Grid1D& other) const { return d_ == other.d_; }
    bool compatible(const Grid1D& other) const {
        return d_ == other.d_ ||
               (d_->m == other.d_->m && d_->length == other.d_->length);
    }

    friend Grid1D make_grid(std::size_t, double);

private:
    struct Data {
        std::size_t m = 0;
        double length = 0.0;
        double spacing = 0.0;
        std::vector<double> wavenumbers;
    };
    std::shared_ptr<const Data> d_;
};

inline Grid1D make_grid(std::size_t num_points, double length) {
    if (num_points < 4) throw std::invalid_argument("make_grid: num_points must be >= 4");
    if (num_points % 2 != 0) throw std::invalid_argument("make_grid: num_points must be even");
    if (!(length > 0.0) || !std::isfinite(length))
        throw std::invalid_argument("make_grid: length must be positive and finite");
    auto d = std::make_shared<Grid1D::Data>();
    d->m = num_points;
    d->length = length;
    d->spacing = length / static_cast<double>(num_points);
    d->wavenumbers.resize(num_points);
    const long half = static_cast<long>(num_points) / 2;
    for (std::size_t i = 0; i < num_points; ++i) {
        const long j = static_cast<long>(i) - half;
        d->wavenumbers[i] = 2.0 * pi * static_cast<double>(j) / length;
    }
    Grid1D g;
    g.d_ = std::move(d);
    return g;
}

}  // namespace sdlab

#endif
