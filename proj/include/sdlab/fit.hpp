#ifndef SDLAB_FIT_HPP
#define SDLAB_FIT_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace sdlab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 1.0;
};

// Ordinary least squares; r2 = 1 when the ordinates are (numerically) constant.
inline LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n != ys.size() || n < 2) throw std::invalid_argument("fit_line: need >= 2 points");
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissas");
    LineFit out;
    out.slope = sxy / sxx;
    out.intercept = my - out.slope * mx;
    if (syy < 1e-24 * (1.0 + my * my)) {
        out.r2 = 1.0;
        return out;
    }
    double ssres = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ys[i] - (out.intercept + out.slope * xs[i]);
        ssres += r * r;
    }
    out.r2 = 1.0 - ssres / syy;
    return out;
}

// OLS on (log2 N, log2 value), optionally dropping leading pre-asymptotic points.
inline LineFit log2_fit(std::span<const int> ns, std::span<const double> values,
                        std::size_t drop_first = 0) {
    if (ns.size() != values.size()) throw std::invalid_argument("log2_fit: size mismatch");
    if (ns.size() < drop_first + 2) throw std::invalid_argument("log2_fit: too few points");
    std::vector<double> xs, ys;
    for (std::size_t i = drop_first; i < ns.size(); ++i) {
        if (!(values[i] > 0.0)) throw std::invalid_argument("log2_fit: nonpositive value");
        xs.push_back(std::log2(static_cast<double>(ns[i])));
        ys.push_back(std::log2(values[i]));
    }
    return fit_line(xs, ys);
}

}  // namespace sdlab

#endif
