#ifndef SDLAB_AUDIT_HPP
#define SDLAB_AUDIT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdlab/errors.hpp"
#include "sdlab/fit.hpp"
#include "sdlab/norms.hpp"
#include "sdlab/quadrature.hpp"
#include "sdlab/rational.hpp"

namespace sdlab::audit {

// ---------------------------------------------------------------------------
// Frequency-plane profiles. The counter-example families are evaluated
// directly on the (zeta, eta) / (n, tau) plane; no spatial grid is involved.
// ---------------------------------------------------------------------------

enum class EtaCenter { zero, minus_half_sq, plus_half_sq };

inline double eta_center_value(EtaCenter c, double zeta) {
    switch (c) {
        case EtaCenter::zero: return 0.0;
        case EtaCenter::minus_half_sq: return -0.5 * zeta * zeta;
        case EtaCenter::plus_half_sq: return 0.5 * zeta * zeta;
    }
    return 0.0;
}

// Support { (zeta, eta) : zeta in [lo, hi], |eta - h(zeta)| <= 1 }.
struct IndicatorBox {
    double zeta_lo = 0.0;
    double zeta_hi = 0.0;
    EtaCenter center = EtaCenter::zero;

    double measure() const { return (zeta_hi - zeta_lo) * 2.0; }
};

// Spectrum of the complex conjugate: (zeta, eta) -> (-zeta, -eta).
inline IndicatorBox reflect(const IndicatorBox& b) {
    EtaCenter c = b.center;
    if (c == EtaCenter::minus_half_sq) c = EtaCenter::plus_half_sq;
    else if (c == EtaCenter::plus_half_sq) c = EtaCenter::minus_half_sq;
    return IndicatorBox{-b.zeta_hi, -b.zeta_lo, c};
}

// Single mode n with tau-profile chi_{[-1,1]}(tau - tau_center).
struct PeriodicFactor {
    long mode = 0;
    double tau_center = 0.0;
};

inline PeriodicFactor reflect(const PeriodicFactor& f) {
    return PeriodicFactor{-f.mode, -f.tau_center};
}

struct ContinuousPair {
    IndicatorBox a, b;
    bool conjugate_b = false;
};

struct PeriodicPair {
    PeriodicFactor a, b;
    bool conjugate_b = false;
};

// ---------------------------------------------------------------------------
// Norms on frequency-plane profiles
// ---------------------------------------------------------------------------

enum class FreqPhase {
    schrodinger_half,  // <eta + zeta^2/2>  (continuous-case X norms)
    schrodinger_unit,  // <tau + n^2>       (periodic-case X norms)
    plain,             // <tau>             (mixed H^b_t H^s_x)
};

struct FreqNormSpec {
    double spatial_exp = 0.0;
    double temporal_exp = 0.0;
    FreqPhase phase = FreqPhase::plain;
};

struct QuadConfig {
    double rel_tol = 1e-9;
    int max_depth = 48;
    bool verify_convergence = true;  // re-run at tighter tol, compare
};

namespace detail {

// Exact integral of (1 + |u|)^p du over [lo, hi].
inline double bracket_power_integral(double lo, double hi, double p) {
    if (hi <= lo) return 0.0;
    auto one_side = [p](double a, double b) {  // 0 <= a <= b
        if (b <= a) return 0.0;
        if (std::abs(p + 1.0) < 1e-14) return std::log1p(b) - std::log1p(a);
        return (std::pow(1.0 + b, p + 1.0) - std::pow(1.0 + a, p + 1.0)) / (p + 1.0);
    };
    double acc = 0.0;
    if (lo < 0.0) acc += one_side(std::max(0.0, -hi), -lo);
    if (hi > 0.0) acc += one_side(std::max(0.0, lo), hi);
    return acc;
}

inline double phase_offset(FreqPhase phase, double zeta) {
    switch (phase) {
        case FreqPhase::schrodinger_half: return 0.5 * zeta * zeta;
        case FreqPhase::schrodinger_unit: return zeta * zeta;
        case FreqPhase::plain: return 0.0;
    }
    return 0.0;
}

inline double spatial_weight(double zeta, double exponent) {
    return std::pow(bracket(zeta), 2.0 * exponent);
}

template <class Fn>
double integrate_rel(Fn&& f, double a, double b, std::vector<double> breaks,
                     const QuadConfig& q) {
    if (!(b > a)) return 0.0;
    // Coarse scale estimate, then absolute tolerance pinned to it.
    double coarse = 0.0;
    {
        const int n = 32;
        const double h = (b - a) / n;
        for (int i = 0; i < n; ++i)
            coarse += std::abs(f(a + (i + 0.5) * h)) * h;
    }
    const double scale = std::max(coarse, 1e-300);
    const double value =
        integrate_with_breaks(f, a, b, breaks, q.rel_tol * scale, q.max_depth);
    if (q.verify_convergence) {
        const double tighter =
            integrate_with_breaks(f, a, b, breaks, 0.1 * q.rel_tol * scale, q.max_depth);
        if (std::abs(value - tighter) > 50.0 * q.rel_tol * std::max(scale, std::abs(value)))
            throw numerical_error("counterexample_norm: quadrature failed to converge (delta " +
                                  std::to_string(std::abs(value - tighter)) + ")");
        return tighter;
    }
    return value;
}

struct QuadCoeffs {
    double a2 = 0.0, a1 = 0.0, a0 = 0.0;
    double eval(double z) const { return (a2 * z + a1) * z + a0; }
};

// Center curve H(z1) = h_A(z1) + h_B(zeta - z1) as a quadratic in z1.
inline QuadCoeffs center_curve(const IndicatorBox& a, const IndicatorBox& b, double zeta) {
    auto sgn = [](EtaCenter c) {
        if (c == EtaCenter::minus_half_sq) return -1.0;
        if (c == EtaCenter::plus_half_sq) return 1.0;
        return 0.0;
    };
    const double sa = sgn(a.center), sb = sgn(b.center);
    return QuadCoeffs{0.5 * (sa + sb), -sb * zeta, 0.5 * sb * zeta * zeta};
}

inline void quad_roots_into(const QuadCoeffs& c, double target, double lo, double hi,
                            std::vector<double>& out) {
    const double a2 = c.a2, a1 = c.a1, a0 = c.a0 - target;
    auto push = [&](double r) {
        if (r > lo && r < hi) out.push_back(r);
    };
    if (std::abs(a2) < 1e-300) {
        if (std::abs(a1) > 1e-300) push(-a0 / a1);
        return;
    }
    const double disc = a1 * a1 - 4.0 * a2 * a0;
    if (disc < 0.0) return;
    const double sq = std::sqrt(disc);
    // Numerically stable pair.
    const double qv = -0.5 * (a1 + (a1 >= 0.0 ? sq : -sq));
    push(qv / a2);
    if (qv != 0.0) push(a0 / qv);
}

// conv(zeta, eta) = integral over z1 of max(0, 2 - |eta - H(z1)|) on the
// zeta-overlap interval. Piecewise quadratic in z1, so per-piece Simpson is
// exact.
inline double convolution_value(const IndicatorBox& a, const IndicatorBox& b, double zeta,
                                double eta) {
    const double lo = std::max(a.zeta_lo, zeta - b.zeta_hi);
    const double hi = std::min(a.zeta_hi, zeta - b.zeta_lo);
    if (!(hi > lo)) return 0.0;
    const QuadCoeffs h = center_curve(a, b, zeta);
    std::vector<double> cuts;
    cuts.reserve(8);
    quad_roots_into(h, eta - 2.0, lo, hi, cuts);
    quad_roots_into(h, eta, lo, hi, cuts);
    quad_roots_into(h, eta + 2.0, lo, hi, cuts);
    cuts.push_back(lo);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    auto g = [&](double z1) { return std::max(0.0, 2.0 - std::abs(eta - h.eval(z1))); };
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double x0 = cuts[i], x1 = cuts[i + 1];
        if (!(x1 > x0)) continue;
        const double xm = 0.5 * (x0 + x1);
        acc += (x1 - x0) / 6.0 * (g(x0) + 4.0 * g(xm) + g(x1));
    }
    return acc;
}

}  // namespace detail

// || chi_box ||, continuous case: sqrt of the weighted area. The inner eta
// integral is exact; the outer zeta integral is adaptive.
inline double factor_norm(const IndicatorBox& box, const FreqNormSpec& spec,
                          const QuadConfig& quad = {}) {
    auto integrand = [&](double zeta) {
        const double h = eta_center_value(box.center, zeta);
        const double off = detail::phase_offset(spec.phase, zeta);
        // weight argument: eta + offset with eta in [h-1, h+1]
        return detail::spatial_weight(zeta, spec.spatial_exp) *
               detail::bracket_power_integral(h - 1.0 + off, h + 1.0 + off,
                                              2.0 * spec.temporal_exp);
    };
    const double v = detail::integrate_rel(integrand, box.zeta_lo, box.zeta_hi, {}, quad);
    return std::sqrt(v);
}

// || product ||: weighted L2 of the convolution of the two indicator spectra
// (the second factor reflected when conjugated).
inline double product_norm(const ContinuousPair& pair, const FreqNormSpec& spec,
                           const QuadConfig& quad = {}) {
    const IndicatorBox a = pair.a;
    const IndicatorBox b = pair.conjugate_b ? reflect(pair.b) : pair.b;
    const double zeta_lo = a.zeta_lo + b.zeta_lo;
    const double zeta_hi = a.zeta_hi + b.zeta_hi;

    QuadConfig inner_quad = quad;
    inner_quad.verify_convergence = false;  // outer pass re-verifies

    auto eta_integral = [&](double zeta) {
        const detail::QuadCoeffs h = detail::center_curve(a, b, zeta);
        const double lo = std::max(a.zeta_lo, zeta - b.zeta_hi);
        const double hi = std::min(a.zeta_hi, zeta - b.zeta_lo);
        if (!(hi > lo)) return 0.0;
        // Range of H over the overlap: endpoints plus interior vertex.
        double hmin = std::min(h.eval(lo), h.eval(hi));
        double hmax = std::max(h.eval(lo), h.eval(hi));
        if (std::abs(h.a2) > 1e-300) {
            const double vz = -0.5 * h.a1 / h.a2;
            if (vz > lo && vz < hi) {
                hmin = std::min(hmin, h.eval(vz));
                hmax = std::max(hmax, h.eval(vz));
            }
        }
        const double off = detail::phase_offset(spec.phase, zeta);
        auto f_eta = [&](double eta) {
            const double c = detail::convolution_value(a, b, zeta, eta);
            if (c == 0.0) return 0.0;
            return std::pow(bracket(eta + off), 2.0 * spec.temporal_exp) * c * c;
        };
        std::vector<double> breaks = {hmin - 2.0, hmin, hmin + 2.0, hmax - 2.0, hmax, hmax + 2.0};
        return detail::integrate_rel(f_eta, hmin - 2.0, hmax + 2.0, breaks, inner_quad);
    };
    auto zeta_integrand = [&](double zeta) {
        return detail::spatial_weight(zeta, spec.spatial_exp) * eta_integral(zeta);
    };
    // The overlap length is a trapezoid of zeta with kinks at these abscissas.
    std::vector<double> zeta_breaks = {a.zeta_lo + b.zeta_hi, a.zeta_hi + b.zeta_lo};
    const double v = detail::integrate_rel(zeta_integrand, zeta_lo, zeta_hi, zeta_breaks, quad);
    return std::sqrt(v);
}

// Periodic factor: single mode, so the norm is a 1-D tau integral in closed form.
inline double factor_norm(const PeriodicFactor& f, const FreqNormSpec& spec,
                          const QuadConfig& = {}) {
    const double n = static_cast<double>(f.mode);
    const double off = detail::phase_offset(spec.phase, n);
    const double v = detail::spatial_weight(n, spec.spatial_exp) *
                     detail::bracket_power_integral(f.tau_center - 1.0 + off,
                                                    f.tau_center + 1.0 + off,
                                                    2.0 * spec.temporal_exp);
    return std::sqrt(v);
}

// Periodic product: one output mode; the tau-profile is the tent
// max(0, 2 - |tau - c|) from convolving the two unit indicators.
inline double product_norm(const PeriodicPair& pair, const FreqNormSpec& spec,
                           const QuadConfig& quad = {}) {
    const PeriodicFactor a = pair.a;
    const PeriodicFactor b = pair.conjugate_b ? reflect(pair.b) : pair.b;
    const long n_out = a.mode + b.mode;
    const double c_out = a.tau_center + b.tau_center;
    const double n = static_cast<double>(n_out);
    const double off = detail::phase_offset(spec.phase, n);
    auto f_tau = [&](double tau) {
        const double tent = std::max(0.0, 2.0 - std::abs(tau - c_out));
        return std::pow(bracket(tau + off), 2.0 * spec.temporal_exp) * tent * tent;
    };
    std::vector<double> breaks = {c_out, -off};
    const double v = detail::integrate_rel(f_tau, c_out - 2.0, c_out + 2.0, breaks, quad) *
                     detail::spatial_weight(n, spec.spatial_exp);
    return std::sqrt(v);
}

// ---------------------------------------------------------------------------
// The counter-example families
// ---------------------------------------------------------------------------

enum class Family {
    c_uv_1, c_uv_2,
    c_u2_1, c_u2_2, c_u2_3,
    p_uv_1, p_uv_2,
    p_u2_1, p_u2_2,
    p_u2_1w,  // off-resonant (N, -N-1) mode pair, kept for comparison
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::c_uv_1: return "C-uv-1";
        case Family::c_uv_2: return "C-uv-2";
        case Family::c_u2_1: return "C-u2-1";
        case Family::c_u2_2: return "C-u2-2";
        case Family::c_u2_3: return "C-u2-3";
        case Family::p_uv_1: return "P-uv-1";
        case Family::p_uv_2: return "P-uv-2";
        case Family::p_u2_1: return "P-u2-1";
        case Family::p_u2_2: return "P-u2-2";
        case Family::p_u2_1w: return "P-u2-1w";
    }
    return "?";
}

inline Family parse_family(const std::string& s) {
    for (Family f : {Family::c_uv_1, Family::c_uv_2, Family::c_u2_1, Family::c_u2_2,
                     Family::c_u2_3, Family::p_uv_1, Family::p_uv_2, Family::p_u2_1,
                     Family::p_u2_2, Family::p_u2_1w})
        if (s == family_name(f)) return f;
    throw std::invalid_argument("unknown counterexample family '" + s + "'");
}

inline const std::vector<Family>& all_families() {
    static const std::vector<Family> fams = {
        Family::c_uv_1, Family::c_uv_2, Family::c_u2_1, Family::c_u2_2, Family::c_u2_3,
        Family::p_uv_1, Family::p_uv_2, Family::p_u2_1, Family::p_u2_2};
    return fams;
}

inline bool is_periodic(Family f) {
    return f == Family::p_uv_1 || f == Family::p_uv_2 || f == Family::p_u2_1 ||
           f == Family::p_u2_2 || f == Family::p_u2_1w;
}

// Exact support descriptors for one family at scale N (no discretization).
struct CounterexampleProfiles {
    std::optional<ContinuousPair> continuous;
    std::optional<PeriodicPair> periodic;
    std::string notes;
};

inline CounterexampleProfiles build_counterexample(Family family, int n) {
    if (n < 4) throw std::invalid_argument("build_counterexample: N must be an integer >= 4");
    const double dn = static_cast<double>(n);
    const double w = 1.0 / dn;
    CounterexampleProfiles out;
    switch (family) {
        case Family::c_uv_1:
            out.continuous = ContinuousPair{IndicatorBox{0.0, w, EtaCenter::minus_half_sq},
                                            IndicatorBox{dn, dn + w, EtaCenter::zero}, false};
            break;
        case Family::c_uv_2:
            out.continuous = ContinuousPair{IndicatorBox{dn, dn + w, EtaCenter::minus_half_sq},
                                            IndicatorBox{-dn, -dn + w, EtaCenter::zero}, false};
            break;
        case Family::c_u2_1:
            out.continuous = ContinuousPair{IndicatorBox{0.0, w, EtaCenter::minus_half_sq},
                                            IndicatorBox{dn, dn + w, EtaCenter::minus_half_sq},
                                            true};
            break;
        case Family::c_u2_2:
            out.continuous = ContinuousPair{IndicatorBox{dn, dn + w, EtaCenter::minus_half_sq},
                                            IndicatorBox{-dn, -dn + w, EtaCenter::minus_half_sq},
                                            true};
            break;
        case Family::c_u2_3:
            out.continuous = ContinuousPair{IndicatorBox{dn, dn + w, EtaCenter::minus_half_sq},
                                            IndicatorBox{dn, dn + w, EtaCenter::minus_half_sq},
                                            true};
            out.notes = "second support set duplicates the first pair's high box";
            break;
        case Family::p_uv_1:
            out.periodic = PeriodicPair{PeriodicFactor{n, -dn * dn},
                                        PeriodicFactor{-2 * n, 0.0}, false};
            break;
        case Family::p_uv_2:
            out.periodic = PeriodicPair{PeriodicFactor{0, 0.0}, PeriodicFactor{n, 0.0}, false};
            break;
        case Family::p_u2_1:
            // Resonant pairing (n2^2 = n1^2): realizes the stated ~N^s scaling.
            out.periodic = PeriodicPair{PeriodicFactor{n, -dn * dn},
                                        PeriodicFactor{-n, -dn * dn}, true};
            break;
        case Family::p_u2_1w: {
            const double m = dn + 1.0;
            out.periodic = PeriodicPair{PeriodicFactor{n, -dn * dn},
                                        PeriodicFactor{-(n + 1), -m * m}, true};
            out.notes = "off-resonant mode pair (N, -N-1); output tau ~ 2N+1";
            break;
        }
        case Family::p_u2_2:
            out.periodic = PeriodicPair{PeriodicFactor{0, 0.0},
                                        PeriodicFactor{n, -dn * dn}, true};
            break;
    }
    return out;
}

// Norm specifications per family; eps concretizes the +/- exponent shifts.
struct FamilyNorms {
    FreqNormSpec lhs, rhs1, rhs2;
};

inline FamilyNorms family_norms(Family family, double k, double s, double eps) {
    switch (family) {
        case Family::c_uv_1:
        case Family::c_uv_2:
            return FamilyNorms{{k, -0.5, FreqPhase::schrodinger_half},
                               {k, 0.5, FreqPhase::schrodinger_half},
                               {s, 0.5, FreqPhase::plain}};
        case Family::c_u2_1:
        case Family::c_u2_2:
        case Family::c_u2_3:
            return FamilyNorms{{s, -0.5, FreqPhase::plain},
                               {k, 0.5, FreqPhase::schrodinger_half},
                               {k, 0.5, FreqPhase::schrodinger_half}};
        case Family::p_uv_1:
        case Family::p_uv_2:
            return FamilyNorms{{k, -0.5 + eps, FreqPhase::schrodinger_unit},
                               {k, 0.5, FreqPhase::schrodinger_unit},
                               {s, 0.5, FreqPhase::plain}};
        case Family::p_u2_1:
        case Family::p_u2_1w:
        case Family::p_u2_2:
            return FamilyNorms{{s, -0.5 + eps, FreqPhase::plain},
                               {k, 0.5, FreqPhase::schrodinger_unit},
                               {k, 0.5, FreqPhase::schrodinger_unit}};
    }
    throw std::invalid_argument("family_norms: unknown family");
}

struct NormTriple {
    double lhs = 0.0, rhs1 = 0.0, rhs2 = 0.0;
};

inline NormTriple counterexample_norms(Family family, int n, double k, double s, double eps,
                                       const QuadConfig& quad = {}) {
    const CounterexampleProfiles prof = build_counterexample(family, n);
    const FamilyNorms specs = family_norms(family, k, s, eps);
    NormTriple out;
    if (prof.continuous) {
        out.lhs = product_norm(*prof.continuous, specs.lhs, quad);
        out.rhs1 = factor_norm(prof.continuous->a, specs.rhs1, quad);
        out.rhs2 = factor_norm(prof.continuous->b, specs.rhs2, quad);
    } else {
        out.lhs = product_norm(*prof.periodic, specs.lhs, quad);
        out.rhs1 = factor_norm(prof.periodic->a, specs.rhs1, quad);
        out.rhs2 = factor_norm(prof.periodic->b, specs.rhs2, quad);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Predicted exponent table (exact rational arithmetic)
// ---------------------------------------------------------------------------

struct PredictedSlopes {
    Rational lhs, rhs1, rhs2, ratio;
    int lhs_eps_units = 0;  // measured lhs slope also carries this many +eps
};

inline PredictedSlopes predicted_exponent(Family family, const Rational& k, const Rational& s) {
    const Rational half(1, 2), threehalf(3, 2), one(1), zero(0);
    PredictedSlopes p;
    switch (family) {
        case Family::c_uv_1:
            p = {k - threehalf, -half, s - half, Rational(), 0};
            break;
        case Family::c_uv_2:
            p = {-threehalf, k - half, s - half, Rational(), 0};
            break;
        case Family::c_u2_1:
            p = {s - threehalf, -half, k - half, Rational(), 0};
            break;
        case Family::c_u2_2:
            p = {s - threehalf, k - half, k - half, Rational(), 0};
            break;
        case Family::c_u2_3:
            p = {-threehalf, k - half, k - half, Rational(), 0};
            break;
        case Family::p_uv_1:
            p = {k, k, s, Rational(), 0};
            break;
        case Family::p_uv_2:
            p = {k - one, zero, s, Rational(), 2};
            break;
        case Family::p_u2_1:
            p = {s, k, k, Rational(), 0};
            break;
        case Family::p_u2_1w:
            p = {s - half, k, k, Rational(), 1};  // measured scaling of the off-resonant pair
            break;
        case Family::p_u2_2:
            p = {s - one, zero, k, Rational(), 2};
            break;
    }
    p.ratio = p.lhs - p.rhs1 - p.rhs2;
    return p;
}

// The index condition each family witnesses; returns true when (k, s)
// violates it.
inline bool condition_violated(Family family, double k, double s) {
    const double tol = 1e-12;
    switch (family) {
        case Family::c_uv_1: return k > s + 0.5 + tol;
        case Family::c_uv_2: return -k > s + 0.5 + tol;
        case Family::c_u2_1: return s > k + 0.5 + tol;
        case Family::c_u2_2: return s > 2.0 * k + 0.5 + tol;
        case Family::c_u2_3: return 0.0 > 2.0 * k + 0.5 + tol;
        case Family::p_uv_1: return s < -tol;
        case Family::p_uv_2: return k >= s + 1.0 - tol;
        case Family::p_u2_1: return s > 2.0 * k + tol;
        case Family::p_u2_1w: return s > 2.0 * k + tol;
        case Family::p_u2_2: return s >= k + 1.0 - tol;
    }
    return false;
}

inline const char* condition_text(Family family) {
    switch (family) {
        case Family::c_uv_1: return "k <= s + 1/2";
        case Family::c_uv_2: return "-k <= s + 1/2";
        case Family::c_u2_1: return "s <= k + 1/2";
        case Family::c_u2_2: return "s <= 2k + 1/2";
        case Family::c_u2_3: return "0 <= 2k + 1/2";
        case Family::p_uv_1: return "s >= 0";
        case Family::p_uv_2: return "k < s + 1";
        case Family::p_u2_1: return "s <= 2k";
        case Family::p_u2_1w: return "s <= 2k";
        case Family::p_u2_2: return "s < k + 1";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Scaling sweep
// ---------------------------------------------------------------------------

struct ScalingReport {
    std::string family;
    double k = 0.0, s = 0.0;
    double eps = 0.01;
    std::vector<int> n_values;
    std::vector<double> lhs, rhs1, rhs2;
    LineFit lhs_fit, rhs1_fit, rhs2_fit;
    double ratio_slope = 0.0;
    double pred_lhs = 0.0, pred_rhs1 = 0.0, pred_rhs2 = 0.0, pred_ratio = 0.0;
    std::string pred_lhs_str, pred_rhs1_str, pred_rhs2_str, pred_ratio_str;
    double r2_min = 0.0;
    std::string condition;
    bool violated = false;
    std::string verdict;
    std::string notes;
};

inline std::vector<int> default_n_list(int n_max = 128) {
    std::vector<int> ns;
    for (int n = 8; n <= n_max; n *= 2) ns.push_back(n);
    return ns;
}

// Verdict threshold on the measured ratio slope: growth beyond +0.1 for
// indices violating the condition confirms necessity.
inline constexpr double kVerdictSlopeThreshold = 0.1;

inline ScalingReport scaling_sweep(Family family, double k, double s, std::vector<int> ns,
                                   double eps = 0.01, const QuadConfig& quad = {}) {
    if (ns.size() < 4) throw std::invalid_argument("scaling_sweep: need at least 4 values of N");
    for (std::size_t i = 0; i + 1 < ns.size(); ++i)
        if (ns[i + 1] <= ns[i])
            throw std::invalid_argument("scaling_sweep: N list must be strictly increasing");

    ScalingReport rep;
    rep.family = family_name(family);
    rep.k = k;
    rep.s = s;
    rep.eps = eps;
    rep.n_values = ns;
    for (int n : ns) {
        const NormTriple t = counterexample_norms(family, n, k, s, eps, quad);
        rep.lhs.push_back(t.lhs);
        rep.rhs1.push_back(t.rhs1);
        rep.rhs2.push_back(t.rhs2);
        rep.notes = build_counterexample(family, n).notes;
    }
    // The first N is pre-asymptotic; fits use the rest.
    rep.lhs_fit = log2_fit(rep.n_values, rep.lhs, 1);
    rep.rhs1_fit = log2_fit(rep.n_values, rep.rhs1, 1);
    rep.rhs2_fit = log2_fit(rep.n_values, rep.rhs2, 1);
    rep.ratio_slope = rep.lhs_fit.slope - rep.rhs1_fit.slope - rep.rhs2_fit.slope;
    rep.r2_min = std::min({rep.lhs_fit.r2, rep.rhs1_fit.r2, rep.rhs2_fit.r2});

    const PredictedSlopes pred =
        predicted_exponent(family, rational_from_double(k), rational_from_double(s));
    rep.pred_lhs = pred.lhs.value();
    rep.pred_rhs1 = pred.rhs1.value();
    rep.pred_rhs2 = pred.rhs2.value();
    rep.pred_ratio = pred.ratio.value();
    rep.pred_lhs_str = pred.lhs.str();
    rep.pred_rhs1_str = pred.rhs1.str();
    rep.pred_rhs2_str = pred.rhs2.str();
    rep.pred_ratio_str = pred.ratio.str();

    rep.condition = condition_text(family);
    rep.violated = condition_violated(family, k, s);
    if (rep.violated && rep.ratio_slope > kVerdictSlopeThreshold)
        rep.verdict = "NECESSITY CONFIRMED";
    else if (!rep.violated && rep.ratio_slope <= kVerdictSlopeThreshold)
        rep.verdict = "CONSISTENT";
    else
        rep.verdict = "INCONCLUSIVE";
    return rep;
}

// ---------------------------------------------------------------------------
// Positive-direction bounded-ratio probe on trajectory data
// ---------------------------------------------------------------------------

enum class EstimateId { uv_continuous, u2_continuous, uv_periodic, u2_periodic };

inline EstimateId parse_estimate(const std::string& s) {
    if (s == "uv-continuous") return EstimateId::uv_continuous;
    if (s == "u2-continuous") return EstimateId::u2_continuous;
    if (s == "uv-periodic") return EstimateId::uv_periodic;
    if (s == "u2-periodic") return EstimateId::u2_periodic;
    throw std::invalid_argument("unknown estimate id '" + s + "'");
}

// LHS/RHS ratio for the positive bilinear estimates; a regression harness,
// never a proof. `partner` is v for the uv estimates, w for the u2 ones.
inline double inequality_ratio_probe(EstimateId id, double k, double s, double a, double b,
                                     const SpaceTimeField& u_traj, const SpaceTimeField& partner,
                                     std::span<const double> window) {
    if (u_traj.num_frames() != partner.num_frames())
        throw std::invalid_argument("inequality_ratio_probe: trajectories must share lattice");
    const bool periodic = (id == EstimateId::uv_periodic || id == EstimateId::u2_periodic);
    const bool is_uv = (id == EstimateId::uv_continuous || id == EstimateId::uv_periodic);
    const Dispersion xdisp = periodic ? Dispersion::unit_laplacian : Dispersion::half_laplacian;

    std::vector<Field> prod(u_traj.num_frames());
    for (std::size_t t = 0; t < u_traj.num_frames(); ++t) {
        Field pf = u_traj.frames[t];
        for (std::size_t i = 0; i < pf.samples.size(); ++i) {
            const cdouble other = partner.frames[t].samples[i];
            pf.samples[i] *= is_uv ? other : std::conj(other);
        }
        prod[t] = std::move(pf);
    }
    const SpaceTimeField prod_traj =
        make_space_time_field(u_traj.time_start, u_traj.dt, std::move(prod));

    double lhs, rhs1, rhs2;
    if (is_uv) {
        lhs = bourgain_norm(prod_traj, BourgainIndex{k, -a}, xdisp, window);
        rhs1 = bourgain_norm(u_traj, BourgainIndex{k, b}, xdisp, window);
        rhs2 = bourgain_norm(partner, BourgainIndex{s, b}, Dispersion::none, window);
    } else {
        lhs = bourgain_norm(prod_traj, BourgainIndex{s, -a}, Dispersion::none, window);
        rhs1 = bourgain_norm(u_traj, BourgainIndex{k, b}, xdisp, window);
        rhs2 = bourgain_norm(partner, BourgainIndex{k, b}, xdisp, window);
    }
    const double denom = rhs1 * rhs2;
    if (denom == 0.0) {
        if (lhs == 0.0) return 0.0;
        throw std::invalid_argument("inequality_ratio_probe: zero right-hand side");
    }
    return lhs / denom;
}

}  // namespace sdlab::audit

#endif
