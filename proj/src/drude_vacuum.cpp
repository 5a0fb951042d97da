#include "casimir/drude_vacuum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/round_trip_matrix.hpp"
#include "series.hpp"

namespace casimir {

namespace {

void require_valid(const ReducedGeometry& red) {
    if (!(red.y_minus_1 > 0.0)) throw DomainError("Drude model requires y > 1");
}

// sinh(a w) / sinh(b w) for 0 < a <= b without overflow.
double sinh_ratio(double w, double a, double b) {
    return std::exp(-(b - a) * w) * std::expm1(-2.0 * a * w) / std::expm1(-2.0 * b * w);
}

// sum_{n>=first} sinh(w) / (alpha sinh(n w) + sinh((n+1) w))
double self_series(double w, double alpha, long first, double tol, long max_terms) {
    const double q = std::exp(-w);
    auto term = [&](long n) {
        const double m = static_cast<double>(n);
        const double lead = sinh_ratio(w, 1.0, m + 1.0);
        const double lag = n == 0 ? 0.0 : sinh_ratio(w, m, m + 1.0);
        return lead / (1.0 + alpha * lag);
    };
    return detail::sum_bounded_tail(term, first, q, 2.0, tol, max_terms, "capacitance").value;
}

// sum_{n>=first} sinh(w) / sinh((n+1) w)
double mutual_series(double w, double tol, long max_terms, long first = 0) {
    const double q = std::exp(-w);
    auto term = [&](long n) { return sinh_ratio(w, 1.0, static_cast<double>(n) + 1.0); };
    return detail::sum_bounded_tail(term, first, q, 2.0, tol, max_terms, "capacitance").value;
}

}  // namespace

CapacitanceMatrix capacitance_coeffs(const ReducedGeometry& red, double tol, long max_terms) {
    require_valid(red);
    if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tolerance must lie in (0, 1)");
    const double w = red.varpi;
    CapacitanceMatrix c;
    c.plane = red.plane;
    if (red.plane) {
        c.c11 = 0.0;
        c.c22 = std::numeric_limits<double>::infinity();
        c.c12 = 0.0;
        c.det_minus_one = mutual_series(w, tol, max_terms, 1);
        c.det = 1.0 + c.det_minus_one;
        return c;
    }
    const double s12 = mutual_series(w, tol, max_terms);
    // n = 0 terms are exactly 1 in the alpha-normalized series
    const double e11 = self_series(w, red.alpha1, 1, tol, max_terms);
    const double e22 = self_series(w, red.alpha2, 1, tol, max_terms);
    c.c11 = std::sqrt(red.alpha1) * (1.0 + e11);
    c.c22 = std::sqrt(red.alpha2) * (1.0 + e22);
    c.c12 = -s12 / std::sqrt(red.z);
    c.det_minus_one = e11 + e22 + e11 * e22 - s12 * s12 / red.z;
    c.det = 1.0 + c.det_minus_one;
    return c;
}

double mutual_capacitance_maxwell(const ReducedGeometry& red, double tol, long max_terms) {
    require_valid(red);
    const double s12 = mutual_series(red.varpi, tol, max_terms);
    if (red.plane) return -red.r_eff * s12;
    return -red.r_eff * s12 / std::sqrt(red.u * red.z);
}

double f_dvd_total(const ReducedGeometry& red, double tol, long max_terms) {
    require_valid(red);
    if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tolerance must lie in (0, 1)");
    // both terms are ~1/(4y) while the difference is ~1/y^3 far apart
    const double cancel = std::min(1.0, f1_dvd(red) / f_sc_roundtrip(red, 1));
    const double inner = std::max(tol * cancel, 1e-16);
    const auto c = capacitance_coeffs(red, inner, max_terms);
    return f_sc_total(red, inner, max_terms) - 0.5 * std::log1p(c.det_minus_one);
}

double f1_dvd(const ReducedGeometry& red) {
    require_valid(red);
    const double y = red.y;
    const double y2m1 = red.y_minus_1 * (2.0 + red.y_minus_1);
    if (red.plane) return 1.0 / (4.0 * y * y2m1);
    const double sc = y / (4.0 * y2m1);
    return sc + 0.5 / red.z - 0.5 * (1.0 / (2.0 * y + red.alpha1) + 1.0 / (2.0 * y + red.alpha2));
}

double f_dvd_roundtrip(const ReducedGeometry& red, int r) {
    require_valid(red);
    const int n = ring_size(red, r);
    if (n > 30) throw DomainError("f_dvd_roundtrip supports rings of at most 30 reflections");
    const auto c = ring_couplings(red, r);
    const std::vector<double> open(n, 0.0);
    return ring_prefactor(red, r) * ring_signed_subset_sum(c, open);
}

double f_dvd_dipole(const ReducedGeometry& red) {
    require_valid(red);
    const double y3 = red.y * red.y * red.y;
    return red.plane ? 1.0 / (4.0 * y3) : 3.0 / (8.0 * y3);
}

}  // namespace casimir
