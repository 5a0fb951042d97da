#include "casimir/scalar_model.hpp"

#include <algorithm>
#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "series.hpp"

namespace casimir {

namespace {

void require_valid(const ReducedGeometry& red) {
    if (!(red.y_minus_1 > 0.0)) throw DomainError("scalar model requires y > 1");
}

// cosh(x)/sinh(x)^2 written in q = exp(-x); stays finite for large x.
double term(double varpi, long r) {
    const double x = static_cast<double>(r) * varpi;
    const double q = std::exp(-x);
    const double one_minus_q2 = -std::expm1(-2.0 * x);
    return 2.0 * q * (1.0 + q * q) / (one_minus_q2 * one_minus_q2) / (4.0 * static_cast<double>(r));
}

}  // namespace

double f_sc_roundtrip(const ReducedGeometry& red, long r) {
    require_valid(red);
    if (r < 1) throw DomainError("round-trip order must be >= 1");
    return term(red.varpi, r);
}

double f_sc_tail(const ReducedGeometry& red, long r_last, double tol, long max_terms) {
    require_valid(red);
    if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tolerance must lie in (0, 1)");
    // successive terms shrink at least by exp(-varpi)
    const double q = std::exp(-red.varpi);
    return detail::sum_bounded_tail([&](long r) { return term(red.varpi, r); },
                                    std::max(1L, r_last + 1), q, 1.0, tol, max_terms,
                                    "f_sc")
        .value;
}

double f_sc_total(const ReducedGeometry& red, double tol, long max_terms) {
    return f_sc_tail(red, 0, tol, max_terms);
}

double f_pfa(const ReducedGeometry& red) {
    require_valid(red);
    return kZeta3 / (8.0 * red.y_minus_1);
}

}  // namespace casimir
