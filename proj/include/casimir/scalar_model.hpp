#pragma once

#include "casimir/geometry.hpp"

namespace casimir {

inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr long kDefaultMaxTerms = 10'000'000;

/// Contribution of r round trips for a Dirichlet scalar,
/// cosh(r w) / (4 r sinh^2(r w)) with w = arcosh(y). Depends on y only.
double f_sc_roundtrip(const ReducedGeometry& red, long r);

/// Sum over all round trips, truncated once a rigorous tail bound drops
/// below tol times the partial sum.
double f_sc_total(const ReducedGeometry& red, double tol = kDefaultTolerance,
                  long max_terms = kDefaultMaxTerms);

/// Sum of the round-trip contributions r > r_last.
double f_sc_tail(const ReducedGeometry& red, long r_last, double tol = kDefaultTolerance,
                 long max_terms = kDefaultMaxTerms);

/// Proximity-force limit zeta(3) / (8 (y - 1)).
double f_pfa(const ReducedGeometry& red);

}  // namespace casimir
