#pragma once

#include "casimir/geometry.hpp"
#include "casimir/scalar_model.hpp"

namespace casimir {

/// Dimensionless capacitance matrix c = C / (4 pi eps0 sqrt(R1 R2)).
///
/// For the plane case c11 -> 0, c22 -> inf and c12 -> 0 while the
/// determinant stays finite; det and det_minus_one hold that limit.
struct CapacitanceMatrix {
    double c11 = 0.0;
    double c22 = 0.0;
    double c12 = 0.0;
    double det = 1.0;
    double det_minus_one = 0.0;  ///< det - 1 without cancellation
    bool plane = false;
};

CapacitanceMatrix capacitance_coeffs(const ReducedGeometry& red, double tol = kDefaultTolerance,
                                     long max_terms = kDefaultMaxTerms);

/// Maxwell's series for the mutual capacitance, C12 / (4 pi eps0), in the
/// length unit of red.r_eff.
double mutual_capacitance_maxwell(const ReducedGeometry& red, double tol = kDefaultTolerance,
                                  long max_terms = kDefaultMaxTerms);

/// f_sc - (1/2) log det c.
double f_dvd_total(const ReducedGeometry& red, double tol = kDefaultTolerance,
                   long max_terms = kDefaultMaxTerms);

/// Single round trip in closed form.
double f1_dvd(const ReducedGeometry& red);

/// Contribution of exactly r round trips, summed exactly over the 2^n
/// open/closed ring configurations of the round-trip matrix. Cost grows
/// as 2^(2r); intended for r <= 12.
double f_dvd_roundtrip(const ReducedGeometry& red, int r);

/// Large-distance limit: 3/(8 y^3) for two spheres, 1/(4 y^3) for a plane.
double f_dvd_dipole(const ReducedGeometry& red);

}  // namespace casimir
