#pragma once

#include <cstdint>

#include "casimir/geometry.hpp"
#include "casimir/round_trip_matrix.hpp"

namespace casimir {

/// Numerical settings for the t-integrals of multi-round-trip contributions.
///
/// Integrals over d <= dim_switch couplings use a tensor Gauss-Legendre rule
/// with nodes_per_dim nodes (4x that for d <= 2); larger d use qmc_points randomized Sobol points
/// split into `replicates` digitally shifted copies. Couplings are sampled
/// through t = 1 - (1 - s)^map_exponent, which clusters nodes near t = 1
/// where the integrand varies on the scale y - 1.
struct QuadratureSettings {
    int nodes_per_dim = 24;
    long qmc_points = 1L << 14;
    int dim_switch = 4;
    std::uint64_t seed = 20220315;
    int replicates = 8;
    int map_exponent = 2;
    double max_rel_error = 0.05;  ///< per round trip; f_ded_total applies it to the sum

    void validate() const;
};

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// Single round trip in closed form.
double f1_ded(const ReducedGeometry& red);

/// Contribution of exactly r round trips from the t-integral over the
/// inverse determinants of the round-trip matrices. The product measure
/// t_i [delta(t_i - 1) - 1] is expanded over all subsets of couplings pinned
/// at t = 1; the subsets are combined inside the integrand so the large
/// alternating terms cancel before quadrature.
Estimate f_ded_roundtrip(const ReducedGeometry& red, int r, const QuadratureSettings& settings = {});

struct TotalEstimate {
    double value = 0.0;
    double error = 0.0;   ///< quadrature errors plus the tail uncertainty
    double tail = 0.0;    ///< extrapolated contribution of r > rounds
    int rounds = 1;       ///< highest round trip evaluated explicitly
    bool degraded = false;  ///< near contact with the tail dominating the error
};

/// f1_ded plus round trips 2..r_max. Stops early once a contribution falls
/// below tol times the running sum; otherwise adds the scalar-anchored tail
/// sum_{r > r_max} rho(r) f_sc^(r), where rho = f^(r)/f_sc^(r) is continued
/// geometrically from its last two computed values.
TotalEstimate f_ded_total(const ReducedGeometry& red, double tol = 1e-6, int r_max = 5,
                          const QuadratureSettings& settings = {});

/// Large-distance limit: 3/(32 y^3) for two spheres, 1/(8 y^3) for a plane.
double f_ded_dipole(const ReducedGeometry& red);

}  // namespace casimir
