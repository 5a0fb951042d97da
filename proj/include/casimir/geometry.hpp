#pragma once

#include <optional>

namespace casimir {

/// Two spheres (or a sphere facing a plane) separated by a surface gap.
///
/// Lengths are in any consistent unit. A missing second radius denotes the
/// plane-sphere configuration; it is kept distinct from a large finite radius
/// so that y and u never suffer from cancellation in that limit.
struct SphereGeometry {
    double gap = 0.0;                    ///< L, surface-to-surface distance
    double radius1 = 0.0;                ///< R1
    std::optional<double> radius2;       ///< R2, empty for a plane

    static SphereGeometry spheres(double gap, double r1, double r2) {
        return {gap, r1, r2};
    }
    static SphereGeometry sphere_plane(double gap, double r1) {
        return {gap, r1, std::nullopt};
    }

    bool is_plane() const noexcept { return !radius2.has_value(); }

    /// Center-to-center distance L + R1 + R2 (finite radii only).
    double center_distance() const;

    /// Throws DomainError unless L > 0, R1 > 0 and R2 > 0 (if finite).
    void validate() const;
};

/// Dimensionless invariants of a two-sphere configuration.
///
/// y - 1 is stored separately because every near-contact quantity depends on
/// it and recomputing it from y loses digits. For the plane case u = 0,
/// alpha1 = R1/R2 = 0, alpha2 = R2/R1 = +inf and z = +inf.
struct ReducedGeometry {
    double y = 0.0;
    double y_minus_1 = 0.0;
    double u = 0.0;
    double z = 0.0;
    double varpi = 0.0;   ///< arcosh(y)
    double r_eff = 1.0;   ///< R1 R2 / (R1 + R2), length unit of the source geometry
    double alpha1 = 0.0;  ///< R1 / R2
    double alpha2 = 0.0;  ///< R2 / R1
    bool plane = false;

    /// R1 / center distance; 0 for the plane case.
    double radius1_over_distance() const;
    /// R2 / center distance; 1 for the plane case.
    double radius2_over_distance() const;
};

/// Reduces a physical configuration to its invariants.
ReducedGeometry reduce(const SphereGeometry& geom);

/// Builds invariants from (y, u); lengths are in units of R_eff. The smaller
/// sphere is sphere 1 (alpha1 <= 1) so that u -> 0 turns sphere 2 into the
/// plane.
ReducedGeometry from_invariants(double y, double u);

/// Same as from_invariants but takes y - 1 directly, which keeps full
/// relative precision near contact.
ReducedGeometry from_gap_invariants(double y_minus_1, double u);

/// A physical configuration with the given invariants (R_eff = red.r_eff).
SphereGeometry realize(const ReducedGeometry& red);

/// arcosh(1 + d) without cancellation for small d.
double arcosh1p(double d);

struct FreeEnergySI {
    double joules;       ///< F_T = -k_B T f
    double kbt_units;    ///< F_T / (k_B T) = -f
    double entropy_kb;   ///< S / k_B = f
};

/// Converts a reduced free energy f at temperature T (kelvin) to SI units.
FreeEnergySI free_energy_si(double f, double temperature);

}  // namespace casimir
