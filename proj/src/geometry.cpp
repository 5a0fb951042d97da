#include "casimir/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_finite_positive(double v, const char* name) {
    if (!std::isfinite(v) || !(v > 0.0))
        throw DomainError(std::string(name) + " must be finite and > 0");
}

}  // namespace

double SphereGeometry::center_distance() const {
    if (is_plane()) return kInf;
    return gap + radius1 + *radius2;
}

void SphereGeometry::validate() const {
    require_finite_positive(gap, "gap L");
    require_finite_positive(radius1, "radius R1");
    if (radius2) require_finite_positive(*radius2, "radius R2");
}

double ReducedGeometry::radius1_over_distance() const {
    return plane ? 0.0 : std::sqrt(alpha1 / z);
}

double ReducedGeometry::radius2_over_distance() const {
    return plane ? 1.0 : std::sqrt(alpha2 / z);
}

double arcosh1p(double d) {
    // log(y + sqrt(y^2 - 1)) with y^2 - 1 = d (2 + d)
    return std::log1p(d + std::sqrt(d * (2.0 + d)));
}

ReducedGeometry reduce(const SphereGeometry& geom) {
    geom.validate();
    ReducedGeometry red;
    if (geom.is_plane()) {
        red.plane = true;
        red.r_eff = geom.radius1;
        red.y_minus_1 = geom.gap / geom.radius1;
        red.u = 0.0;
        red.alpha1 = 0.0;
        red.alpha2 = kInf;
        red.z = kInf;
    } else {
        const double r1 = geom.radius1;
        const double r2 = *geom.radius2;
        const double sum = r1 + r2;
        red.r_eff = r1 * r2 / sum;
        red.u = (r1 / sum) * (r2 / sum);
        const double x = geom.gap / red.r_eff;
        red.y_minus_1 = x + 0.5 * red.u * x * x;
        red.alpha1 = r1 / r2;
        red.alpha2 = r2 / r1;
        red.z = 2.0 * red.y_minus_1 + 1.0 / red.u;
    }
    red.y = 1.0 + red.y_minus_1;
    red.varpi = arcosh1p(red.y_minus_1);
    return red;
}

ReducedGeometry from_gap_invariants(double y_minus_1, double u) {
    if (!std::isfinite(y_minus_1) || !(y_minus_1 > 0.0))
        throw DomainError("y must satisfy y > 1");
    if (!(u >= 0.0 && u <= 0.25)) throw DomainError("u must lie in [0, 1/4]");

    ReducedGeometry red;
    red.y_minus_1 = y_minus_1;
    red.y = 1.0 + y_minus_1;
    red.varpi = arcosh1p(y_minus_1);
    red.u = u;
    red.r_eff = 1.0;
    if (u == 0.0) {
        red.plane = true;
        red.alpha1 = 0.0;
        red.alpha2 = kInf;
        red.z = kInf;
    } else {
        const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * u));
        const double big = 1.0 - 2.0 * u + root;
        red.alpha1 = 2.0 * u / big;
        red.alpha2 = big / (2.0 * u);
        red.z = 2.0 * y_minus_1 + 1.0 / u;
    }
    return red;
}

ReducedGeometry from_invariants(double y, double u) {
    if (!std::isfinite(y) || !(y > 1.0)) throw DomainError("y must satisfy y > 1");
    return from_gap_invariants(y - 1.0, u);
}

SphereGeometry realize(const ReducedGeometry& red) {
    const double d = red.y_minus_1;
    if (red.plane) return SphereGeometry::sphere_plane(red.r_eff * d, red.r_eff);
    // y - 1 = x + (u/2) x^2 with x = L / R_eff
    const double x = 2.0 * d / (1.0 + std::sqrt(1.0 + 2.0 * red.u * d));
    return SphereGeometry::spheres(red.r_eff * x, red.r_eff * (1.0 + red.alpha1),
                                   red.r_eff * (1.0 + red.alpha2));
}

FreeEnergySI free_energy_si(double f, double temperature) {
    if (!std::isfinite(temperature) || !(temperature > 0.0))
        throw DomainError("temperature must be > 0");
    if (!std::isfinite(f)) throw DomainError("reduced free energy must be finite");
    return {-kBoltzmann * temperature * f, -f, f};
}

}  // namespace casimir
