#pragma once

#include <cstdint>

#include "casimir/geometry.hpp"

/// Brute-force plane-wave evaluation of round-trip integrals. Used to
/// cross-check the closed forms and the matrix representation; not tuned
/// for production use.
namespace casimir::validation {

enum class ReflectionKind { scalar, drude_vacuum, dielectric_electrolyte };

struct ReflectionModel {
    ReflectionKind kind = ReflectionKind::scalar;
    int multipole_cutoff = 40;  ///< l_max of the truncated series

    void validate() const;
};

/// Bracketed TM reflection kernel of a sphere at zero frequency:
/// cosh(chi), cosh(chi) - 1, or -[cosh(chi) + 2 (cosh(chi) - 1)/chi^2 - 2 sinh(chi)/chi].
double reflection_tm(const ReflectionModel& model, double chi);

/// The same kernel from sum_{l <= l_max} A_l chi^(2l) / (2l)!.
double reflection_tm_series(const ReflectionModel& model, double chi);

/// Reflection coefficient of a plane wall for the model (+1 or -1).
double plane_reflection(const ReflectionModel& model);

struct OracleSettings {
    double rel_tol = 1e-11;     ///< adaptive quadrature target, r = 1
    long qmc_points = 1L << 17; ///< r = 2
    int replicates = 8;
    std::uint64_t seed = 7;

    void validate() const;
};

struct OracleResult {
    double value = 0.0;
    double error = 0.0;
};

/// f^(r) from the Gaussian integral over the transverse plane-wave
/// coordinates of the 2r reflections (r for a plane, via its mirror image).
/// r = 1 reduces exactly to a one-dimensional integral over the coupled
/// bilinear form; r = 2 samples the 8 (4 for a plane) Gaussian dimensions
/// with randomized QMC.
OracleResult f_roundtrip_planewave(const ReflectionModel& model, const ReducedGeometry& red, int r,
                                   const OracleSettings& settings = {});

}  // namespace casimir::validation
