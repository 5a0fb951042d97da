#pragma once

#include <string>
#include <string_view>

#include "casimir/dielectric_electrolyte.hpp"
#include "casimir/geometry.hpp"

namespace casimir {

enum class Model { scalar, dvd, ded };

std::string to_string(Model m);
/// Accepts "scalar", "dvd" and "ded" (case-insensitive).
Model parse_model(std::string_view name);

struct ModelSettings {
    double tol = 1e-9;        ///< series tolerance; ded uses max(tol, 1e-6) for early stopping
    int r_max = 5;            ///< highest explicit ded round trip
    QuadratureSettings quadrature;
};

/// Full free energy with an error estimate (zero for the series models
/// beyond their truncation bound).
Estimate f_total(const ReducedGeometry& red, Model m, const ModelSettings& settings = {});

/// Single round-trip closed form.
double f_single(const ReducedGeometry& red, Model m);

/// Large-distance asymptote; the scalar model has none and throws.
double f_dipole(const ReducedGeometry& red, Model m);

}  // namespace casimir
