#pragma once

namespace casimir {

/// Apery's constant zeta(3).
inline constexpr double kZeta3 = 1.2020569031595942854;

/// Boltzmann constant in J/K (exact, SI 2019).
inline constexpr double kBoltzmann = 1.380649e-23;

/// PFA coefficient zeta(3)/8 shared by all three models.
inline constexpr double kPfaCoefficient = kZeta3 / 8.0;

}  // namespace casimir
