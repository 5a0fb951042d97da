#pragma once

#include "casimir/constants.hpp"
#include "casimir/dielectric_electrolyte.hpp"
#include "casimir/drude_vacuum.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/models.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/quadrature_oracle.hpp"
#include "casimir/rational_model.hpp"
#include "casimir/round_trip_matrix.hpp"
#include "casimir/scalar_model.hpp"
