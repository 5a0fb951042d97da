#include "casimir/models.hpp"

#include <algorithm>
#include <cctype>

#include "casimir/drude_vacuum.hpp"
#include "casimir/errors.hpp"
#include "casimir/scalar_model.hpp"

namespace casimir {

std::string to_string(Model m) {
    switch (m) {
        case Model::scalar: return "scalar";
        case Model::dvd: return "dvd";
        case Model::ded: return "ded";
    }
    return "?";
}

Model parse_model(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "scalar" || s == "sc") return Model::scalar;
    if (s == "dvd") return Model::dvd;
    if (s == "ded") return Model::ded;
    throw DomainError("unknown model '" + std::string(name) + "'");
}

Estimate f_total(const ReducedGeometry& red, Model m, const ModelSettings& settings) {
    switch (m) {
        case Model::scalar:
            return {f_sc_total(red, settings.tol), 0.0};
        case Model::dvd:
            return {f_dvd_total(red, settings.tol), 0.0};
        case Model::ded: {
            const auto t = f_ded_total(red, std::max(settings.tol, 1e-6), settings.r_max,
                                       settings.quadrature);
            return {t.value, t.error};
        }
    }
    return {};
}

double f_single(const ReducedGeometry& red, Model m) {
    switch (m) {
        case Model::scalar: return f_sc_roundtrip(red, 1);
        case Model::dvd: return f1_dvd(red);
        case Model::ded: return f1_ded(red);
    }
    return 0.0;
}

double f_dipole(const ReducedGeometry& red, Model m) {
    switch (m) {
        case Model::dvd: return f_dvd_dipole(red);
        case Model::ded: return f_ded_dipole(red);
        case Model::scalar: break;
    }
    throw DomainError("the scalar model has no dipolar asymptote");
}

}  // namespace casimir
