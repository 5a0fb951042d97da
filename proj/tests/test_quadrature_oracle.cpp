#include <doctest.h>

#include <cmath>

#include "casimir/dielectric_electrolyte.hpp"
#include "casimir/drude_vacuum.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/quadrature_oracle.hpp"
#include "casimir/scalar_model.hpp"

using namespace casimir;
using namespace casimir::validation;

namespace {

const ReflectionModel kScalar{ReflectionKind::scalar};
const ReflectionModel kDvd{ReflectionKind::drude_vacuum};
const ReflectionModel kDed{ReflectionKind::dielectric_electrolyte};

}  // namespace

TEST_CASE("kernels at zero argument") {
    CHECK(reflection_tm(kScalar, 0.0) == 1.0);
    CHECK(reflection_tm(kDvd, 0.0) == 0.0);
    CHECK(std::abs(reflection_tm(kDed, 0.0)) < 1e-300);
    CHECK(reflection_tm_series(kDvd, 0.0) == 0.0);
    CHECK(reflection_tm_series(kDed, 0.0) == 0.0);
}

TEST_CASE("closed kernels match their multipole series") {
    for (const auto& m : {kScalar, kDvd, kDed})
        for (double chi : {1e-4, 0.1, 0.49, 0.51, 1.0, 3.0, 8.0}) {
            const double closed = reflection_tm(m, chi);
            CHECK(reflection_tm_series(m, chi) == doctest::Approx(closed).epsilon(1e-12));
        }
    // dielectric kernel near zero: -(chi^2 / 4 + chi^4 / 36 + ...)
    const double chi = 1e-2;
    CHECK(reflection_tm(kDed, chi) == doctest::Approx(-(chi * chi / 4 + std::pow(chi, 4) / 36)).epsilon(1e-8));
    // DvD kernel: 2 sinh^2(chi/2)
    CHECK(reflection_tm(kDvd, 1e-6) == doctest::Approx(5e-13).epsilon(1e-9));
}

TEST_CASE("wall reflection") {
    CHECK(plane_reflection(kScalar) == 1.0);
    CHECK(plane_reflection(kDvd) == 1.0);
    CHECK(plane_reflection(kDed) == -1.0);
}

TEST_CASE("single round trip reproduces closed forms") {
    for (auto [y, u] : {std::pair{1.5, 0.25}, std::pair{2.0, 0.1}, std::pair{5.0, 0.0}}) {
        const auto red = from_invariants(y, u);
        CHECK(f_roundtrip_planewave(kScalar, red, 1).value == doctest::Approx(f_sc_roundtrip(red, 1)).epsilon(1e-9));
        CHECK(f_roundtrip_planewave(kDvd, red, 1).value == doctest::Approx(f1_dvd(red)).epsilon(1e-9));
        CHECK(f_roundtrip_planewave(kDed, red, 1).value == doctest::Approx(f1_ded(red)).epsilon(1e-9));
    }
    CHECK(f_roundtrip_planewave(kScalar, from_invariants(2.0, 0.25), 1).value ==
          doctest::Approx(1.0 / 6.0).epsilon(1e-6));
    CHECK(f_roundtrip_planewave(kDvd, from_invariants(2.0, 0.25), 1).value == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(f_roundtrip_planewave(kDed, from_invariants(2.0, 0.0), 1).value ==
          doctest::Approx(0.0228256).epsilon(1e-5));
}

TEST_CASE("two round trips, scalar and DvD") {
    for (auto [y, u] : {std::pair{2.0, 0.25}, std::pair{1.5, 0.0}}) {
        const auto red = from_invariants(y, u);
        const auto sc = f_roundtrip_planewave(kScalar, red, 2);
        CHECK(std::abs(sc.value - f_sc_roundtrip(red, 2)) <= sc.error + 1e-12 * sc.value);
        const auto dvd = f_roundtrip_planewave(kDvd, red, 2);
        CHECK(std::abs(dvd.value - f_dvd_roundtrip(red, 2)) <= dvd.error);
        CHECK(dvd.error < 2e-2 * dvd.value);
    }
}

TEST_CASE("argument checks") {
    const auto red = from_invariants(2.0, 0.1);
    CHECK_THROWS_AS(f_roundtrip_planewave(kScalar, red, 3), DomainError);
    CHECK_THROWS_AS(f_roundtrip_planewave(kScalar, red, 0), DomainError);
    CHECK_THROWS_AS(reflection_tm_series({ReflectionKind::scalar, 0}, 1.0), DomainError);
    OracleSettings s;
    s.rel_tol = 0.0;
    CHECK_THROWS_AS(f_roundtrip_planewave(kScalar, red, 1, s), DomainError);
}
