#include <doctest.h>

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/dielectric_electrolyte.hpp"
#include "casimir/drude_vacuum.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/quadrature_oracle.hpp"
#include "casimir/scalar_model.hpp"

using namespace casimir;

TEST_CASE("single round trip closed form") {
    const double plane = 0.5 * (1.0 / 3.0 + std::log(0.75));
    CHECK(f1_ded(from_invariants(2.0, 0.0)) == doctest::Approx(plane).epsilon(1e-12));
    CHECK(f1_ded(from_invariants(2.0, 0.0)) == doctest::Approx(0.0228256).epsilon(1e-6));
    const double equal = 1.0 / 6.0 + 0.5 * std::log(27.0 / 39.0625) +
                         std::log((3.0 + std::sqrt(2.0 / 3.0)) / (3.0 - std::sqrt(2.0 / 3.0))) / (6.0 * std::sqrt(6.0));
    CHECK(f1_ded(from_invariants(2.0, 0.25)) == doctest::Approx(equal).epsilon(1e-12));
    CHECK(f1_ded(from_invariants(2.0, 0.25)) == doctest::Approx(0.0199981).epsilon(1e-5));
}

TEST_CASE("engine reproduces the single round trip") {
    for (auto [y, u] : {std::pair{2.0, 0.1}, std::pair{1.5, 0.25}, std::pair{1.05, 0.04}, std::pair{3.0, 0.0},
                        std::pair{1.01, 0.25}}) {
        const auto red = from_invariants(y, u);
        const auto e = f_ded_roundtrip(red, 1);
        CHECK(e.value == doctest::Approx(f1_ded(red)).epsilon(1e-8));
    }
}

TEST_CASE("two round trips, tensor rule against QMC") {
    const auto red = from_invariants(2.0, 0.25);
    QuadratureSettings tensor;
    tensor.nodes_per_dim = 32;
    QuadratureSettings qmc;
    qmc.dim_switch = 2;
    qmc.qmc_points = 1L << 16;
    const auto a = f_ded_roundtrip(red, 2, tensor);
    const auto b = f_ded_roundtrip(red, 2, qmc);
    CHECK(a.value > 0.0);
    CHECK(std::abs(a.value - b.value) <= a.error + b.error + 1e-14);
    CHECK(b.error < 1e-2 * b.value);
}

TEST_CASE("two round trips against the plane-wave oracle") {
    const validation::ReflectionModel model{validation::ReflectionKind::dielectric_electrolyte};
    for (auto [y, u] : {std::pair{1.5, 0.25}, std::pair{2.0, 0.0}, std::pair{1.3, 0.1}}) {
        const auto red = from_invariants(y, u);
        const auto engine = f_ded_roundtrip(red, 2);
        const auto oracle = validation::f_roundtrip_planewave(model, red, 2);
        CHECK(std::abs(engine.value - oracle.value) <= engine.error + oracle.error);
    }
}

TEST_CASE("bounded by the other models") {
    for (double d : {3e-2, 0.3, 3.0})
        for (double u : {0.0, 0.25}) {
            const auto red = from_gap_invariants(d, u);
            const double ded = f_ded_total(red).value;
            CHECK(ded > 0.0);
            CHECK(ded < f_dvd_total(red));
            CHECK(ded < f_sc_total(red));
        }
}

TEST_CASE("total and its error budget") {
    const auto red = from_gap_invariants(0.1, 0.25);
    const auto total = f_ded_total(red, 1e-6, 6);
    CHECK(total.rounds >= 2);
    CHECK(total.error < 1e-3 * total.value);
    CHECK_FALSE(total.degraded);
    const auto shorter = f_ded_total(red, 1e-6, 4);
    CHECK(std::abs(total.value - shorter.value) <= total.error + shorter.error);
}

TEST_CASE("deterministic for a fixed seed") {
    const auto red = from_gap_invariants(0.05, 0.1);
    const auto a = f_ded_roundtrip(red, 3);
    const auto b = f_ded_roundtrip(red, 3);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
}

TEST_CASE("dipole limit") {
    CHECK(f_ded_dipole(from_invariants(10.0, 0.1)) == doctest::Approx(9.375e-5).epsilon(1e-14));
    CHECK(f_ded_dipole(from_invariants(10.0, 0.0)) == doctest::Approx(1.25e-4).epsilon(1e-14));
    const double y = 1e3;
    CHECK(y * y * y * f_ded_total(from_invariants(y, 0.25)).value == doctest::Approx(3.0 / 32.0).epsilon(5e-3));
    CHECK(y * y * y * f_ded_total(from_invariants(y, 0.0)).value == doctest::Approx(1.0 / 8.0).epsilon(5e-3));
}

TEST_CASE("settings validation") {
    const auto red = from_invariants(2.0, 0.1);
    QuadratureSettings s;
    s.nodes_per_dim = 1;
    CHECK_THROWS_AS(f_ded_roundtrip(red, 2, s), DomainError);
    s = {};
    s.qmc_points = 512;
    CHECK_THROWS_AS(f_ded_roundtrip(red, 2, s), DomainError);
    s = {};
    s.qmc_points = 3000;
    CHECK_THROWS_AS(f_ded_roundtrip(red, 2, s), DomainError);
    CHECK_THROWS_AS(f_ded_roundtrip(red, 0), DomainError);
}

TEST_CASE("loose estimates are rejected") {
    const auto red = from_gap_invariants(1e-3, 0.25);
    QuadratureSettings s;
    s.qmc_points = 1L << 10;
    s.replicates = 2;
    s.max_rel_error = 1e-9;
    CHECK_THROWS_AS(f_ded_roundtrip(red, 4, s), QuadratureError);
}
