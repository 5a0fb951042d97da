#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/geometry.hpp"
#include "casimir/models.hpp"
#include "casimir/rational_model.hpp"

using namespace casimir;

TEST_CASE("built-in parameters") {
    const auto dvd = builtin_params(Model::dvd);
    const auto ded = builtin_params(Model::ded);
    CHECK(phi_rm(0.0, dvd) == doctest::Approx((0.011495 / 0.011359) * (0.19868 / 0.16728)).epsilon(1e-14));
    CHECK(phi_rm(0.0, dvd) == doctest::Approx(1.2019).epsilon(1e-4));
    CHECK(phi_rm(0.0, ded) == doctest::Approx(1.2007).epsilon(1e-4));
    CHECK(dvd.epsilon == 5.9e-3);
    CHECK(ded.epsilon == 1.2e-3);
    CHECK_THROWS_AS(builtin_params(Model::scalar), DomainError);
}

TEST_CASE("phi_rm limits and monotonicity") {
    const auto p = builtin_params(Model::ded);
    CHECK(phi_rm(50.0, p) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi_rm(1e3, p) == 1.0);
    double prev = phi_rm(1e-8, p);
    for (double d : log_grid(1e-6, 40.0, 200)) {
        const double v = phi_rm(d, p);
        CHECK(v <= prev);
        prev = v;
    }
    // both sides of the large-argument switch agree
    CHECK(phi_rm(29.999999, p) == doctest::Approx(phi_rm(30.0, p)).epsilon(1e-12));
}

TEST_CASE("log grid") {
    const auto g = log_grid(1e-2, 10.0, 4);
    REQUIRE(g.size() == 4);
    CHECK(g.front() == 1e-2);
    CHECK(g.back() == 10.0);
    CHECK(g[1] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK_THROWS_AS(log_grid(1.0, 10.0, 0), DomainError);
    CHECK_THROWS_AS(log_grid(0.0, 10.0, 5), DomainError);
}

TEST_CASE("phi_u endpoints") {
    CHECK(phi_u(from_invariants(1e3, 0.1), Model::dvd) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(phi_u(from_invariants(1e3, 0.1), Model::ded) == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(phi_u(from_gap_invariants(1e-3, 0.1), Model::dvd) == doctest::Approx(kZeta3).epsilon(2e-2));
}

TEST_CASE("approximation accuracy with built-in parameters") {
    const auto ded = from_invariants(2.0, 0.1);
    CHECK(f_approx(ded, builtin_params(Model::ded)) ==
          doctest::Approx(f_total(ded, Model::ded).value).epsilon(1.2e-3 * 1.5));
    const auto dvd = from_gap_invariants(1e-2, 0.1);
    CHECK(f_approx(dvd, builtin_params(Model::dvd)) ==
          doctest::Approx(f_total(dvd, Model::dvd).value).epsilon(5.9e-3 * 1.5));
    const auto far = from_invariants(200.0, 0.1);
    CHECK(f_approx(far, builtin_params(Model::dvd)) == doctest::Approx(f_single(far, Model::dvd)).epsilon(1e-15));
}

TEST_CASE("deviation of exact data is zero and refit recovers it") {
    RationalModelParams truth;
    truth.model = Model::dvd;
    truth.n = 2;
    truth.nu = {0.02, 0.3};
    truth.mu = {0.02 * 0.3 / 0.25 / kZeta3, 0.25};
    std::vector<PhiSample> table;
    for (double d : log_grid(1e-2, 10.0, 60)) table.push_back({d, 0.1, phi_rm(d, truth)});
    CHECK(max_deviation(truth, table) == 0.0);
    const auto fitted = refit(Model::dvd, 2, table);
    CHECK(fitted.epsilon < 1e-6);
    CHECK(max_deviation(fitted, table) == doctest::Approx(fitted.epsilon).epsilon(1e-9));
}

TEST_CASE("refit of the DvD model") {
    const auto grid = log_grid(1e-2, 10.0, 60);
    const auto table = tabulate_phi(Model::dvd, {0.1}, grid);
    FitOptions a;
    a.seed = 3;
    FitOptions b;
    b.seed = 17;
    const auto pa = refit(Model::dvd, 2, table, a);
    const auto pb = refit(Model::dvd, 2, table, b);
    CHECK(pa.epsilon < 5.9e-3);
    CHECK(pa.epsilon == doctest::Approx(pb.epsilon).epsilon(0.1));
    double prod = 1.0;
    for (int k = 0; k < 2; ++k) {
        CHECK(pa.nu[k] > 0.0);
        CHECK(pa.mu[k] > 0.0);
        prod *= pa.nu[k] / pa.mu[k];
    }
    CHECK(prod == doctest::Approx(kZeta3).epsilon(1e-10));
}

TEST_CASE("refit argument checks") {
    const auto grid = log_grid(1e-2, 10.0, 10);
    CHECK_THROWS_AS(refit(Model::dvd, 0.1, 2, grid), DomainError);
    CHECK_THROWS_AS(refit(Model::dvd, 0.1, 0, log_grid(1e-2, 10.0, 60)), DomainError);
    CHECK_THROWS_AS(refit(Model::scalar, 0.1, 2, log_grid(1e-2, 10.0, 60)), DomainError);
}

TEST_CASE("parameter validation") {
    auto p = builtin_params(Model::ded);
    p.mu[0] = -1.0;
    CHECK_THROWS_AS(p.validate(), DomainError);
    p = builtin_params(Model::ded);
    p.n = 3;
    CHECK_THROWS_AS(p.validate(), DomainError);
}

TEST_CASE("JSON round trip") {
    auto p = builtin_params(Model::dvd);
    p.grid_spec = "u=0.1;y-1=log(0.01,10,100)";
    p.seed = 42;
    const nlohmann::json j = p;
    CHECK(j.at("model") == "dvd");
    const auto back = j.get<RationalModelParams>();
    CHECK(back.model == p.model);
    CHECK(back.n == p.n);
    CHECK(back.nu == p.nu);
    CHECK(back.mu == p.mu);
    CHECK(back.epsilon == p.epsilon);
    CHECK(back.grid_spec == p.grid_spec);
    CHECK(back.seed == 42);

    RationalModelParams unknown = p;
    unknown.epsilon = -1.0;
    const nlohmann::json k = unknown;
    CHECK(k.at("epsilon").is_null());
    CHECK(k.get<RationalModelParams>().epsilon < 0.0);
}
