#include "casimir/rational_model.hpp"

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <random>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"

namespace casimir {

void RationalModelParams::validate() const {
    if (model == Model::scalar) throw DomainError("rational model is defined for dvd and ded only");
    if (n < 1) throw DomainError("rational model order must be >= 1");
    if (static_cast<int>(nu.size()) != n || static_cast<int>(mu.size()) != n)
        throw DomainError("rational model needs n zeros and n poles");
    for (int k = 0; k < n; ++k)
        if (!(nu[k] > 0.0 && mu[k] > 0.0 && std::isfinite(nu[k]) && std::isfinite(mu[k])))
            throw DomainError("rational model zeros and poles must be positive");
}

RationalModelParams builtin_params(Model m) {
    RationalModelParams p;
    p.model = m;
    p.n = 2;
    p.grid_spec = "builtin";
    switch (m) {
        case Model::dvd:
            p.nu = {0.011495, 0.19868};
            p.mu = {0.011359, 0.16728};
            p.epsilon = 5.9e-3;
            break;
        case Model::ded:
            p.nu = {0.004618, 0.09639};
            p.mu = {0.004415, 0.08397};
            p.epsilon = 1.2e-3;
            break;
        case Model::scalar:
            throw DomainError("no built-in rational model for the scalar model");
    }
    return p;
}

namespace {

// e^(y-1) - 1 is formed with expm1; far out the factors tend to 1 and are
// evaluated as (1 + (a-1) e^-d) / (1 + (b-1) e^-d).
double phi_rm_unchecked(double d, const double* nu, const double* mu, int n) {
    double phi = 1.0;
    if (d < 30.0) {
        const double em1 = std::expm1(d);
        for (int k = 0; k < n; ++k) phi *= (em1 + nu[k]) / (em1 + mu[k]);
    } else {
        const double e = std::exp(-d);
        for (int k = 0; k < n; ++k) phi *= (1.0 + (nu[k] - 1.0) * e) / (1.0 + (mu[k] - 1.0) * e);
    }
    return phi;
}

// Free parameters are log nu_1..n and log mu_1..n-1; mu_n follows from
// prod nu_k / mu_k = zeta(3), the contact limit of phi.
void unpack(const Eigen::VectorXd& x, int n, std::vector<double>& nu, std::vector<double>& mu) {
    double log_mu_n = -std::log(kZeta3);
    for (int k = 0; k < n; ++k) {
        nu[k] = std::exp(x[k]);
        log_mu_n += x[k];
    }
    for (int k = 0; k + 1 < n; ++k) {
        mu[k] = std::exp(x[n + k]);
        log_mu_n -= x[n + k];
    }
    mu[n - 1] = std::exp(log_mu_n);
}

struct RatioResiduals {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    const std::vector<PhiSample>* table;
    int n;
    int power;  // residual r is replaced by r |r|^(power-1)

    int inputs() const { return 2 * n - 1; }
    int values() const { return static_cast<int>(table->size()); }

    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
        std::vector<double> nu(n), mu(n);
        unpack(x, n, nu, mu);
        for (int i = 0; i < values(); ++i) {
            const auto& s = (*table)[i];
            const double r = phi_rm_unchecked(s.y_minus_1, nu.data(), mu.data(), n) / s.phi - 1.0;
            f[i] = power == 1 ? r : r * std::pow(std::abs(r), power - 1);
        }
        return 0;
    }
};

double max_dev_raw(const Eigen::VectorXd& x, int n, const std::vector<PhiSample>& table) {
    std::vector<double> nu(n), mu(n);
    unpack(x, n, nu, mu);
    double worst = 0.0;
    for (const auto& s : table)
        worst = std::max(worst, std::abs(s.phi / phi_rm_unchecked(s.y_minus_1, nu.data(), mu.data(), n) - 1.0));
    return std::isfinite(worst) ? worst : std::numeric_limits<double>::infinity();
}

struct Minimized {
    Eigen::VectorXd x;
    int iterations = 0;
};

Minimized minimize(Eigen::VectorXd x, const std::vector<PhiSample>& table, int n, int power,
                   int max_evaluations) {
    RatioResiduals functor{&table, n, power};
    Eigen::NumericalDiff<RatioResiduals> diff(functor);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<RatioResiduals>, double> lm(diff);
    lm.parameters.maxfev = max_evaluations;
    lm.parameters.xtol = 1e-12;
    lm.parameters.ftol = 1e-14;
    lm.minimize(x);
    return {x, static_cast<int>(lm.iter)};
}

}  // namespace

double phi_rm(double y_minus_1, const RationalModelParams& params) {
    params.validate();
    if (!(y_minus_1 >= 0.0)) throw DomainError("phi_rm requires y >= 1");
    return phi_rm_unchecked(y_minus_1, params.nu.data(), params.mu.data(), params.n);
}

double phi_u(const ReducedGeometry& red, Model m, const ModelSettings& settings) {
    return f_total(red, m, settings).value / f_single(red, m);
}

double f_approx(const ReducedGeometry& red, const RationalModelParams& params) {
    return f_single(red, params.model) * phi_rm(red.y_minus_1, params);
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0 && hi >= lo) || n < 1) throw DomainError("invalid log grid");
    if (n == 1) return {lo};
    std::vector<double> g(n);
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * i / (n - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<PhiSample> tabulate_phi(Model m, const std::vector<double>& us,
                                    const std::vector<double>& y_minus_1s,
                                    const ModelSettings& settings) {
    std::vector<PhiSample> out;
    out.reserve(us.size() * y_minus_1s.size());
    for (double u : us)
        for (double d : y_minus_1s) out.push_back({d, u, phi_u(from_gap_invariants(d, u), m, settings)});
    return out;
}

double max_deviation(const RationalModelParams& params, const std::vector<PhiSample>& table) {
    params.validate();
    if (table.empty()) throw DomainError("max_deviation needs a nonempty grid");
    double worst = 0.0;
    for (const auto& s : table) worst = std::max(worst, std::abs(s.phi / phi_rm(s.y_minus_1, params) - 1.0));
    return worst;
}

double max_deviation(const RationalModelParams& params, const std::vector<double>& us,
                     const std::vector<double>& y_minus_1s, const ModelSettings& settings) {
    return max_deviation(params, tabulate_phi(params.model, us, y_minus_1s, settings));
}

RationalModelParams refit(Model m, int n, const std::vector<PhiSample>& table, const FitOptions& options) {
    if (m == Model::scalar) throw DomainError("rational model is defined for dvd and ded only");
    if (n < 1) throw DomainError("rational model order must be >= 1");
    if (n > 4) throw DomainError("rational model order must be <= 4");
    if (static_cast<int>(table.size()) < 2 * n + 1) throw DomainError("too few samples for the fit");
    if (options.starts < 1) throw DomainError("at least one start is required");

    std::mt19937_64 rng(options.seed);
    std::uniform_real_distribution<double> log_nu(std::log(1e-3), std::log(0.5));
    std::normal_distribution<double> jitter(0.0, 0.1);
    const double ratio = std::log(kZeta3) / n;

    Eigen::VectorXd best;
    double best_dev = std::numeric_limits<double>::infinity();
    int iterations = 0;
    for (int s = 0; s < options.starts; ++s) {
        Eigen::VectorXd x(2 * n - 1);
        for (int k = 0; k < n; ++k) x[k] = log_nu(rng);
        for (int k = 0; k + 1 < n; ++k) x[n + k] = x[k] - ratio + jitter(rng);
        for (int power : {1, 3, 7}) {
            const Minimized r = minimize(x, table, n, power, options.max_evaluations);
            iterations += r.iterations;
            if (!r.x.allFinite()) break;
            x = r.x;
            const double dev = max_dev_raw(x, n, table);
            if (dev < best_dev) {
                best_dev = dev;
                best = x;
            }
        }
    }
    if (!std::isfinite(best_dev)) throw FitError("rational model fit did not converge", best_dev, iterations);

    RationalModelParams p;
    p.model = m;
    p.n = n;
    p.nu.resize(n);
    p.mu.resize(n);
    unpack(best, n, p.nu, p.mu);
    p.epsilon = best_dev;
    p.seed = options.seed;
    return p;
}

RationalModelParams refit(Model m, double u_ref, int n, const std::vector<double>& y_minus_1s,
                          const ModelSettings& settings, const FitOptions& options) {
    if (y_minus_1s.size() < 50) throw DomainError("fit grid needs at least 50 points");
    auto p = refit(m, n, tabulate_phi(m, {u_ref}, y_minus_1s, settings), options);
    p.grid_spec = "u=" + std::to_string(u_ref) + ";log:" + std::to_string(y_minus_1s.front()) + ":" +
                  std::to_string(y_minus_1s.back()) + ":" + std::to_string(y_minus_1s.size());
    return p;
}

void to_json(nlohmann::json& j, const RationalModelParams& p) {
    j = nlohmann::json{{"model", to_string(p.model)}, {"n", p.n},         {"nu", p.nu},
                       {"mu", p.mu},                  {"grid_spec", p.grid_spec}, {"seed", p.seed}};
    j["epsilon"] = p.epsilon >= 0.0 ? nlohmann::json(p.epsilon) : nlohmann::json(nullptr);
}

void from_json(const nlohmann::json& j, RationalModelParams& p) {
    p.model = parse_model(j.at("model").get<std::string>());
    p.n = j.at("n").get<int>();
    p.nu = j.at("nu").get<std::vector<double>>();
    p.mu = j.at("mu").get<std::vector<double>>();
    p.epsilon = j.contains("epsilon") && !j["epsilon"].is_null() ? j["epsilon"].get<double>() : -1.0;
    p.grid_spec = j.value("grid_spec", std::string{});
    p.seed = j.value("seed", std::uint64_t{0});
    p.validate();
}

}  // namespace casimir
