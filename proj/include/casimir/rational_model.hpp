#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "casimir/models.hpp"

namespace casimir {

/// phi_rm(y) = prod_k (e^(y-1) + nu_k - 1) / (e^(y-1) + mu_k - 1).
struct RationalModelParams {
    Model model = Model::ded;
    int n = 2;
    std::vector<double> nu;
    std::vector<double> mu;
    double epsilon = -1.0;       ///< achieved max deviation, negative if unknown
    std::string grid_spec;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Built-in n = 2 parameters for the DvD and ded models.
RationalModelParams builtin_params(Model m);

double phi_rm(double y_minus_1, const RationalModelParams& params);

/// f_total / f_single.
double phi_u(const ReducedGeometry& red, Model m, const ModelSettings& settings = {});

/// f_single * phi_rm.
double f_approx(const ReducedGeometry& red, const RationalModelParams& params);

/// n log-spaced values between lo and hi inclusive.
std::vector<double> log_grid(double lo, double hi, int n);

struct PhiSample {
    double y_minus_1;
    double u;
    double phi;
};

/// phi_u on the product grid us x y_minus_1s, in that nesting order.
std::vector<PhiSample> tabulate_phi(Model m, const std::vector<double>& us,
                                    const std::vector<double>& y_minus_1s,
                                    const ModelSettings& settings = {});

/// max |phi / phi_rm - 1| over tabulated samples.
double max_deviation(const RationalModelParams& params, const std::vector<PhiSample>& table);

/// Same, evaluating phi_u on the grid first.
double max_deviation(const RationalModelParams& params, const std::vector<double>& us,
                     const std::vector<double>& y_minus_1s, const ModelSettings& settings = {});

struct FitOptions {
    int starts = 12;             ///< random initializations
    std::uint64_t seed = 1;
    int max_evaluations = 4000;  ///< per start
};

/// Least-squares fit of phi_rm / phi - 1 in log parameters, followed by a
/// minimax refinement, with prod nu_k / mu_k held at zeta(3). The returned
/// epsilon is the max deviation over the fitted table.
RationalModelParams refit(Model m, int n, const std::vector<PhiSample>& table,
                          const FitOptions& options = {});

/// Tabulates phi at u_ref and fits.
RationalModelParams refit(Model m, double u_ref, int n, const std::vector<double>& y_minus_1s,
                          const ModelSettings& settings = {}, const FitOptions& options = {});

void to_json(nlohmann::json& j, const RationalModelParams& p);
void from_json(const nlohmann::json& j, RationalModelParams& p);

}  // namespace casimir
