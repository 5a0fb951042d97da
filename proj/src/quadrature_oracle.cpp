#include "casimir/quadrature_oracle.hpp"

#include <gsl/gsl_cdf.h>
#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"

namespace casimir::validation {

void ReflectionModel::validate() const {
    if (multipole_cutoff < 1) throw DomainError("multipole cutoff must be >= 1");
}

void OracleSettings::validate() const {
    if (!(rel_tol > 0.0)) throw DomainError("oracle tolerance must be positive");
    if (replicates < 2 || qmc_points % replicates != 0) throw DomainError("bad replicate count");
    exact_log2(qmc_points / replicates);
}

namespace {

// cosh(chi) + 2 (cosh(chi) - 1)/chi^2 - 2 sinh(chi)/chi, series for small chi
double dielectric_bracket(double chi) {
    if (chi < 0.5) {
        const double x2 = chi * chi;
        double term = 1.0, sum = 0.0;
        for (int l = 1; l <= 12; ++l) {
            term *= x2 / ((2.0 * l - 1.0) * (2.0 * l));
            sum += term * l / (l + 1.0);
        }
        return sum;
    }
    return std::cosh(chi) + 2.0 * (std::cosh(chi) - 1.0) / (chi * chi) - 2.0 * std::sinh(chi) / chi;
}

// kernel(chi) / (2 cosh chi), finite for any chi
double kernel_over_2cosh(ReflectionKind kind, double chi) {
    chi = std::abs(chi);
    const double sech = 1.0 / std::cosh(chi);
    switch (kind) {
        case ReflectionKind::scalar:
            return 0.5;
        case ReflectionKind::drude_vacuum:
            return 0.5 * (1.0 - sech);
        case ReflectionKind::dielectric_electrolyte:
            if (chi < 0.5) return -0.5 * dielectric_bracket(chi) * sech;
            return -0.5 * (1.0 + 2.0 * (1.0 - sech) / (chi * chi) - 2.0 * std::tanh(chi) / chi);
    }
    return 0.0;
}

// The reflections of one round trip sequence: kappa_i = 2 R_i / L for each
// sphere hit; the plane case is mapped onto a sphere and its mirror image.
struct Ring {
    std::vector<double> kappa;
    double wall = 1.0;  // product of plane reflection coefficients
    double prefactor = 0.0;
};

Ring make_ring(const ReflectionModel& model, const ReducedGeometry& red, int r) {
    Ring ring;
    if (red.plane) {
        ring.kappa.assign(r, 1.0 / red.y);
        ring.wall = std::pow(plane_reflection(model), r);
    } else {
        const double k1 = 2.0 * red.radius1_over_distance();
        const double k2 = 2.0 * red.radius2_over_distance();
        for (int j = 0; j < r; ++j) {
            ring.kappa.push_back(k1);
            ring.kappa.push_back(k2);
        }
    }
    ring.prefactor = 1.0 / (2.0 * r);
    for (double k : ring.kappa) ring.prefactor *= k / (2.0 * std::numbers::pi);
    return ring;
}

// Quadratic form x^T A x = sum x_i^2 - sum s_i kappa_i x_i x_{i+1} (cyclic)
// with s = (+, ..., +, sigma).
Eigen::MatrixXd gaussian_form(const std::vector<double>& kappa, int sigma) {
    const auto n = static_cast<Eigen::Index>(kappa.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j = (i + 1) % n;
        const double v = -0.5 * (i == n - 1 ? sigma : 1) * kappa[i];
        a(i, j) += v;
        a(j, i) += v;
    }
    return a;
}

// Maps standard coordinates (weight exp(-|u|^2)) to x with weight
// exp(-x^T A x); returns the map and 1/sqrt(det A).
struct GaussianMap {
    Eigen::MatrixXd map;
    double inv_sqrt_det;
};

GaussianMap gaussian_map(const Eigen::MatrixXd& a) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    const Eigen::VectorXd lambda = eig.eigenvalues();
    if (!(lambda.minCoeff() > 0.0))
        throw QuadratureError("plane-wave integral diverges: spheres overlap", 0.0, INFINITY);
    GaussianMap g;
    g.map = eig.eigenvectors() * lambda.cwiseSqrt().cwiseInverse().asDiagonal();
    g.inv_sqrt_det = 1.0 / std::sqrt(lambda.prod());
    return g;
}

// The sign patterns of exp(sum s_i chi_i) fall into two classes related by
// flipping coordinates; their sizes weight the two Gaussian forms.
double class_size(int n) { return n == 1 ? 1.0 : std::ldexp(1.0, n - 1); }

class Integrand {
public:
    Integrand(ReflectionKind kind, const Ring& ring) : kind_(kind), ring_(ring) {}

    // x and y hold the n coordinates of each transverse component.
    double operator()(const double* x, const double* y) const {
        const std::size_t n = ring_.kappa.size();
        double g = ring_.wall;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = (i + 1) % n;
            const double chi = ring_.kappa[i] * (x[i] * x[j] + y[i] * y[j]);
            g *= kernel_over_2cosh(kind_, chi);
        }
        return g;
    }

private:
    ReflectionKind kind_;
    const Ring& ring_;
};

// log(2 cosh x) without overflow
double log_2cosh(double x) {
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x));
}

// One round trip: every reflection couples the same bilinear form
// b = x1 x2 + y1 y2 (b = x1^2 + y1^2 for a single reflection), and the
// Gaussian integral over the transverse planes collapses by rotational
// symmetry to a Laplace-type integral over b:
//   two reflections: pi^2 int_0^inf e^-p F(p/2) dp    (F even)
//   one reflection:  pi   int_0^inf e^-s F(s)   ds
struct SingleTrip {
    ReflectionKind kind;
    const Ring* ring;
};

double single_trip_integrand(double p, void* params) {
    const auto* st = static_cast<const SingleTrip*>(params);
    const auto& kappa = st->ring->kappa;
    const double b = kappa.size() == 2 ? 0.5 * p : p;
    double g = st->ring->wall;
    double log_scale = -p;
    for (double k : kappa) {
        const double chi = k * b;
        g *= kernel_over_2cosh(st->kind, chi);
        log_scale += log_2cosh(chi);
    }
    return g * std::exp(log_scale);
}

OracleResult single_trip_total(ReflectionKind kind, const Ring& ring, double rel_tol) {
    SingleTrip st{kind, &ring};
    gsl_function fn{&single_trip_integrand, &st};
    constexpr std::size_t limit = 2000;
    gsl_integration_workspace* ws = gsl_integration_workspace_alloc(limit);
    double value = 0.0, error = 0.0;
    gsl_error_handler_t* old = gsl_set_error_handler_off();
    const int status = gsl_integration_qagiu(&fn, 0.0, 0.0, rel_tol, limit, ws, &value, &error);
    gsl_set_error_handler(old);
    gsl_integration_workspace_free(ws);
    if (status != 0 && !(error <= 1e3 * rel_tol * std::abs(value)))
        throw QuadratureError("plane-wave oracle: adaptive quadrature failed", value, error);
    const double angular = ring.kappa.size() == 2 ? std::numbers::pi * std::numbers::pi : std::numbers::pi;
    return {angular * value, angular * error};
}

OracleResult qmc_total(const Integrand& f, const Ring& ring, const OracleSettings& st) {
    const int n = static_cast<int>(ring.kappa.size());
    const long per_rep = st.qmc_points / st.replicates;
    const SobolNet net(2 * n, exact_log2(per_rep));
    const double pi_n = std::pow(std::numbers::pi, n);

    std::vector<GaussianMap> maps;
    for (int sigma : {1, -1}) maps.push_back(gaussian_map(gaussian_form(ring.kappa, sigma)));

    std::vector<double> est(st.replicates, 0.0);
    for (int s = 0; s < 2; ++s) {
        const DigitalShifts shifts(2 * n, st.replicates, st.seed, static_cast<std::uint64_t>(s));
        const GaussianMap& gm = maps[s];
        std::vector<double> cube(2 * n);
        Eigen::VectorXd ux(n), uy(n);
        for (int k = 0; k < st.replicates; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < net.size(); ++i) {
                shifts.apply(net.point(i), k, cube.data());
                for (int d = 0; d < n; ++d) {
                    ux[d] = gsl_cdf_ugaussian_Pinv(cube[d]) * std::numbers::sqrt2 / 2.0;
                    uy[d] = gsl_cdf_ugaussian_Pinv(cube[n + d]) * std::numbers::sqrt2 / 2.0;
                }
                const Eigen::VectorXd x = gm.map * ux;
                const Eigen::VectorXd y = gm.map * uy;
                sum += f(x.data(), y.data());
            }
            est[k] += class_size(n) * pi_n * gm.inv_sqrt_det * gm.inv_sqrt_det * sum /
                      static_cast<double>(per_rep);
        }
    }
    const auto stats = replicate_stats(est);
    return {stats.mean, 3.0 * stats.std_error};
}

}  // namespace

double reflection_tm(const ReflectionModel& model, double chi) {
    if (!(chi >= 0.0)) throw DomainError("chi must be >= 0");
    switch (model.kind) {
        case ReflectionKind::scalar:
            return std::cosh(chi);
        case ReflectionKind::drude_vacuum:
            return chi < 0.5 ? 2.0 * std::pow(std::sinh(0.5 * chi), 2) : std::cosh(chi) - 1.0;
        case ReflectionKind::dielectric_electrolyte:
            return -dielectric_bracket(chi);
    }
    return 0.0;
}

double reflection_tm_series(const ReflectionModel& model, double chi) {
    model.validate();
    if (!(chi >= 0.0)) throw DomainError("chi must be >= 0");
    const double x2 = chi * chi;
    double term = 1.0;  // chi^(2l) / (2l)!
    double sum = model.kind == ReflectionKind::scalar ? 1.0 : 0.0;
    for (int l = 1; l <= model.multipole_cutoff; ++l) {
        term *= x2 / ((2.0 * l - 1.0) * (2.0 * l));
        const double a = model.kind == ReflectionKind::dielectric_electrolyte ? -l / (l + 1.0) : 1.0;
        sum += a * term;
    }
    return sum;
}

double plane_reflection(const ReflectionModel& model) {
    return model.kind == ReflectionKind::dielectric_electrolyte ? -1.0 : 1.0;
}

OracleResult f_roundtrip_planewave(const ReflectionModel& model, const ReducedGeometry& red, int r,
                                   const OracleSettings& settings) {
    model.validate();
    settings.validate();
    if (r != 1 && r != 2) throw DomainError("plane-wave oracle supports r = 1 and r = 2 only");
    if (!(red.y_minus_1 > 0.0)) throw DomainError("plane-wave oracle requires y > 1");

    const Ring ring = make_ring(model, red, r);
    double coupling = 0.0;
    for (std::size_t i = 0; i < ring.kappa.size(); ++i)
        coupling = std::max(coupling, 0.5 * (ring.kappa[i] + ring.kappa[(i + 1) % ring.kappa.size()]));
    if (!(coupling < 1.0)) throw QuadratureError("plane-wave integral diverges", 0.0, INFINITY);

    if (r == 1) {
        const OracleResult q = single_trip_total(model.kind, ring, settings.rel_tol);
        return {ring.prefactor * q.value, ring.prefactor * q.error};
    }
    const Integrand f(model.kind, ring);
    const OracleResult q = qmc_total(f, ring, settings);
    return {ring.prefactor * q.value, ring.prefactor * q.error};
}

}  // namespace casimir::validation
