#include "casimir/dielectric_electrolyte.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "casimir/errors.hpp"
#include "casimir/quadrature.hpp"
#include "casimir/scalar_model.hpp"

namespace casimir {

void QuadratureSettings::validate() const {
    if (nodes_per_dim < 2) throw DomainError("nodes_per_dim must be >= 2");
    if (qmc_points < (1L << 10)) throw DomainError("qmc_points must be >= 2^10");
    exact_log2(qmc_points);
    if (replicates < 2 || qmc_points % replicates != 0) throw DomainError("bad replicate count");
    exact_log2(qmc_points / replicates);
    if (dim_switch < 1) throw DomainError("dim_switch must be >= 1");
    if (map_exponent < 1) throw DomainError("map_exponent must be >= 1");
    if (!(max_rel_error > 0.0)) throw DomainError("max_rel_error must be > 0");
}

namespace {

void require_valid(const ReducedGeometry& red) {
    if (!(red.y_minus_1 > 0.0)) throw DomainError("dielectric model requires y > 1");
}

// Integrand of the combined subset expansion at unit-cube point s.
class RingIntegrand {
public:
    RingIntegrand(std::vector<double> couplings, int map_exponent)
        : c_(std::move(couplings)), p_(map_exponent), h_(c_.size()) {}

    int dim() const { return static_cast<int>(c_.size()); }

    // Returns the integrand; `weight` receives the measure factor alone.
    double operator()(const double* s, double& weight) {
        double w = 1.0;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            const double v = 1.0 - s[i];
            const double vp1 = std::pow(v, p_ - 1);
            const double t = 1.0 - vp1 * v;
            w *= 2.0 * t * p_ * vp1;
            h_[i] = c_[i] * t;
        }
        weight = w;
        return w * ring_signed_subset_sum(c_, h_);
    }

private:
    std::vector<double> c_;
    int p_;
    std::vector<double> h_;
};

double tensor_gauss_legendre(RingIntegrand& f, int nodes) {
    const int d = f.dim();
    const Rule1D rule = gauss_legendre_unit(nodes);
    std::vector<int> idx(d, 0);
    std::vector<double> s(d);
    double sum = 0.0;
    for (;;) {
        double wq = 1.0;
        for (int k = 0; k < d; ++k) {
            s[k] = rule.nodes[idx[k]];
            wq *= rule.weights[idx[k]];
        }
        double w;
        sum += wq * f(s.data(), w);
        int k = 0;
        while (k < d && ++idx[k] == nodes) idx[k++] = 0;
        if (k == d) break;
    }
    return sum;
}

Estimate integrate_gauss_legendre(RingIntegrand& f, const QuadratureSettings& st) {
    // one or two couplings are cheap; near contact they need the extra nodes
    const int nodes = f.dim() <= 2 ? 4 * st.nodes_per_dim : st.nodes_per_dim;
    const int coarse = std::max(2, (2 * nodes + 2) / 3);
    const double fine = tensor_gauss_legendre(f, nodes);
    const double rough = tensor_gauss_legendre(f, coarse);
    return {fine, std::abs(fine - rough)};
}

// Randomized QMC with the measure factor as control variate (its integral
// is exactly 1); the coefficient is the least-squares fit over all samples.
Estimate integrate_rqmc(RingIntegrand& f, const QuadratureSettings& st, std::uint64_t stream) {
    const int d = f.dim();
    const long per_rep = st.qmc_points / st.replicates;
    const SobolNet net(d, exact_log2(per_rep));
    const DigitalShifts shifts(d, st.replicates, st.seed, stream);

    std::vector<double> mean_f(st.replicates, 0.0), mean_w(st.replicates, 0.0);
    double sf = 0.0, sw = 0.0, sfw = 0.0, sww = 0.0;
    std::vector<double> s(d);
    for (int k = 0; k < st.replicates; ++k) {
        for (std::size_t i = 0; i < net.size(); ++i) {
            shifts.apply(net.point(i), k, s.data());
            double w;
            const double v = f(s.data(), w);
            mean_f[k] += v;
            mean_w[k] += w;
            sf += v;
            sw += w;
            sfw += v * w;
            sww += w * w;
        }
        mean_f[k] /= static_cast<double>(per_rep);
        mean_w[k] /= static_cast<double>(per_rep);
    }
    const double total = static_cast<double>(per_rep) * st.replicates;
    const double var_w = sww / total - (sw / total) * (sw / total);
    const double cov = sfw / total - (sf / total) * (sw / total);
    const double beta = var_w > 0.0 ? cov / var_w : 0.0;
    std::vector<double> est(st.replicates);
    for (int k = 0; k < st.replicates; ++k) est[k] = mean_f[k] - beta * (mean_w[k] - 1.0);
    const auto stats = replicate_stats(est);
    return {stats.mean, 3.0 * stats.std_error};
}

}  // namespace

double f1_ded(const ReducedGeometry& red) {
    require_valid(red);
    const double y = red.y;
    const double y2m1 = red.y_minus_1 * (2.0 + red.y_minus_1);
    if (red.plane) return 0.25 * y * (1.0 / y2m1 + std::log1p(-1.0 / (y * y)));

    const double z = red.z;
    const double sc = y / (4.0 * y2m1);
    const double yz = y * z + 0.5;
    // log[z^2 (y^2-1) / (yz + 1/2)^2] = log1p(-(z^2 + yz + 1/4) / (yz + 1/2)^2)
    const double geometric = z / 12.0 * std::log1p(-(z * z + y * z + 0.25) / (yz * yz));
    double spheres = 0.0;
    for (double alpha : {red.alpha1, red.alpha2}) {
        const double a = 2.0 * y * y + alpha * y - 1.0;
        spheres += std::pow(alpha, -1.5) * 2.0 * std::atanh(std::sqrt(alpha * z) / a);
    }
    return sc + geometric + spheres / (12.0 * std::sqrt(z));
}

namespace {

Estimate roundtrip_unchecked(const ReducedGeometry& red, int r, const QuadratureSettings& settings) {
    const int n = ring_size(red, r);
    if (n > 24) throw DomainError("f_ded_roundtrip supports rings of at most 24 reflections");
    RingIntegrand integrand(ring_couplings(red, r), settings.map_exponent);
    const Estimate raw = n <= settings.dim_switch
                             ? integrate_gauss_legendre(integrand, settings)
                             : integrate_rqmc(integrand, settings,
                                              static_cast<std::uint64_t>(n) * 1000u + r);
    const double pref = ring_prefactor(red, r);
    return {pref * raw.value, pref * raw.error};
}

}  // namespace

Estimate f_ded_roundtrip(const ReducedGeometry& red, int r, const QuadratureSettings& settings) {
    require_valid(red);
    settings.validate();
    const Estimate out = roundtrip_unchecked(red, r, settings);
    if (!(out.error <= settings.max_rel_error * std::abs(out.value)))
        throw QuadratureError("round trip r=" + std::to_string(r) +
                                  ": error estimate exceeds requested accuracy",
                              out.value, out.error);
    return out;
}

namespace {

// sum_{k >= 1} rho q^k f_sc^(r_last + k)
double geometric_tail(const ReducedGeometry& red, int r_last, double rho, double q) {
    double tail = 0.0;
    double weight = rho;
    for (long r = r_last + 1; r < r_last + 100000; ++r) {
        weight *= q;
        const double term = weight * f_sc_roundtrip(red, r);
        tail += term;
        if (term <= 1e-17 * tail || weight == 0.0) break;
    }
    return tail;
}

void check_total(const TotalEstimate& t, const QuadratureSettings& settings) {
    if (!(t.error <= settings.max_rel_error * std::abs(t.value)))
        throw QuadratureError("total free energy: error estimate exceeds requested accuracy", t.value,
                              t.error);
}

}  // namespace

TotalEstimate f_ded_total(const ReducedGeometry& red, double tol, int r_max,
                          const QuadratureSettings& settings) {
    require_valid(red);
    if (!(tol > 0.0 && tol < 1.0)) throw DomainError("tolerance must lie in (0, 1)");
    if (r_max < 1) throw DomainError("r_max must be >= 1");

    settings.validate();

    TotalEstimate total;
    total.value = f1_ded(red);
    std::vector<double> rho{0.0, total.value / f_sc_roundtrip(red, 1)};
    std::vector<double> rho_rel_err{0.0, 0.0};
    for (int r = 2; r <= r_max; ++r) {
        const Estimate e = roundtrip_unchecked(red, r, settings);
        total.value += e.value;
        total.error += e.error;
        total.rounds = r;
        rho.push_back(e.value / f_sc_roundtrip(red, r));
        rho_rel_err.push_back(e.value != 0.0 ? std::abs(e.error / e.value) : 1.0);
        if (std::abs(e.value) < tol * std::abs(total.value)) {
            // later terms decay at least as fast as the scalar ones
            const double q = std::exp(-red.varpi);
            total.error += std::abs(e.value) * q / (1.0 - q);
            check_total(total, settings);
            return total;
        }
    }

    // rho decays roughly geometrically once r exceeds a few round trips;
    // the ratio of the last two values extrapolates it, and the drift of
    // that ratio sets the uncertainty
    const int n = total.rounds;
    double tail_error;
    if (n == 1) {
        total.tail = rho[1] * f_sc_tail(red, 1, 1e-10);
        tail_error = total.tail;
    } else {
        const double q = std::clamp(rho[n] / rho[n - 1], 0.0, 1.0);
        total.tail = geometric_tail(red, n, rho[n], q);
        const double q_prev = n >= 3 ? std::clamp(rho[n - 1] / rho[n - 2], 0.0, 1.0) : 1.0;
        const double q_next = q_prev > 0.0 ? std::clamp(q * q / q_prev, 0.0, 1.0) : 0.0;
        tail_error = std::abs(total.tail - geometric_tail(red, n, rho[n], q_next));
        // quadrature noise in the last two ratios
        const double dq = q * std::min(1.0, rho_rel_err[n] + rho_rel_err[n - 1]);
        tail_error += std::abs(geometric_tail(red, n, rho[n], std::min(1.0, q + dq)) - total.tail) +
                      rho_rel_err[n] * total.tail;
    }
    total.value += total.tail;
    const double quad_error = total.error;
    total.error += tail_error;
    total.degraded = red.y_minus_1 < 0.05 && tail_error > quad_error;
    check_total(total, settings);
    return total;
}

double f_ded_dipole(const ReducedGeometry& red) {
    require_valid(red);
    const double y3 = red.y * red.y * red.y;
    return red.plane ? 1.0 / (8.0 * y3) : 3.0 / (32.0 * y3);
}

}  // namespace casimir
