#include "casimir/round_trip_matrix.hpp"

#include <array>
#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir {

int ring_size(const ReducedGeometry& red, int r) {
    if (r < 1) throw DomainError("round-trip order must be >= 1");
    return red.plane ? r : 2 * r;
}

std::vector<double> ring_couplings(const ReducedGeometry& red, int r) {
    const int n = ring_size(red, r);
    if (red.plane) return std::vector<double>(n, 0.5 / red.y);
    const double c1 = red.radius1_over_distance();
    const double c2 = red.radius2_over_distance();
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = (i % 2 == 0) ? c1 : c2;
    return c;
}

double ring_prefactor(const ReducedGeometry& red, int r) {
    if (r < 1) throw DomainError("round-trip order must be >= 1");
    const double base = red.plane ? 2.0 * red.y : red.z;
    return std::pow(base, -r) / (4.0 * r);
}

Eigen::MatrixXd periodic_tridiagonal(std::span<const double> h, int sigma) {
    const auto n = static_cast<Eigen::Index>(h.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Eigen::Index j = (i + 1) % n;
        const double v = (i == n - 1 ? sigma : 1) * h[i];
        m(i, j) += v;
        m(j, i) += v;
    }
    return m;
}

Eigen::MatrixXd round_trip_matrix(const RoundTripMatrixSpec& spec, const ReducedGeometry& red) {
    const int n = ring_size(red, spec.r);
    if (static_cast<int>(spec.t.size()) != n)
        throw DomainError("round-trip matrix needs " + std::to_string(n) + " couplings");
    if (spec.sigma != 1 && spec.sigma != -1) throw DomainError("sigma must be +1 or -1");
    const auto c = ring_couplings(red, spec.r);
    std::vector<double> h(n);
    for (int i = 0; i < n; ++i) {
        if (!(spec.t[i] >= 0.0 && spec.t[i] <= 1.0))
            throw DomainError("couplings t_i must lie in [0, 1]");
        h[i] = spec.t[i] * c[i];
    }
    return periodic_tridiagonal(h, spec.sigma);
}

double det_roundtrip_matrix(const RoundTripMatrixSpec& spec, const ReducedGeometry& red) {
    return round_trip_matrix(spec, red).partialPivLu().determinant();
}

namespace {

// 2x2 product T_k ... T_1 with T_k = [[1, -b_{k-1}^2], [1, 0]], b_0 = b_n.
struct Transfer {
    double p00 = 1.0, p01 = 0.0, p10 = 0.0, p11 = 1.0;

    Transfer step(double b) const {
        const double b2 = b * b;
        return {p00 - b2 * p10, p01 - b2 * p11, p00, p01};
    }
    double trace() const { return p00 + p11; }
};

// det = tr(T_n ... T_1) + (-1)^(n+1) 2 sigma prod(h)
double sigma_pair(double trace, double prod) {
    const double cyc = 2.0 * std::abs(prod);
    return 1.0 / (trace - cyc) + 1.0 / (trace + cyc);
}

struct SubsetWalker {
    // couplings in transfer order: h_n first, then h_1 .. h_{n-1}
    std::array<double, 64> fixed{};
    std::array<double, 64> free{};
    int n = 0;

    double walk(int depth, const Transfer& t, double prod) const {
        if (depth == n) return sigma_pair(t.trace(), prod);
        const double a = walk(depth + 1, t.step(fixed[depth]), prod * fixed[depth]);
        const double b = walk(depth + 1, t.step(free[depth]), prod * free[depth]);
        return a - b;
    }
};

}  // namespace

double det_periodic_tridiagonal_transfer(std::span<const double> h, int sigma) {
    const auto n = h.size();
    if (n == 0) return 1.0;
    Transfer t;
    t = t.step(h[n - 1]);
    double prod = h[n - 1];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        t = t.step(h[i]);
        prod *= h[i];
    }
    const double sign = (n % 2 == 1) ? 1.0 : -1.0;
    return t.trace() + sign * 2.0 * sigma * prod;
}

double ring_signed_subset_sum(std::span<const double> h_fixed, std::span<const double> h_free) {
    const auto n = h_fixed.size();
    if (n == 0 || n != h_free.size() || n > 64)
        throw DomainError("ring size must be in [1, 64] with matching coupling sets");
    SubsetWalker w;
    w.n = static_cast<int>(n);
    w.fixed[0] = h_fixed[n - 1];
    w.free[0] = h_free[n - 1];
    for (std::size_t i = 0; i + 1 < n; ++i) {
        w.fixed[i + 1] = h_fixed[i];
        w.free[i + 1] = h_free[i];
    }
    return w.walk(0, Transfer{}, 1.0);
}

double ring_sigma_sum(std::span<const double> h) {
    const double plus = det_periodic_tridiagonal_transfer(h, 1);
    const double minus = det_periodic_tridiagonal_transfer(h, -1);
    return 1.0 / plus + 1.0 / minus;
}

}  // namespace casimir
