#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "casimir/geometry.hpp"

namespace casimir {

/// Order r, couplings t and sign sigma of the periodic tridiagonal matrix
/// that represents r round trips after the Gaussian integrals are done.
///
/// Two spheres: 2r couplings, the odd ones (1-based) at sphere 1 and the even
/// ones at sphere 2. Plane case: the plane acts as a mirror, only the r
/// reflections on the sphere remain and the matrix is r x r.
struct RoundTripMatrixSpec {
    int r = 1;
    std::vector<double> t;
    int sigma = 1;
};

/// Number of reflections carrying a coupling: 2r, or r for a plane.
int ring_size(const ReducedGeometry& red, int r);

/// Coupling amplitudes c_i such that the off-diagonal entries are t_i c_i:
/// R1/L and R2/L alternating for two spheres, 1/(2y) for the plane case.
std::vector<double> ring_couplings(const ReducedGeometry& red, int r);

/// Prefactor p_r with f^(r) = p_r * sum_sigma <measure>[1 / det M^sigma]:
/// z^-r / (4r) for two spheres, (2y)^-r / (4r) for the plane case.
double ring_prefactor(const ReducedGeometry& red, int r);

/// Unit-diagonal symmetric periodic tridiagonal matrix with off-diagonals
/// h_1..h_{n-1} and corner sigma * h_n. Entries that land on the same
/// element (n <= 2) add up.
Eigen::MatrixXd periodic_tridiagonal(std::span<const double> h, int sigma);

/// Dense round-trip matrix for a spec; throws DomainError for t_i outside
/// [0, 1], |sigma| != 1 or a wrong number of couplings.
Eigen::MatrixXd round_trip_matrix(const RoundTripMatrixSpec& spec, const ReducedGeometry& red);

/// det M^sigma_r(t) by dense LU.
double det_roundtrip_matrix(const RoundTripMatrixSpec& spec, const ReducedGeometry& red);

/// Determinant of periodic_tridiagonal(h, sigma) from the trace of the
/// product of 2x2 transfer matrices, O(n).
double det_periodic_tridiagonal_transfer(std::span<const double> h, int sigma);

/// Signed subset sum over a ring of n couplings:
///   sum_{S} (-1)^{n-|S|} sum_{sigma=+-1} 1 / det M^sigma(h^S),
/// with h^S_i = h_fixed[i] for i in S and h_free[i] otherwise.
/// Uses prefix sharing of the transfer-matrix product: O(2^n) work.
double ring_signed_subset_sum(std::span<const double> h_fixed, std::span<const double> h_free);

/// sum_{sigma=+-1} 1 / det M^sigma(h).
double ring_sigma_sum(std::span<const double> h);

}  // namespace casimir
