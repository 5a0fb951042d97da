#include "casimir/quadrature.hpp"

#include <gsl/gsl_integration.h>

#include <boost/random/sobol.hpp>
#include <cmath>
#include <memory>
#include <random>

#include "casimir/errors.hpp"

namespace casimir {

Rule1D gauss_legendre_unit(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre order must be >= 1");
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>
        table(gsl_integration_glfixed_table_alloc(static_cast<size_t>(n)),
              &gsl_integration_glfixed_table_free);
    Rule1D rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i)
        gsl_integration_glfixed_point(0.0, 1.0, static_cast<size_t>(i), &rule.nodes[i],
                                      &rule.weights[i], table.get());
    return rule;
}

SobolNet::SobolNet(int dim, int log2_points)
    : dim_(dim), count_(std::size_t{1} << log2_points) {
    if (dim < 1) throw DomainError("Sobol dimension must be >= 1");
    if (log2_points < 0 || log2_points > 30) throw DomainError("Sobol size out of range");
    digits_.assign(count_ * dim_, 0);
    // boost's engine starts at the second point of the sequence; slot 0 is the origin
    boost::random::sobol engine(static_cast<std::size_t>(dim));
    for (std::size_t i = 1; i < count_; ++i)
        for (int d = 0; d < dim_; ++d) digits_[i * dim_ + d] = engine();
}

DigitalShifts::DigitalShifts(int dim, int replicates, std::uint64_t seed, std::uint64_t stream)
    : dim_(dim), replicates_(replicates), shifts_(static_cast<std::size_t>(dim) * replicates) {
    if (replicates < 2) throw DomainError("need at least two QMC replicates");
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    std::mt19937_64 rng(seq);
    for (auto& s : shifts_) s = rng();
}

void DigitalShifts::apply(const std::uint64_t* digits, int replicate, double* out) const {
    const std::uint64_t* shift = shifts_.data() + static_cast<std::size_t>(replicate) * dim_;
    for (int d = 0; d < dim_; ++d) {
        const std::uint64_t v = (digits[d] ^ shift[d]) >> 11;
        out[d] = (static_cast<double>(v) + 0.5) * 0x1.0p-53;
    }
}

ReplicateStats replicate_stats(const std::vector<double>& estimates) {
    const double k = static_cast<double>(estimates.size());
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= k;
    double var = 0.0;
    for (double e : estimates) var += (e - mean) * (e - mean);
    var /= (k - 1.0);
    return {mean, std::sqrt(var / k)};
}

int exact_log2(long n) {
    if (n < 1 || (n & (n - 1)) != 0) throw DomainError("point count must be a power of two");
    int m = 0;
    while ((1L << m) < n) ++m;
    return m;
}

}  // namespace casimir
