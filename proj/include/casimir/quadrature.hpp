#pragma once

#include <cstdint>
#include <vector>

namespace casimir {

struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
    std::size_t size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [0, 1].
Rule1D gauss_legendre_unit(int n);

/// First 2^m points of the Sobol sequence in `dim` dimensions (origin
/// included), stored as 64-bit digits, row-major.
class SobolNet {
public:
    SobolNet(int dim, int log2_points);

    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return count_; }
    const std::uint64_t* point(std::size_t i) const { return digits_.data() + i * dim_; }

private:
    int dim_;
    std::size_t count_;
    std::vector<std::uint64_t> digits_;
};

/// Random digital shifts (XOR scrambling of the Sobol digits), one per
/// replicate, drawn from a seeded mt19937_64 so results are reproducible.
class DigitalShifts {
public:
    DigitalShifts(int dim, int replicates, std::uint64_t seed, std::uint64_t stream);

    int replicates() const noexcept { return replicates_; }
    /// Maps a net point to (0, 1)^dim under replicate k's shift.
    void apply(const std::uint64_t* digits, int replicate, double* out) const;

private:
    int dim_;
    int replicates_;
    std::vector<std::uint64_t> shifts_;
};

/// Mean and standard error over independent randomized-QMC replicates.
struct ReplicateStats {
    double mean;
    double std_error;
};
ReplicateStats replicate_stats(const std::vector<double>& estimates);

/// Integer log2 of a power of two; throws DomainError otherwise.
int exact_log2(long n);

}  // namespace casimir
