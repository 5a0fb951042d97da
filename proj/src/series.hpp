#pragma once

#include <cmath>
#include <string>

#include "casimir/errors.hpp"

namespace casimir::detail {

struct SeriesSum {
    double value;
    long terms;
    double tail_bound;
};

/// Sums term(n) for n = first, first + 1, ... with positive terms whose tail
/// is bounded by tail_factor * term(n) * q / (1 - q). Stops once that bound
/// drops below tol * sum.
template <class Term>
SeriesSum sum_bounded_tail(Term&& term, long first, double q, double tail_factor,
                           double tol, long max_terms, const char* name) {
    const double geometric = tail_factor * q / (1.0 - q);
    double sum = 0.0;
    double comp = 0.0;  // Kahan compensation; near contact the sums run to ~1e5 terms
    for (long n = first, count = 1; count <= max_terms; ++n, ++count) {
        const double t = term(n);
        const double yk = t - comp;
        const double s = sum + yk;
        comp = (s - sum) - yk;
        sum = s;
        const double tail = t * geometric;
        if (tail <= tol * std::abs(sum) || t == 0.0) return {sum, count, tail};
    }
    throw ConvergenceError(std::string(name) + ": series did not converge within " +
                               std::to_string(max_terms) + " terms",
                           max_terms);
}

}  // namespace casimir::detail
