#ifndef KURANISHI_CONE_HPP
#define KURANISHI_CONE_HPP

#include <optional>
#include <string>
#include <vector>

#include "kuranishi/local_ring.hpp"

namespace kuranishi {

/// Finitely generated monoid of integer vectors, optionally carried inside a
/// cone cut out by linear functionals (the relative variant). Generators may
/// repeat; names label the corresponding completion variables.
struct ConeMonoid {
    int ambient_rank = 0;
    std::vector<std::vector<long>> generators;
    std::vector<std::string> generator_names; // empty: g0, g1, ...
    std::vector<std::vector<long>> inequalities; // optional functionals

    std::string name_of(size_t j) const
    {
        if (j < generator_names.size() && !generator_names[j].empty())
            return generator_names[j];
        return "g" + std::to_string(j);
    }
};

/// A rational functional that is >= 1 on every nonzero generator, when one
/// exists — i.e. exactly when the spanned cone contains no line. Found by
/// Fourier-Motzkin elimination.
std::optional<std::vector<Rational>> positive_functional(const ConeMonoid& cone);

/// True iff the rational cone spanned by the generators contains no line.
bool is_strongly_convex(const ConeMonoid& cone);

/// Generators violating the inequality presentation (empty when consistent
/// or when no inequalities are given).
std::vector<size_t> inequality_violations(const ConeMonoid& cone);

/// Basis of the integer kernel lattice {u : sum_j u_j g_j = 0} of the
/// generator-exponent map, computed by integer row reduction. The basis
/// generates the full kernel over the integers, not just a finite-index
/// sublattice — saturation alone would not repair that gap.
std::vector<std::vector<long>> lattice_kernel(const std::vector<std::vector<long>>& generators,
                                              int ambient_rank);

/// Completion of the monoid ring at the ideal of nonzero monoid elements:
/// one weight-1 variable per generator, related by the toric ideal (the
/// saturated lattice ideal of the kernel), truncated at the given order.
struct ConeCompletion {
    ConeMonoid cone;
    RingPtr ring;
    std::vector<TermMap> toric_relations; // reduced graded-lex basis
    std::vector<std::vector<long>> kernel;
};

ConeCompletion cone_completion(const ConeMonoid& cone, int truncation_order);

} // namespace kuranishi

#endif
