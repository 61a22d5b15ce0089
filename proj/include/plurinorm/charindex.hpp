#pragma once

// Local monomial singularity invariants. A chart-level monomial model is a
// pair of exponent vectors (A, B); each coordinate with a_j > 0 contributes
// the ratio (b_j + 1) / a_j, the minimum of those ratios is l and the number
// of minimizers is mu. The pair (l, mu) is ordered so that "greater" means
// "more singular": smaller l wins, and at equal l the larger mu wins.

#include <compare>
#include <span>
#include <vector>

#include "plurinorm/rational.hpp"

namespace plurinorm {

struct MultiIndexPair {
    std::vector<int> A;
    std::vector<int> B;

    MultiIndexPair(std::vector<int> a, std::vector<int> b);

    int n() const { return static_cast<int>(A.size()); }
};

struct CharIndex {
    ExtRational l;
    int mu = 0;

    CharIndex() : l(ExtRational::infinity()), mu(0) {}
    // Enforces the empty-divisor convention: mu == 0 exactly when l is infinite.
    CharIndex(ExtRational l_, int mu_);
};

CharIndex local_char_index(const MultiIndexPair& pair);

// Total order of characteristic indices; greater = more singular.
std::strong_ordering compare_char_index(const CharIndex& x, const CharIndex& y);

// Ratios t^{l'} (ln 1/t)^{mu'} / (t^l (ln 1/t)^mu) with (l', mu') from `small`
// and (l, mu) from `big`. Requires big strictly more singular than small, both
// finite, and a strictly decreasing grid inside (0, 1/e). The sequence tends
// to 0 as the grid approaches 0.
std::vector<double> dominance_ratio_profile(const CharIndex& big, const CharIndex& small,
                                            std::span<const double> t_grid);

// Permutation (0-based) sorting coordinates so the per-coordinate ratios are
// nondecreasing, minimizers first, ties broken by original index.
std::vector<int> canonical_chart_order(const MultiIndexPair& pair);

}  // namespace plurinorm
