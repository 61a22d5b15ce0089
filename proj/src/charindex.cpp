#include "plurinorm/charindex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace plurinorm {

MultiIndexPair::MultiIndexPair(std::vector<int> a, std::vector<int> b)
    : A(std::move(a)), B(std::move(b)) {
    if (A.empty()) throw std::invalid_argument("MultiIndexPair: dimension must be positive");
    if (A.size() != B.size())
        throw std::invalid_argument("MultiIndexPair: A and B must have the same length");
    for (std::size_t j = 0; j < A.size(); ++j) {
        if (A[j] < 0 || B[j] < 0)
            throw std::invalid_argument("MultiIndexPair: exponents must be nonnegative");
    }
}

CharIndex::CharIndex(ExtRational l_, int mu_) : l(std::move(l_)), mu(mu_) {
    if (l.is_infinite() != (mu == 0))
        throw std::invalid_argument("CharIndex: mu == 0 exactly when l is infinite");
    if (mu < 0) throw std::invalid_argument("CharIndex: mu must be nonnegative");
}

CharIndex local_char_index(const MultiIndexPair& pair) {
    bool any = false;
    Rational best;
    int count = 0;
    for (int j = 0; j < pair.n(); ++j) {
        if (pair.A[j] == 0) continue;
        Rational lj(pair.B[j] + 1, pair.A[j]);
        if (!any || lj < best) {
            best = lj;
            count = 1;
            any = true;
        } else if (lj == best) {
            ++count;
        }
    }
    if (!any) return CharIndex(ExtRational::infinity(), 0);
    return CharIndex(ExtRational(best), count);
}

std::strong_ordering compare_char_index(const CharIndex& x, const CharIndex& y) {
    // Smaller l is more singular; at equal l the larger mu is.
    if (x.l != y.l) return (x.l < y.l) ? std::strong_ordering::greater : std::strong_ordering::less;
    if (x.mu != y.mu) return (x.mu > y.mu) ? std::strong_ordering::greater : std::strong_ordering::less;
    return std::strong_ordering::equal;
}

std::vector<double> dominance_ratio_profile(const CharIndex& big, const CharIndex& small,
                                            std::span<const double> t_grid) {
    if (big.l.is_infinite() || small.l.is_infinite())
        throw std::invalid_argument("dominance_ratio_profile: both indices must be finite");
    if (compare_char_index(big, small) != std::strong_ordering::greater)
        throw std::invalid_argument("dominance_ratio_profile: big must be strictly more singular");
    const double inv_e = std::exp(-1.0);
    double prev = 0.0;
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        double t = t_grid[k];
        if (!(t > 0.0) || t >= inv_e)
            throw std::invalid_argument("dominance_ratio_profile: grid entries must lie in (0, 1/e)");
        if (k > 0 && t >= prev)
            throw std::invalid_argument("dominance_ratio_profile: grid must be strictly decreasing");
        prev = t;
    }

    const double dl = small.l.value().to_double() - big.l.value().to_double();
    const double dmu = static_cast<double>(small.mu - big.mu);
    std::vector<double> out;
    out.reserve(t_grid.size());
    for (double t : t_grid) {
        // exp form keeps tiny t stable (t^l alone can underflow before dividing)
        double L = std::log(1.0 / t);
        out.push_back(std::exp(dl * std::log(t) + dmu * std::log(L)));
    }
    return out;
}

std::vector<int> canonical_chart_order(const MultiIndexPair& pair) {
    std::vector<ExtRational> l(pair.n(), ExtRational::infinity());
    for (int j = 0; j < pair.n(); ++j) {
        if (pair.A[j] > 0) l[j] = ExtRational(Rational(pair.B[j] + 1, pair.A[j]));
    }
    std::vector<int> perm(pair.n());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int i, int j) { return l[i] < l[j]; });
    return perm;
}

}  // namespace plurinorm
