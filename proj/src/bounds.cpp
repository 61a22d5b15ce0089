#include "plurinorm/bounds.hpp"

#include <algorithm>

namespace plurinorm {

Rational mult_threshold(int n, long long r) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (r < 3) throw std::invalid_argument("threshold requires r >= 3");
    return Rational(2 * static_cast<long long>(n) * r, r - 2);
}

std::pair<bool, Rational> semigroup_inequality_check(long long x, long long y) {
    if (x < 3 || y < 3) throw std::invalid_argument("inequality requires x, y >= 3");
    Rational lhs(x + y, x + y - 2);
    Rational rhs = Rational(x, x - 2) + Rational(y, y - 2);
    Rational gap = rhs - lhs;
    return {gap > Rational(0), gap};
}

std::vector<long long> SemigroupTable::gaps_below(long long bound) const {
    if (bound < 1 || bound > limit + 1)
        throw std::invalid_argument("gap bound outside the tabulated range");
    std::vector<long long> out;
    for (long long k = 1; k < bound; ++k)
        if (!member[static_cast<size_t>(k)]) out.push_back(k);
    return out;
}

SemigroupTable surface_semigroup(long long limit) {
    if (limit < 100) throw std::invalid_argument("semigroup table requires limit >= 100");
    SemigroupTable t;
    t.limit = limit;
    std::vector<char> gen(static_cast<size_t>(limit) + 1, 0);
    for (long long a = 5; a * 6 <= limit; ++a)
        for (long long b = 6; a * b <= limit; ++b) gen[static_cast<size_t>(a * b)] = 1;
    std::vector<long long> gens;
    for (long long k = 1; k <= limit; ++k)
        if (gen[static_cast<size_t>(k)]) gens.push_back(k);

    t.member.assign(static_cast<size_t>(limit) + 1, 0);
    const long long g0 = gens.empty() ? 0 : gens.front();  // smallest generator (30)
    long long run = 0;
    for (long long k = 1; k <= limit; ++k) {
        bool in = gen[static_cast<size_t>(k)];
        if (!in && run >= g0 && g0 > 0) {
            // The previous g0 integers are all members, so k−g0 is one too.
            in = true;
        } else if (!in) {
            for (long long g : gens) {
                if (g >= k) break;
                if (t.member[static_cast<size_t>(k - g)]) {
                    in = true;
                    break;
                }
            }
        }
        t.member[static_cast<size_t>(k)] = in ? 1 : 0;
        run = in ? run + 1 : 0;
    }
    return t;
}

long long kollar_free_degree(int n, long long a) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (a < 2) throw std::invalid_argument("free degree requires a >= 2");
    __int128 f = 1;
    for (int k = 2; k <= n + 2; ++k) f *= k;
    return detail::narrow128(2 * f * (a + n));
}

Lemma43Check lemma43_check(long long nu, long long m, int n) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    if (nu < 1 || m < 1) throw std::invalid_argument("nu and m must be positive");
    if (nu * m <= 2) throw std::invalid_argument("nu*m must exceed 2");
    Lemma43Check c;
    c.threshold = Rational(2 * static_cast<long long>(n) * nu * m, nu * m - 2);
    c.strict_holds = Rational(nu) > c.threshold;
    c.boundary = (nu == 2 * static_cast<long long>(n) + 1);
    return c;
}

BoundsReport bounds_report(int n, BoundsPath path) {
    if (n < 1) throw std::invalid_argument("dimension must be positive");
    BoundsReport r;
    r.n = n;
    r.nu_min = 2 * n + 1;
    if (path == BoundsPath::Surface) {
        if (n != 2) throw std::invalid_argument("the surface path requires n = 2");
        r.d = 1;
        r.m0 = 5;
        r.r0 = 75;
        r.note =
            "surface path: base-point-freeness of |mK| for m >= 5 gives d=1, m0=5; "
            "the semigroup conductor fixes r0=75. nu_min=2n+1 carries the strict/"
            "non-strict boundary caveat at nu=2n+1.";
    } else {
        r.d = kollar_free_degree(n, 2) / (2 + n);  // 2(n+2)!; reuse the checked factorial
        r.m0 = n + 2;
        r.r0 = std::nullopt;
        r.note =
            "general path: d=2(n+2)!, m0=n+2 from effective base-point-freeness; r0 "
            "unresolved - it depends on the birationality threshold m_n, which has no "
            "explicit value, so it is reported symbolically. nu_min=2n+1 carries the "
            "strict/non-strict boundary caveat at nu=2n+1.";
    }
    return r;
}

}  // namespace plurinorm
