#pragma once

// Exact arithmetic for the effective constants: the multiplicity threshold
// 2nr/(r−2), the two-term superadditivity inequality behind tensor
// multiplicities, the surface semigroup generated by {ab : a ≥ 5, b ≥ 6}
// with its conductor at 75, Kollár's base-point-freeness degree, and the
// combined per-dimension report. Everything here is integer or rational —
// no floating point.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plurinorm/rational.hpp"

namespace plurinorm {

// 2nr/(r−2) for n ≥ 1, r ≥ 3.
Rational mult_threshold(int n, long long r);

// (x+y)/(x+y−2) < x/(x−2) + y/(y−2) for x, y ≥ 3; returns the truth value
// together with the exact positive gap.
std::pair<bool, Rational> semigroup_inequality_check(long long x, long long y);

struct SemigroupTable {
    long long limit = 0;
    std::vector<char> member;  // index k in [0, limit]; member[k] for k >= 1
    std::string generators_rule = "products a*b with a >= 5, b >= 6";

    bool contains(long long k) const {
        return k >= 1 && k <= limit && member[static_cast<size_t>(k)];
    }
    // Non-members in [1, bound).
    std::vector<long long> gaps_below(long long bound) const;
};

// Mark all products ab ≤ limit with a ≥ 5, b ≥ 6, then close under
// addition. Requires limit ≥ 100.
SemigroupTable surface_semigroup(long long limit);

// 2·(n+2)!·(a+n) for n ≥ 1, a ≥ 2; throws on int64 overflow.
long long kollar_free_degree(int n, long long a);

// The literal reading ν > 2nνm/(νm−2), recorded per triple. The source
// statement asks ν ≥ 2n+1 while its derivation uses ν > 2n+1; both sides
// of that boundary are reported rather than resolved.
struct Lemma43Check {
    bool strict_holds = false;
    Rational threshold;  // 2nνm/(νm−2)
    bool boundary = false;  // ν == 2n+1
};
Lemma43Check lemma43_check(long long nu, long long m, int n);

enum class BoundsPath { Surface, General };

struct BoundsReport {
    int n = 0;
    long long d = 0;
    int m0 = 0;
    int nu_min = 0;               // 2n+1, with the boundary caveat above
    std::optional<long long> r0;  // 75 on the surface path; unresolved otherwise
    std::string note;
};

// surface: n must be 2; d=1, m0=5, r0=75.
// general: d=2(n+2)!, m0=n+2, r0 left unresolved (depends on the
// birationality threshold m_n, which has no explicit value).
BoundsReport bounds_report(int n, BoundsPath path);

}  // namespace plurinorm
