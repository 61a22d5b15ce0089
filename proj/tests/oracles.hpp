#pragma once

// Independent cross-checks for the test suites. Everything here trades
// speed for obviousness: blunt midpoint grids instead of adaptive
// refinement, explicit subset enumeration instead of incidence walks, and
// a finite-generator closure for the semigroup. None of it shares code
// with the library paths under test.

#include <algorithm>
#include <cmath>
#include <complex>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "plurinorm/charindex.hpp"
#include "plurinorm/integrator.hpp"
#include "plurinorm/resolution.hpp"

namespace oracles {

using plurinorm::cplx;

inline double ipow(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

// Midpoint rule for Ψ(t) on the polar form of the polydisc: 2n dimensions,
// steps_r cells per radius and steps_a per angle. Converges slowly but has
// no shared machinery with the adaptive engine.
inline double psi_midpoint(const plurinorm::LocalIntegrand& ig, cplx t, int steps_r,
                           int steps_a) {
    const int n = ig.n();
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<int> idx(static_cast<std::size_t>(2 * n), 0);
    std::vector<double> r(static_cast<std::size_t>(n));
    std::vector<cplx> z(static_cast<std::size_t>(n));
    double cell = 1.0;
    for (int j = 0; j < n; ++j) cell *= (1.0 / steps_r) * (two_pi / steps_a);
    double sum = 0.0;
    while (true) {
        for (int j = 0; j < n; ++j) {
            r[static_cast<std::size_t>(j)] = (idx[static_cast<std::size_t>(j)] + 0.5) / steps_r;
            double th = (idx[static_cast<std::size_t>(n + j)] + 0.5) * two_pi / steps_a;
            z[static_cast<std::size_t>(j)] =
                r[static_cast<std::size_t>(j)] * cplx(std::cos(th), std::sin(th));
        }
        cplx g(1.0, 0.0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < ig.pair.A[static_cast<std::size_t>(j)]; ++k)
                g *= z[static_cast<std::size_t>(j)];
        if (!ig.phi.is_zero()) g += t * ig.phi.eval(z);
        double v = std::pow(std::norm(g), 1.0 / ig.m) * ig.chi.eval(r);
        for (int j = 0; j < n; ++j) {
            double rj = r[static_cast<std::size_t>(j)];
            v *= ipow(rj, 2 * ig.pair.B[static_cast<std::size_t>(j)]) * rj;
        }
        sum += v;
        int k = 0;
        for (; k < 2 * n; ++k) {
            int cap = (k < n) ? steps_r : steps_a;
            if (++idx[static_cast<std::size_t>(k)] < cap) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
        if (k == 2 * n) break;
    }
    return sum * cell;
}

// Midpoint rule for ∫ φ1 φ̄2 |Z^A|^{2/m−2} |Z|^{2B} χ over the polydisc.
inline cplx pairing_midpoint(const plurinorm::LocalIntegrand& base,
                             const plurinorm::Polynomial& f1, const plurinorm::Polynomial& f2,
                             int steps_r, int steps_a) {
    const int n = base.n();
    const double two_pi = 6.283185307179586476925286766559;
    std::vector<int> idx(static_cast<std::size_t>(2 * n), 0);
    std::vector<double> r(static_cast<std::size_t>(n));
    std::vector<cplx> z(static_cast<std::size_t>(n));
    double cell = 1.0;
    for (int j = 0; j < n; ++j) cell *= (1.0 / steps_r) * (two_pi / steps_a);
    cplx sum(0.0, 0.0);
    const double expo = 1.0 / base.m - 1.0;  // |Z^A|^{2/m−2} = norm(Z^A)^{1/m−1}
    while (true) {
        double ra = 1.0;
        for (int j = 0; j < n; ++j) {
            r[static_cast<std::size_t>(j)] = (idx[static_cast<std::size_t>(j)] + 0.5) / steps_r;
            double th = (idx[static_cast<std::size_t>(n + j)] + 0.5) * two_pi / steps_a;
            z[static_cast<std::size_t>(j)] =
                r[static_cast<std::size_t>(j)] * cplx(std::cos(th), std::sin(th));
            ra *= ipow(r[static_cast<std::size_t>(j)], base.pair.A[static_cast<std::size_t>(j)]);
        }
        double w = std::pow(ra * ra, expo) * base.chi.eval(r);
        for (int j = 0; j < n; ++j) {
            double rj = r[static_cast<std::size_t>(j)];
            w *= ipow(rj, 2 * base.pair.B[static_cast<std::size_t>(j)]) * rj;
        }
        sum += f1.eval(z) * std::conj(f2.eval(z)) * w;
        int k = 0;
        for (; k < 2 * n; ++k) {
            int cap = (k < n) ? steps_r : steps_a;
            if (++idx[static_cast<std::size_t>(k)] < cap) break;
            idx[static_cast<std::size_t>(k)] = 0;
        }
        if (k == 2 * n) break;
    }
    return sum * cell;
}

// Membership table for the additive closure of {a·b : a ≥ 5, b ≥ 6}.
// Every such product reduces to sums of products with a ≤ 9, b ≤ 11
// (split b ≥ 12 as b = 6 + (b−6); split a ≥ 10 as a = 5 + (a−5)), so the
// finite window {a∈[5,9]}×{b∈[6,11]} generates the whole semigroup.
inline std::vector<char> semigroup_closure(long long limit) {
    std::set<long long> gen_set;
    for (long long a = 5; a <= 9; ++a)
        for (long long b = 6; b <= 11; ++b) gen_set.insert(a * b);
    std::vector<long long> gens(gen_set.begin(), gen_set.end());
    std::vector<char> s(static_cast<std::size_t>(limit + 1), 0);
    for (long long k = 1; k <= limit; ++k)
        for (long long g : gens) {
            if (g > k) break;
            if (g == k || s[static_cast<std::size_t>(k - g)]) {
                s[static_cast<std::size_t>(k)] = 1;
                break;
            }
        }
    return s;
}

// Subset-enumeration route of Eq (2.2): minimizing divisors, then all
// bitmask subsets checked against the declared strata. Only sensible for
// models with few divisors (the masks are 2^#divisors).
struct SubsetIndex {
    plurinorm::ExtRational lct = plurinorm::ExtRational::infinity();
    int mu = 0;
};

inline SubsetIndex subset_local_index(const plurinorm::ResolutionModel& mdl,
                                      const std::string& point) {
    using plurinorm::Rational;
    // Ratios of divisors whose singleton stratum maps onto the point.
    SubsetIndex out;
    std::vector<std::pair<std::string, Rational>> local;
    for (const auto& d : mdl.divisors()) {
        for (const auto& st : mdl.strata()) {
            if (st.divisor_ids.size() == 1 && *st.divisor_ids.begin() == d.id &&
                st.image_points.count(point)) {
                local.emplace_back(d.id, Rational(d.b + 1, d.a));
                break;
            }
        }
    }
    if (local.empty()) return out;
    Rational best = local.front().second;
    for (const auto& [id, q] : local) best = std::min(best, q);
    std::set<std::string> minimizers;
    for (const auto& [id, q] : local)
        if (q == best) minimizers.insert(id);

    std::vector<std::string> ids(minimizers.begin(), minimizers.end());
    int mu = 0;
    for (unsigned mask = 1; mask < (1u << ids.size()); ++mask) {
        std::set<std::string> subset;
        for (std::size_t i = 0; i < ids.size(); ++i)
            if (mask & (1u << i)) subset.insert(ids[i]);
        for (const auto& st : mdl.strata())
            if (st.divisor_ids == subset && st.image_points.count(point))
                mu = std::max(mu, static_cast<int>(subset.size()));
    }
    out.lct = plurinorm::ExtRational(best);
    out.mu = mu;
    return out;
}

inline std::pair<plurinorm::CharIndex, std::set<std::string>> subset_indicatrix(
    const plurinorm::ResolutionModel& mdl) {
    using plurinorm::CharIndex;
    using plurinorm::ExtRational;
    CharIndex best;  // (∞, 0)
    std::set<std::string> where;
    for (const std::string& p : mdl.points()) {
        SubsetIndex si = subset_local_index(mdl, p);
        CharIndex ix = si.lct.is_infinite() ? CharIndex() : CharIndex(si.lct, si.mu);
        auto cmp = plurinorm::compare_char_index(ix, best);
        if (cmp == std::strong_ordering::greater) {
            best = ix;
            where = {p};
        } else if (cmp == std::strong_ordering::equal && !ix.l.is_infinite()) {
            where.insert(p);
        }
    }
    return {best, where};
}

}  // namespace oracles
