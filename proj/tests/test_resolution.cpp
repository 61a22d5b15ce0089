#include "doctest.h"
#include "oracles.hpp"
#include "plurinorm/resolution.hpp"

using namespace plurinorm;

namespace {

// Cusp resolution data: three blow-ups plus the strict transform. Ratios
// (b+1)/a are 1, 1, 1, 5/6, so E3 alone carries the threshold.
ResolutionModel cusp_model() {
    std::vector<Divisor> divs = {{"C", 1, 0}, {"E1", 2, 1}, {"E2", 3, 2}, {"E3", 6, 4}};
    std::vector<Stratum> strata = {
        {{"C"}, {"p"}},          {{"E1"}, {"p"}},       {{"E2"}, {"p"}},
        {{"E3"}, {"p"}},         {{"E1", "E3"}, {"p"}}, {{"E2", "E3"}, {"p"}},
        {{"C", "E3"}, {"p"}},
    };
    return ResolutionModel(std::move(divs), std::move(strata), {"p"});
}

// Two smooth lines crossing at p; q sits on L1 only.
ResolutionModel two_line_model() {
    std::vector<Divisor> divs = {{"L1", 1, 0}, {"L2", 1, 0}};
    std::vector<Stratum> strata = {
        {{"L1"}, {"p", "q"}},
        {{"L2"}, {"p"}},
        {{"L1", "L2"}, {"p"}},
    };
    return ResolutionModel(std::move(divs), std::move(strata), {"p", "q"});
}

// Two disjoint divisors over different points with different thresholds.
ResolutionModel disjoint_model() {
    std::vector<Divisor> divs = {{"D1", 2, 0}, {"D2", 3, 0}};
    std::vector<Stratum> strata = {{{"D1"}, {"p"}}, {{"D2"}, {"q"}}};
    return ResolutionModel(std::move(divs), std::move(strata), {"p", "q", "far"});
}

// Monomial model z1^2 z2^2: two multiplicity-2 divisors crossing at p.
ResolutionModel monomial22_model() {
    std::vector<Divisor> divs = {{"H1", 2, 0}, {"H2", 2, 0}};
    std::vector<Stratum> strata = {{{"H1"}, {"p"}}, {{"H2"}, {"p"}}, {{"H1", "H2"}, {"p"}}};
    return ResolutionModel(std::move(divs), std::move(strata), {"p"});
}

}  // namespace

TEST_SUITE("resolution") {

TEST_CASE("cusp model: global and local threshold 5/6, mu 1") {
    ResolutionModel m = cusp_model();
    CHECK(m.global_lct() == ExtRational(Rational(5, 6)));
    CHECK(m.local_lct("p") == ExtRational(Rational(5, 6)));
    CHECK(m.local_mu("p") == 1);
    auto [ix, pts] = m.characteristic_indicatrix();
    CHECK(ix.l == ExtRational(Rational(5, 6)));
    CHECK(ix.mu == 1);
    CHECK(pts == std::set<std::string>{"p"});
}

TEST_CASE("two-line model: (lct, mu, C(D)) = (1, 2, {p})") {
    ResolutionModel m = two_line_model();
    CHECK(m.global_lct() == ExtRational(Rational(1, 1)));
    CHECK(m.local_mu("p") == 2);
    CHECK(m.local_mu("q") == 1);
    auto [ix, pts] = m.characteristic_indicatrix();
    CHECK(ix.l == ExtRational(Rational(1, 1)));
    CHECK(ix.mu == 2);
    CHECK(pts == std::set<std::string>{"p"});
}

TEST_CASE("disjoint model: per-point thresholds and undefined mu off-image") {
    ResolutionModel m = disjoint_model();
    CHECK(m.local_lct("p") == ExtRational(Rational(1, 2)));
    CHECK(m.local_lct("q") == ExtRational(Rational(1, 3)));
    CHECK(m.local_lct("far").is_infinite());
    CHECK_THROWS_AS(m.local_mu("far"), ModelValidationError);
    PointIndexReport rep = m.point_report("far");
    CHECK(rep.lct.is_infinite());
    CHECK(rep.mu == 0);
    // q is strictly more singular than p: the indicatrix sits at q.
    auto [ix, pts] = m.characteristic_indicatrix();
    CHECK(ix.l == ExtRational(Rational(1, 3)));
    CHECK(ix.mu == 1);
    CHECK(pts == std::set<std::string>{"q"});
}

TEST_CASE("unknown point ids are rejected") {
    ResolutionModel m = two_line_model();
    CHECK_THROWS_AS(m.local_lct("nope"), ModelValidationError);
    CHECK_THROWS_AS(m.mult_bound_check("nope", 1, 2), ModelValidationError);
}

TEST_CASE("mult bound audit (Eq 2.3)") {
    // Smooth divisor, mult=1, n=2: 1 <= 2.
    std::vector<Divisor> divs = {{"E", 1, 0}};
    std::vector<Stratum> strata = {{{"E"}, {"p"}}};
    ResolutionModel smooth(std::move(divs), std::move(strata), {"p"});
    CHECK(smooth.mult_bound_check("p", 1, 2));

    // z1^2 z2^2 with mult 4, n=2: equality 1/2 <= 1/2.
    CHECK(monomial22_model().mult_bound_check("p", 4, 2));
    // Pushing the asserted multiplicity past the truth flips the audit.
    CHECK_FALSE(monomial22_model().mult_bound_check("p", 5, 2));

    // Cusp at p with mult 2, n=2: 5/6 <= 1.
    CHECK(cusp_model().mult_bound_check("p", 2, 2));
    CHECK_FALSE(cusp_model().mult_bound_check("p", 3, 2));
}

TEST_CASE("validation rejects malformed models") {
    using V = ModelValidationError;
    // No singleton stratum for E2.
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}, {"E2", 1, 0}}, {{{"E1"}, {"p"}}}, {"p"}), V);
    // Pair stratum without its facets.
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}, {"E2", 1, 0}},
                                    {{{"E1"}, {"p"}}, {{"E1", "E2"}, {"p"}}}, {"p"}),
                    V);
    // Pair image not contained in facet image.
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}, {"E2", 1, 0}},
                                    {{{"E1"}, {"q"}},
                                     {{"E2"}, {"p", "q"}},
                                     {{"E1", "E2"}, {"p"}}},
                                    {"p", "q"}),
                    V);
    // Unknown divisor in a stratum.
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}}, {{{"E1"}, {"p"}}, {{"EX"}, {"p"}}}, {"p"}),
                    V);
    // Unknown image point.
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}}, {{{"E1"}, {"z"}}}, {"p"}), V);
    // Empty image set.
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}}, {{{"E1"}, {}}}, {"p"}), V);
    // Nonpositive a, negative b, duplicate ids, duplicate strata.
    CHECK_THROWS_AS(ResolutionModel({{"E1", 0, 0}}, {{{"E1"}, {"p"}}}, {"p"}), V);
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, -1}}, {{{"E1"}, {"p"}}}, {"p"}), V);
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}, {"E1", 2, 1}}, {{{"E1"}, {"p"}}}, {"p"}), V);
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}}, {{{"E1"}, {"p"}}, {{"E1"}, {"p"}}}, {"p"}),
                    V);
    // No points at all.
    CHECK_THROWS_AS(ResolutionModel({{"E1", 1, 0}}, {{{"E1"}, {"p"}}}, {}), V);
}

TEST_CASE("empty divisor list: lct infinite, indicatrix refuses") {
    ResolutionModel m({}, {}, {"p"});
    CHECK(m.global_lct().is_infinite());
    CHECK(m.local_lct("p").is_infinite());
    CHECK_THROWS_AS(m.characteristic_indicatrix(), ModelValidationError);
}

TEST_CASE("deep stratum chains validate and count mu correctly") {
    // Three divisors at threshold 1/2 with a full triple intersection.
    std::vector<Divisor> divs = {{"F1", 2, 0}, {"F2", 2, 0}, {"F3", 2, 0}};
    std::vector<Stratum> strata = {
        {{"F1"}, {"p", "q"}}, {{"F2"}, {"p", "q"}}, {{"F3"}, {"p"}},
        {{"F1", "F2"}, {"p", "q"}}, {{"F1", "F3"}, {"p"}}, {{"F2", "F3"}, {"p"}},
        {{"F1", "F2", "F3"}, {"p"}},
    };
    ResolutionModel m(std::move(divs), std::move(strata), {"p", "q"});
    CHECK(m.local_mu("p") == 3);
    CHECK(m.local_mu("q") == 2);
    auto [ix, pts] = m.characteristic_indicatrix();
    CHECK(ix.mu == 3);
    CHECK(pts == std::set<std::string>{"p"});
}

TEST_CASE("global lct equals the minimum of the local ones") {
    for (const ResolutionModel& m :
         {cusp_model(), two_line_model(), disjoint_model(), monomial22_model()}) {
        ExtRational min_local = ExtRational::infinity();
        for (const std::string& p : m.points()) {
            ExtRational l = m.local_lct(p);
            if (l < min_local) min_local = l;
        }
        CHECK(m.global_lct() == min_local);
    }
}

TEST_CASE("subset-enumeration oracle agrees on every bundled model") {
    for (const ResolutionModel& m :
         {cusp_model(), two_line_model(), disjoint_model(), monomial22_model()}) {
        REQUIRE(m.divisors().size() <= 6);
        for (const std::string& p : m.points()) {
            oracles::SubsetIndex si = oracles::subset_local_index(m, p);
            PointIndexReport rep = m.point_report(p);
            CHECK(rep.lct == si.lct);
            if (!rep.lct.is_infinite()) CHECK(rep.mu == si.mu);
        }
        auto [ix, pts] = m.characteristic_indicatrix();
        auto [oix, opts] = oracles::subset_indicatrix(m);
        CHECK(compare_char_index(ix, oix) == std::strong_ordering::equal);
        CHECK(pts == opts);
    }
}

}  // TEST_SUITE
