#include "doctest.h"
#include "plurinorm/asymptotics.hpp"

#include <cmath>
#include <vector>

using namespace plurinorm;

namespace {

// Exact synthetic sweep delta = c * t^alpha * ln(1/t)^p on a geometric grid.
PsiSamples synthetic(double c, double alpha, int p, double t0, double ratio, int count) {
    PsiSamples s;
    double t = t0;
    for (int k = 0; k < count; ++k) {
        double d = c * std::pow(t, alpha) * std::pow(std::log(1.0 / t), p);
        s.t_values.push_back(t);
        s.delta_values.push_back(d);
        s.err_ests.push_back(1e-14 * std::abs(d));
        s.budget_ok.push_back(1);
        t *= ratio;
    }
    return s;
}

}  // namespace

TEST_SUITE("asymptotics") {

TEST_CASE("case classification is exact rational arithmetic") {
    // l = 1/5, m = 8: exponent 2/5 + 1/4 = 13/20 < 1.
    CaseClassification c2 = classify_case(MultiIndexPair({5}, {0}), 8);
    CHECK(c2.tag == CaseTag::Case2);
    CHECK(c2.exponent == Rational(13, 20));

    // l = 3/8, m = 8: exponent 3/4 + 1/4 lands exactly on 1, which is case 1.
    CaseClassification edge = classify_case(MultiIndexPair({8}, {2}), 8);
    CHECK(edge.tag == CaseTag::Case1);
    CHECK(edge.exponent == Rational(1, 1));

    // Strictly above 1.
    CaseClassification c1 = classify_case(MultiIndexPair({1, 2}, {1, 0}), 4);
    CHECK(c1.tag == CaseTag::Case1);

    // Multi-coordinate minimum: l = min(1/5, 2) with m = 8 again.
    CaseClassification multi = classify_case(MultiIndexPair({5, 1}, {0, 1}), 8);
    CHECK(multi.exponent == Rational(13, 20));

    CHECK_THROWS_AS(classify_case(MultiIndexPair({0}, {0}), 8), std::invalid_argument);
    CHECK_THROWS_AS(classify_case(MultiIndexPair({5}, {0}), 2), std::invalid_argument);
}

TEST_CASE("sample validation rejects malformed sweeps") {
    PsiSamples s = synthetic(1.0, 0.5, 0, 1e-2, 0.5, 6);
    CHECK_NOTHROW(s.validate());

    PsiSamples bad = s;
    bad.err_ests.pop_back();
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = s;
    bad.t_values[0] = 0.5;  // >= 1/e
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = s;
    std::swap(bad.t_values[1], bad.t_values[2]);  // not strictly decreasing
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = s;
    bad.t_values.back() = -1e-6;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("fit recovers an exact power-log model") {
    const double c = 0.37, alpha = 0.65;
    PsiSamples s = synthetic(c, alpha, 1, 1e-2, 0.5, 12);
    AsymptoticFitResult fit = fit_expansion(s, {0, 1, 2});
    CHECK(fit.p_hat == 1);
    CHECK(fit.alpha_hat == doctest::Approx(alpha).epsilon(1e-10));
    CHECK(fit.c_hat == doctest::Approx(c).epsilon(1e-8));
    CHECK(fit.residual_rms <= 1e-10);
    CHECK(fit.case_tag == CaseTag::Case2);
    CHECK(fit.window_lo == 0);
    CHECK(fit.window_hi == 12);
}

TEST_CASE("fit prefers the smallest log power on ties and pure power data") {
    PsiSamples s = synthetic(2.5, 1.25, 0, 1e-2, 0.4, 10);
    AsymptoticFitResult fit = fit_expansion(s, {0, 1, 2});
    CHECK(fit.p_hat == 0);
    CHECK(fit.alpha_hat == doctest::Approx(1.25).epsilon(1e-10));
    CHECK(fit.case_tag == CaseTag::Case1);
}

TEST_CASE("noisy tail samples fall out of the fit window") {
    PsiSamples s = synthetic(1.0, 0.7, 0, 1e-2, 0.5, 10);
    // Drown the last three samples in reported quadrature error.
    for (int i = 7; i < 10; ++i) s.err_ests[i] = std::abs(s.delta_values[i]);
    AsymptoticFitResult fit = fit_expansion(s, {0, 1});
    CHECK(fit.window_hi == 7);
    CHECK(fit.alpha_hat == doctest::Approx(0.7).epsilon(1e-9));
}

TEST_CASE("fit failure modes raise AsymptoticFitError") {
    // Everything below the noise floor.
    PsiSamples s = synthetic(1.0, 0.7, 0, 1e-2, 0.5, 8);
    for (auto& e : s.err_ests) e = 1.0;
    CHECK_THROWS_AS(fit_expansion(s, {0, 1}), AsymptoticFitError);

    // Identically zero deltas count as no signal, not as a zero fit.
    PsiSamples z = synthetic(0.0, 0.7, 0, 1e-2, 0.5, 8);
    for (auto& e : z.err_ests) e = 1e-18;
    CHECK_THROWS_AS(fit_expansion(z, {0}), AsymptoticFitError);

    // Mixed signs cannot be a single-branch power law.
    PsiSamples m = synthetic(1.0, 0.7, 0, 1e-2, 0.5, 8);
    m.delta_values[3] = -m.delta_values[3];
    CHECK_THROWS_AS(fit_expansion(m, {0}), AsymptoticFitError);

    // Parameter validation stays invalid_argument.
    PsiSamples ok = synthetic(1.0, 0.7, 0, 1e-2, 0.5, 8);
    CHECK_THROWS_AS(fit_expansion(ok, {}), std::invalid_argument);
    CHECK_THROWS_AS(fit_expansion(ok, {-1}), std::invalid_argument);
}

TEST_CASE("coefficient vanishing test") {
    Polynomial z1 = Polynomial::monomial({1, 0}, cplx(1.0, 0.0));
    CHECK(coefficient_vanishes(z1, 1));
    CHECK(coefficient_vanishes(z1, 2));
    Polynomial z2 = Polynomial::monomial({0, 1}, cplx(1.0, 0.0));
    CHECK_FALSE(coefficient_vanishes(z2, 1));
    CHECK(coefficient_vanishes(z2, 2));
    CHECK(coefficient_vanishes(z1 + z2 * cplx(2.0, 0.0), 2));
    CHECK_FALSE(coefficient_vanishes(z1 + z2, 1));
    CHECK_FALSE(coefficient_vanishes(Polynomial::constant(2, cplx(1.0, 0.0)), 2));
    CHECK(coefficient_vanishes(Polynomial::zero(2), 1));
    CHECK_THROWS_AS(coefficient_vanishes(z1, 0), std::invalid_argument);
    CHECK_THROWS_AS(coefficient_vanishes(z1, 3), std::invalid_argument);
}

TEST_CASE("a real sweep fits its exact exponent") {
    // l = 1/5, m = 8, constant perturbation: alpha = 13/20, no log factor.
    LocalIntegrand ig(MultiIndexPair({5}, {0}), 8,
                      Polynomial::constant(1, cplx(1.0, 0.0)), Weight::one(1));
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    PsiSamples s = sample_psi(ig, 1e-2, 0.5, 10, cfg);
    s.validate();
    CHECK(s.count() == 10);
    for (char ok : s.budget_ok) CHECK(ok == 1);
    for (int k = 1; k < s.count(); ++k) {
        CHECK(s.t_values[k] == doctest::Approx(s.t_values[k - 1] * 0.5).epsilon(1e-15));
        CHECK(s.delta_values[k] < s.delta_values[k - 1]);  // shrinking with t
        CHECK(s.delta_values[k] > 0.0);
    }
    AsymptoticFitResult fit = fit_expansion(s, {0, 1});
    CHECK(fit.p_hat == 0);
    CHECK(std::abs(fit.alpha_hat - 0.65) <= 0.02 * 0.65);
    CHECK(fit.case_tag == CaseTag::Case2);

    CHECK_THROWS_AS(sample_psi(ig, 0.5, 0.5, 8, cfg), std::invalid_argument);
    CHECK_THROWS_AS(sample_psi(ig, 1e-2, 1.5, 8, cfg), std::invalid_argument);
    CHECK_THROWS_AS(sample_psi(ig, 1e-2, 0.5, 3, cfg), std::invalid_argument);
}

TEST_CASE("global expansion aggregates charts and flags the dominant one") {
    Polynomial one = Polynomial::constant(1, cplx(1.0, 0.0));
    std::vector<ChartSweep> cover;
    cover.push_back({"deep", LocalIntegrand(MultiIndexPair({5}, {0}), 8, one, Weight::one(1))});
    cover.push_back({"mild", LocalIntegrand(MultiIndexPair({3}, {0}), 8, one, Weight::one(1))});
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    GlobalExpansion gx = global_expansion(cover, 1e-2, 0.5, 8, cfg);

    CHECK(gx.index.l == ExtRational(Rational(1, 5)));
    CHECK(gx.index.mu == 1);
    REQUIRE(gx.charts.size() == 2);
    bool deep_max = false, mild_max = true;
    for (const auto& ch : gx.charts) {
        if (ch.id == "deep") deep_max = ch.maximal;
        if (ch.id == "mild") mild_max = ch.maximal;
        CHECK(ch.fit_ok);
    }
    CHECK(deep_max);
    CHECK_FALSE(mild_max);
    // The shallow chart decays faster, so the sum follows the deep exponent.
    CHECK(std::abs(gx.fit.alpha_hat - 0.65) <= 0.05 * 0.65);

    std::vector<ChartSweep> misses;
    misses.push_back({"flat", LocalIntegrand(MultiIndexPair({0}, {0}), 8, one, Weight::one(1))});
    CHECK_THROWS_AS(global_expansion(misses, 1e-2, 0.5, 8, cfg), AsymptoticFitError);
    CHECK_THROWS_AS(global_expansion({}, 1e-2, 0.5, 8, cfg), std::invalid_argument);
}

}  // TEST_SUITE
