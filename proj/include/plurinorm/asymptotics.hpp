#pragma once

// The asymptotic side of the expansion law: classify the case split from
// the exact exponent 2l + 2/m, sweep Ψ(t) − Ψ(0) on a geometric t-grid,
// fit the power-log model  log|δ| = log c + α log t + p·log ln(1/t)  with
// p restricted to a small integer grid, test the symbolic coefficient
// vanishing criterion, and aggregate chart-level sweeps into a global one.

#include <stdexcept>
#include <string>
#include <vector>

#include "plurinorm/integrator.hpp"

namespace plurinorm {

enum class CaseTag { Case1, Case2 };

struct CaseClassification {
    CaseTag tag;
    Rational exponent;  // 2l + 2/m, exact
};

// Exact rational comparison of 2l + 2/m against 1; equality lands in case 1.
// Throws when l is infinite (there is no expansion to classify).
CaseClassification classify_case(const MultiIndexPair& pair, int m);

struct PsiSamples {
    std::vector<double> t_values;      // strictly decreasing, all in (0, 1/e)
    std::vector<double> delta_values;  // Ψ(t) − Ψ(0)
    std::vector<double> err_ests;
    std::vector<char> budget_ok;       // per-sample integrator convergence

    void validate() const;
    int count() const { return static_cast<int>(t_values.size()); }
};

// Ψ(t_k) − Ψ(0) at t_k = t0·ratio^k for k < count, evaluated as single
// difference integrals so the error estimates refer to the deltas.
PsiSamples sample_psi(const LocalIntegrand& ig, double t0, double ratio, int count,
                      const QuadratureConfig& cfg);

struct AsymptoticFitError : std::runtime_error {
    explicit AsymptoticFitError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AsymptoticFitResult {
    double c_hat = 0.0;
    double alpha_hat = 0.0;
    int p_hat = 0;
    double residual_rms = 0.0;
    CaseTag case_tag = CaseTag::Case2;
    int window_lo = 0;  // [window_lo, window_hi) sample indices used
    int window_hi = 0;
};

// Least squares per p on the samples whose |delta| clears 10× their error
// estimate; the p with the smallest residual RMS wins (ties to smaller p).
// Throws AsymptoticFitError on fewer than 4 usable samples or mixed signs.
AsymptoticFitResult fit_expansion(const PsiSamples& samples, const std::vector<int>& p_grid);

// True iff phi(0,…,0,z_{mu+1},…,z_n) ≡ 0, i.e. every term carries a
// positive power of one of the first mu (canonically ordered) variables.
bool coefficient_vanishes(const Polynomial& phi, int mu);

struct ChartSweep {
    std::string id;
    LocalIntegrand integrand;
};

struct ChartContribution {
    std::string id;
    CharIndex index;
    bool maximal = false;
    bool fit_ok = false;
    std::string fit_error;
    AsymptoticFitResult fit;  // meaningful when fit_ok
    PsiSamples samples;
};

struct GlobalExpansion {
    CharIndex index;  // sup over charts under compare_char_index
    AsymptoticFitResult fit;
    PsiSamples samples;  // chart-summed sweep
    std::vector<ChartContribution> charts;
};

// Sweeps every chart (identical integrands are evaluated once), sums the
// deltas into a global sweep, fits both the global and per-chart series,
// and reports which charts attain the sup index. All charts must share m
// and the dimension; throws when every chart misses the divisor.
GlobalExpansion global_expansion(const std::vector<ChartSweep>& cover, double t0, double ratio,
                                 int count, const QuadratureConfig& cfg);

}  // namespace plurinorm
