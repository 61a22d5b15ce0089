#pragma once

// Property suites surfaced through the CLI and reused by the test binaries.
// All randomness is std::mt19937 with explicit seeds and hand-rolled draws
// (the standard distributions are implementation-defined), so runs are
// reproducible everywhere.

#include <string>
#include <vector>

#include "plurinorm/integrator.hpp"

namespace plurinorm {

struct SuiteCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    bool passed = true;
    std::vector<SuiteCheck> checks;

    void add(std::string name, bool ok, std::string detail) {
        passed = passed && ok;
        checks.push_back(SuiteCheck{std::move(name), ok, std::move(detail)});
    }
};

// Total-order laws of the characteristic index on random pairs/triples plus
// dominance-ratio profiles on grids reaching t = 1e−12. Pure arithmetic.
SuiteResult run_charindex_suite(long long pairs, unsigned seed);

struct PseudonormSuiteParams {
    int n = 1;
    std::vector<int> m_values = {3, 4, 8};
    long long pair_count = 100;
    int max_degree = 3;
    unsigned seed = 20260823;
    std::vector<cplx> scale_factors = {cplx(0.25, 0.0), cplx(0.5, 0.0), cplx(2.0, 0.0),
                                       cplx(4.0, 0.0), cplx(0.0, 1.0)};
    double scaling_tol = 1e-5;
    double triangle_err_factor = 20.0;  // residual allowance in units of err_est
    QuadratureConfig quad;
};

// Scaling law, triangle inequality on random section pairs, and the
// zero-iff-zero property, per m value, on a single-chart cover.
SuiteResult run_pseudonorm_suite(const PseudonormSuiteParams& p);

}  // namespace plurinorm
