#pragma once

// Numerical evaluation of the local model integral
//   Ψ(t) = ∫_{Δ̄₀} χ(X,Y) |Z^A + tφ(Z)|^{2/m} |Z|^{2B} dXdY
// and its relatives, in per-coordinate polar form. Structural fast paths
// keep the cheap cases cheap: a monomial numerator makes the integrand
// angle-free (radial box integral), and a separable weight then splits it
// into a product of 1-D integrals. Everything funnels into the adaptive
// engine in quadrature.hpp.

#include <complex>
#include <vector>

#include "plurinorm/charindex.hpp"
#include "plurinorm/polynomial.hpp"
#include "plurinorm/quadrature.hpp"
#include "plurinorm/weight.hpp"

namespace plurinorm {

struct QuadratureConfig {
    int radial_nodes = 8;
    int angular_nodes = 6;
    int max_depth = 30;
    double rel_tol = 1e-7;
    double abs_floor = 1e-12;
    // Engine knobs below are implementation details, not scenario fields.
    long long max_cells = 400000;
    bool parallel = true;

    void validate() const;
    EngineLimits limits() const {
        return EngineLimits{rel_tol, abs_floor, max_depth, max_cells, parallel};
    }
};

struct LocalIntegrand {
    MultiIndexPair pair;
    int m;
    Polynomial phi;
    Weight chi;

    LocalIntegrand(MultiIndexPair p, int m_in, Polynomial phi_in, Weight chi_in);
    int n() const { return pair.n(); }
};

struct PsiResult {
    double value = 0.0;
    double err_est = 0.0;
    bool converged = true;
    long long cells = 0;
};

struct PairingResult {
    bool divergent = false;
    cplx value{0.0, 0.0};
    double err_est = 0.0;
    bool converged = true;
};

// ∏_j π / (a_j/m + b_j + 1): the t=0, χ≡1 closed form; the accuracy oracle
// for the quadrature.
double psi_zero_closed_form(const MultiIndexPair& pair, int m);

// ∫ χ |g|^{2/m} |Z|^{2B} dXdY for an arbitrary polynomial numerator g.
PsiResult weighted_power_integral(const Polynomial& g, const std::vector<int>& B, int m,
                                  const Weight& chi, const QuadratureConfig& cfg);

PsiResult psi(const LocalIntegrand& ig, cplx t, const QuadratureConfig& cfg);

// Ψ(t) − Ψ(0) evaluated as a single integral of the pointwise difference,
// so the error estimate applies to the difference itself instead of being
// swamped by cancellation of two large values.
PsiResult psi_delta(const LocalIntegrand& ig, cplx t, const QuadratureConfig& cfg);

// Exact rational integrability test for the pairing below: divergent iff
// some radial exponent a_j(2/m−2) + 2b_j + 1 + mindeg_j(φ₁) + mindeg_j(φ₂)
// is ≤ −1. Exact for polynomials, which is why the numeric path never needs
// a runtime blow-up detector.
bool pairing_diverges(const LocalIntegrand& base, const Polynomial& phi1,
                      const Polynomial& phi2);

// ∫ φ₁ φ̄₂ |Z^A|^{2/m−2} |Z|^{2B} χ dXdY. `base` supplies (A, B, m, χ) and
// must carry a zero φ of its own.
PairingResult hermitian_pairing(const LocalIntegrand& base, const Polynomial& phi1,
                                const Polynomial& phi2, const QuadratureConfig& cfg);

}  // namespace plurinorm
