#include "plurinorm/integrator.hpp"

#include <cmath>

#include "plurinorm/rational.hpp"

namespace plurinorm {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// Polynomial flattened into contiguous arrays for the hot evaluation loop.
struct FlatPoly {
    int n;
    std::vector<cplx> coeff;
    std::vector<int> exps;  // n entries per term

    explicit FlatPoly(const Polynomial& p) : n(p.n()) {
        for (const auto& t : p.terms()) {
            coeff.push_back(t.coeff);
            exps.insert(exps.end(), t.exp.begin(), t.exp.end());
        }
    }

    cplx eval(const cplx* z) const {
        cplx acc(0.0, 0.0);
        const int* e = exps.data();
        for (size_t i = 0; i < coeff.size(); ++i, e += n) {
            cplx v = coeff[i];
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < e[j]; ++k) v *= z[j];
            acc += v;
        }
        return acc;
    }
};

double int_pow(double x, int k) {
    double v = 1.0;
    for (int i = 0; i < k; ++i) v *= x;
    return v;
}

PsiResult from_quad(const QuadResult& q, double scale) {
    PsiResult r;
    r.value = q.value * scale;
    r.err_est = q.err_est * std::abs(scale);
    r.converged = q.converged;
    r.cells = q.cells;
    return r;
}

// ∫_0^1 chi.factor(j, r) r^p dr with p > −1. For p < 0 the substitution
// s = r^{p+1} removes the endpoint singularity exactly.
QuadResult radial_factor_1d(const Weight& chi, int j, double p, int nodes,
                            const EngineLimits& lim) {
    AxisSpec ax{0.0, 1.0, nodes};
    if (p >= 0.0) {
        auto f = [&chi, j, p](const double* x) {
            return chi.factor(j, x[0]) * std::pow(x[0], p);
        };
        return adaptive_box_integrate(std::span(&ax, 1), f, lim);
    }
    const double g = 1.0 / (p + 1.0);
    auto f = [&chi, j, g](const double* x) { return chi.factor(j, std::pow(x[0], g)); };
    QuadResult r = adaptive_box_integrate(std::span(&ax, 1), f, lim);
    r.value *= g;
    r.err_est *= g;
    return r;
}

// ∫_{[0,1]^n} h(r) ∏ r_j^{q_j} dr with q_j > −1; axes with q_j < 0 are
// power-substituted so the transformed exponent is 1.
template <class H>
QuadResult radial_box(int n, const H& h, const std::vector<double>& q, int nodes,
                      const EngineLimits& lim) {
    std::vector<double> gamma(n, 1.0), expo(n);
    double jac = 1.0;
    for (int j = 0; j < n; ++j) {
        if (q[j] >= 0.0) {
            expo[j] = q[j];
        } else {
            gamma[j] = 2.0 / (q[j] + 1.0);
            expo[j] = 1.0;  // gamma*(q+1) − 1
        }
        jac *= gamma[j];
    }
    std::vector<AxisSpec> axes(n, AxisSpec{0.0, 1.0, nodes});
    auto f = [n, &h, &gamma, &expo](const double* s) {
        double r[kMaxDims];
        double v = 1.0;
        for (int j = 0; j < n; ++j) {
            r[j] = gamma[j] == 1.0 ? s[j] : std::pow(s[j], gamma[j]);
            v *= std::pow(s[j], expo[j]);
        }
        return v * h(r);
    };
    QuadResult r = adaptive_box_integrate(std::span(axes.data(), axes.size()), f, lim);
    r.value *= jac;
    r.err_est *= jac;
    return r;
}

// Product of per-coordinate 1-D integrals for a separable weight; the
// relative errors of nonnegative factors add.
PsiResult separable_product(const Weight& chi, const std::vector<double>& p, int nodes,
                            const QuadratureConfig& cfg, double prefactor) {
    const int n = chi.n();
    EngineLimits lim = cfg.limits();
    lim.rel_tol = cfg.rel_tol / (2.0 * n);
    PsiResult out;
    out.value = prefactor;
    double rel = 0.0;
    for (int j = 0; j < n; ++j) {
        QuadResult rj = radial_factor_1d(chi, j, p[j], nodes, lim);
        out.value *= kTwoPi * rj.value;
        out.cells += rj.cells;
        out.converged = out.converged && rj.converged;
        if (rj.value > 0.0) rel += rj.err_est / rj.value;
    }
    out.err_est = std::abs(out.value) * rel;
    return out;
}

Polynomial strip_min_degrees(const Polynomial& p, std::vector<int>& mins) {
    const int n = p.n();
    mins.assign(n, 0);
    for (int j = 0; j < n; ++j) mins[j] = p.min_degree(j);
    std::vector<PolyTerm> out = p.terms();
    for (auto& t : out)
        for (int j = 0; j < n; ++j) t.exp[j] -= mins[j];
    return Polynomial(n, std::move(out));
}

}  // namespace

void QuadratureConfig::validate() const {
    if (radial_nodes < 2 || radial_nodes > 32)
        throw std::invalid_argument("radial_nodes must be in [2,32]");
    if (angular_nodes < 2 || angular_nodes > 32)
        throw std::invalid_argument("angular_nodes must be in [2,32]");
    if (max_depth < 1) throw std::invalid_argument("max_depth must be positive");
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw std::invalid_argument("rel_tol must be in (0,1)");
    if (!(abs_floor > 0.0)) throw std::invalid_argument("abs_floor must be positive");
    if (max_cells < 1) throw std::invalid_argument("max_cells must be positive");
}

LocalIntegrand::LocalIntegrand(MultiIndexPair p, int m_in, Polynomial phi_in, Weight chi_in)
    : pair(std::move(p)), m(m_in), phi(std::move(phi_in)), chi(std::move(chi_in)) {
    if (m <= 2) throw std::invalid_argument("integrand requires m > 2");
    if (phi.n() != pair.n() || chi.n() != pair.n())
        throw std::invalid_argument("integrand dimension mismatch between A/B, phi and chi");
}

double psi_zero_closed_form(const MultiIndexPair& pair, int m) {
    if (m <= 2) throw std::invalid_argument("closed form requires m > 2");
    double v = 1.0;
    for (int j = 0; j < pair.n(); ++j)
        v *= M_PI / (static_cast<double>(pair.A[j]) / m + pair.B[j] + 1.0);
    return v;
}

PsiResult weighted_power_integral(const Polynomial& g, const std::vector<int>& B, int m,
                                  const Weight& chi, const QuadratureConfig& cfg) {
    cfg.validate();
    const int n = chi.n();
    if (g.n() != n || static_cast<int>(B.size()) != n)
        throw std::invalid_argument("numerator/exponent/weight dimension mismatch");
    if (m <= 2) throw std::invalid_argument("integral requires m > 2");
    for (int b : B)
        if (b < 0) throw std::invalid_argument("B entries must be nonnegative");
    if (2 * n > kMaxDims) throw std::invalid_argument("dimension too large for the engine");

    if (g.is_zero()) return PsiResult{0.0, 0.0, true, 0};
    const double inv_m = 1.0 / m;

    if (g.is_monomial()) {
        // |c Z^E|^{2/m} is angle-free, so the angular integral is (2π)^n
        // and only a radial box integral remains.
        const auto& t = g.terms()[0];
        const double pref = std::pow(std::norm(t.coeff), inv_m);
        std::vector<double> p(n);
        for (int j = 0; j < n; ++j) p[j] = 2.0 * t.exp[j] / m + 2.0 * B[j] + 1.0;
        if (chi.separable()) return separable_product(chi, p, cfg.radial_nodes, cfg, pref);
        auto h = [&chi, n](const double* r) { return chi.eval(std::span(r, size_t(n))); };
        std::vector<double> q = p;
        QuadResult qr = radial_box(n, h, q, cfg.radial_nodes, cfg.limits());
        double scale = pref * std::pow(kTwoPi, n);
        return from_quad(qr, scale);
    }

    FlatPoly fg(g);
    std::vector<int> bexp(n);
    for (int j = 0; j < n; ++j) bexp[j] = 2 * B[j] + 1;  // |Z|^{2B} plus the Jacobian
    auto f = [&fg, &chi, &bexp, n, inv_m](const double* x) {
        cplx z[kMaxDims];
        for (int j = 0; j < n; ++j) {
            double th = x[n + j];
            z[j] = x[j] * cplx(std::cos(th), std::sin(th));
        }
        cplx G = fg.eval(z);
        double v = chi.eval(std::span(x, size_t(n))) * std::pow(std::norm(G), inv_m);
        for (int j = 0; j < n; ++j) v *= int_pow(x[j], bexp[j]);
        return v;
    };
    std::vector<AxisSpec> axes;
    for (int j = 0; j < n; ++j) axes.push_back({0.0, 1.0, cfg.radial_nodes});
    for (int j = 0; j < n; ++j) axes.push_back({0.0, kTwoPi, cfg.angular_nodes});
    QuadResult qr = adaptive_box_integrate(std::span(axes.data(), axes.size()), f, cfg.limits());
    return from_quad(qr, 1.0);
}

PsiResult psi(const LocalIntegrand& ig, cplx t, const QuadratureConfig& cfg) {
    Polynomial g = Polynomial::monomial(ig.pair.A, cplx(1.0, 0.0));
    if (t != cplx(0.0, 0.0) && !ig.phi.is_zero()) g = g + ig.phi * t;
    return weighted_power_integral(g, ig.pair.B, ig.m, ig.chi, cfg);
}

PsiResult psi_delta(const LocalIntegrand& ig, cplx t, const QuadratureConfig& cfg) {
    cfg.validate();
    if (t == cplx(0.0, 0.0) || ig.phi.is_zero()) return PsiResult{0.0, 0.0, true, 0};
    const int n = ig.n();

    // Monomial φ = c·Z^D: factoring e^{iD·θ} out of |Z^A + t·c·Z^D| leaves
    // the angles only through u = (A−D)·θ, and u is uniform on the circle
    // under the torus measure (for A ≠ D), so all but one angular dimension
    // average away exactly. χ and |Z|^{2B} are radial, so the whole sweep
    // drops from 2n to n+1 dimensions (n when A = D).
    if (ig.phi.is_monomial() && n + 1 <= kMaxDims) {
        const PolyTerm& term = ig.phi.terms()[0];
        const cplx tc = t * term.coeff;
        const auto& A = ig.pair.A;
        const auto& D = term.exp;
        std::vector<int> bexp(n);
        for (int j = 0; j < n; ++j) bexp[j] = 2 * ig.pair.B[j] + 1;
        const double inv_m = 1.0 / ig.m;
        const Weight& chi = ig.chi;
        bool same = true;
        for (int j = 0; j < n; ++j)
            if (A[j] != D[j]) same = false;

        if (same) {
            const double factor = std::pow(std::norm(cplx(1.0, 0.0) + tc), inv_m) - 1.0;
            auto f = [&chi, &A, &bexp, n, inv_m, factor](const double* x) {
                double v = chi.eval(std::span(x, size_t(n))) * factor;
                for (int j = 0; j < n; ++j)
                    v *= std::pow(x[j], 2.0 * A[j] * inv_m) * int_pow(x[j], bexp[j]);
                return v;
            };
            std::vector<AxisSpec> axes;
            for (int j = 0; j < n; ++j) axes.push_back({0.0, 1.0, cfg.radial_nodes});
            QuadResult qr =
                adaptive_box_integrate(std::span(axes.data(), axes.size()), f, cfg.limits());
            return from_quad(qr, std::pow(kTwoPi, n));
        }

        auto f = [&chi, &A, &D, &bexp, n, inv_m, tc](const double* x) {
            double ra = 1.0, rd = 1.0;
            for (int j = 0; j < n; ++j) {
                ra *= int_pow(x[j], A[j]);
                rd *= int_pow(x[j], D[j]);
            }
            double u = x[n];
            double hi =
                std::pow(std::norm(cplx(std::cos(u), std::sin(u)) * ra + tc * rd), inv_m);
            double lo = std::pow(ra * ra, inv_m);
            double v = chi.eval(std::span(x, size_t(n))) * (hi - lo);
            for (int j = 0; j < n; ++j) v *= int_pow(x[j], bexp[j]);
            return v;
        };
        std::vector<AxisSpec> axes;
        for (int j = 0; j < n; ++j) axes.push_back({0.0, 1.0, cfg.radial_nodes});
        axes.push_back({0.0, kTwoPi, cfg.angular_nodes});
        QuadResult qr =
            adaptive_box_integrate(std::span(axes.data(), axes.size()), f, cfg.limits());
        return from_quad(qr, std::pow(kTwoPi, n - 1));
    }

    if (2 * n > kMaxDims) throw std::invalid_argument("dimension too large for the engine");
    FlatPoly fphi(ig.phi);
    const auto& A = ig.pair.A;
    std::vector<int> bexp(n);
    for (int j = 0; j < n; ++j) bexp[j] = 2 * ig.pair.B[j] + 1;
    const double inv_m = 1.0 / ig.m;
    const Weight& chi = ig.chi;

    auto f = [&fphi, &chi, &A, &bexp, n, inv_m, t](const double* x) {
        cplx z[kMaxDims];
        for (int j = 0; j < n; ++j) {
            double th = x[n + j];
            z[j] = x[j] * cplx(std::cos(th), std::sin(th));
        }
        cplx za(1.0, 0.0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < A[j]; ++k) za *= z[j];
        cplx pert = fphi.eval(z);
        double hi = std::pow(std::norm(za + t * pert), inv_m);
        double lo = std::pow(std::norm(za), inv_m);
        double v = chi.eval(std::span(x, size_t(n))) * (hi - lo);
        for (int j = 0; j < n; ++j) v *= int_pow(x[j], bexp[j]);
        return v;
    };
    std::vector<AxisSpec> axes;
    for (int j = 0; j < n; ++j) axes.push_back({0.0, 1.0, cfg.radial_nodes});
    for (int j = 0; j < n; ++j) axes.push_back({0.0, kTwoPi, cfg.angular_nodes});
    QuadResult qr = adaptive_box_integrate(std::span(axes.data(), axes.size()), f, cfg.limits());
    return from_quad(qr, 1.0);
}

bool pairing_diverges(const LocalIntegrand& base, const Polynomial& phi1,
                      const Polynomial& phi2) {
    if (phi1.is_zero() || phi2.is_zero()) return false;
    for (int j = 0; j < base.n(); ++j) {
        Rational e(static_cast<long long>(base.pair.A[j]) * (2 - 2 * base.m), base.m);
        e = e + Rational(2 * base.pair.B[j] + 1 + phi1.min_degree(j) + phi2.min_degree(j));
        if (e <= Rational(-1)) return true;
    }
    return false;
}

PairingResult hermitian_pairing(const LocalIntegrand& base, const Polynomial& phi1,
                                const Polynomial& phi2, const QuadratureConfig& cfg) {
    cfg.validate();
    const int n = base.n();
    if (!base.phi.is_zero())
        throw std::invalid_argument("pairing base must carry a zero perturbation");
    if (phi1.n() != n || phi2.n() != n)
        throw std::invalid_argument("pairing numerator dimension mismatch");
    if (2 * n > kMaxDims) throw std::invalid_argument("dimension too large for the engine");

    PairingResult out;
    if (phi1.is_zero() || phi2.is_zero()) return out;
    if (pairing_diverges(base, phi1, phi2)) {
        out.divergent = true;
        return out;
    }

    const double two_over_m_minus_2 = 2.0 / base.m - 2.0;
    const auto& A = base.pair.A;
    const auto& B = base.pair.B;

    if (phi1.is_monomial() && phi2.is_monomial()) {
        const auto& t1 = phi1.terms()[0];
        const auto& t2 = phi2.terms()[0];
        // Every weight family is angle-free, so distinct monomials are
        // orthogonal: the θ_j integral of e^{i(e1−e2)θ_j} vanishes.
        if (t1.exp != t2.exp) return out;
        cplx c = t1.coeff * std::conj(t2.coeff);
        std::vector<double> q(n);
        for (int j = 0; j < n; ++j)
            q[j] = A[j] * two_over_m_minus_2 + 2.0 * B[j] + 2.0 * t1.exp[j] + 1.0;
        PsiResult radial;
        if (base.chi.separable()) {
            radial = separable_product(base.chi, q, cfg.radial_nodes, cfg, 1.0);
        } else {
            auto h = [&chi = base.chi, n](const double* r) {
                return chi.eval(std::span(r, size_t(n)));
            };
            QuadResult qr = radial_box(n, h, q, cfg.radial_nodes, cfg.limits());
            radial = from_quad(qr, std::pow(kTwoPi, n));
        }
        out.value = c * radial.value;
        out.err_est = std::abs(c) * radial.err_est;
        out.converged = radial.converged;
        return out;
    }

    // General path: pull the minimum degrees out of both numerators so the
    // radial profile is explicit, then power-substitute any axis whose
    // exponent dips below zero.
    std::vector<int> d1, d2;
    Polynomial p1 = strip_min_degrees(phi1, d1);
    Polynomial p2 = strip_min_degrees(phi2, d2);
    FlatPoly f1(p1), f2(p2);
    std::vector<double> gamma(n, 1.0), expo(n);
    std::vector<int> twist(n);
    double jac = 1.0;
    for (int j = 0; j < n; ++j) {
        double Q = A[j] * two_over_m_minus_2 + 2.0 * B[j] + d1[j] + d2[j] + 1.0;
        if (Q >= 0.0) {
            expo[j] = Q;
        } else {
            gamma[j] = 2.0 / (Q + 1.0);
            expo[j] = 1.0;
        }
        jac *= gamma[j];
        twist[j] = d1[j] - d2[j];
    }
    const Weight& chi = base.chi;

    auto eval_part = [&](bool real_part) {
        auto f = [&, real_part](const double* x) {
            double r[kMaxDims];
            cplx z[kMaxDims];
            double mag = 1.0;
            double ang = 0.0;
            for (int j = 0; j < n; ++j) {
                r[j] = gamma[j] == 1.0 ? x[j] : std::pow(x[j], gamma[j]);
                mag *= std::pow(x[j], expo[j]);
                double th = x[n + j];
                z[j] = r[j] * cplx(std::cos(th), std::sin(th));
                ang += twist[j] * th;
            }
            cplx val = f1.eval(z) * std::conj(f2.eval(z)) * cplx(std::cos(ang), std::sin(ang));
            mag *= chi.eval(std::span(r, size_t(n)));
            return mag * (real_part ? val.real() : val.imag());
        };
        std::vector<AxisSpec> axes;
        for (int j = 0; j < n; ++j) axes.push_back({0.0, 1.0, cfg.radial_nodes});
        for (int j = 0; j < n; ++j) axes.push_back({0.0, kTwoPi, cfg.angular_nodes});
        return adaptive_box_integrate(std::span(axes.data(), axes.size()), f, cfg.limits());
    };
    QuadResult re = eval_part(true);
    QuadResult im = eval_part(false);
    out.value = cplx(re.value * jac, im.value * jac);
    out.err_est = (re.err_est + im.err_est) * jac;
    out.converged = re.converged && im.converged;
    return out;
}

}  // namespace plurinorm
