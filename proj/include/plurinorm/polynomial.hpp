#pragma once

// Sparse multivariate polynomials with complex coefficients over a fixed
// number of variables. Terms are kept in canonical (lexicographic) order
// with duplicates merged and zero coefficients dropped, so structural
// equality is meaningful and evaluation order is deterministic.

#include <algorithm>
#include <complex>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plurinorm {

using cplx = std::complex<double>;

// z^k for small nonnegative k by repeated multiplication; exponents in this
// project are single digits, so no need for square-and-multiply.
inline cplx cpow_nonneg(cplx z, int k) {
    cplx out(1.0, 0.0);
    for (int i = 0; i < k; ++i) out *= z;
    return out;
}

struct PolyTerm {
    std::vector<int> exp;
    cplx coeff;
};

class Polynomial {
public:
    explicit Polynomial(int n) : n_(n) {
        if (n < 1) throw std::invalid_argument("polynomial dimension must be positive");
    }

    Polynomial(int n, std::vector<PolyTerm> terms) : Polynomial(n) {
        for (auto& t : terms) {
            if (static_cast<int>(t.exp.size()) != n)
                throw std::invalid_argument("polynomial term has wrong exponent length");
            for (int e : t.exp)
                if (e < 0) throw std::invalid_argument("negative exponent in polynomial term");
        }
        terms_ = std::move(terms);
        normalize();
    }

    static Polynomial zero(int n) { return Polynomial(n); }

    static Polynomial constant(int n, cplx c) {
        return Polynomial(n, {PolyTerm{std::vector<int>(n, 0), c}});
    }

    static Polynomial monomial(std::vector<int> exp, cplx c) {
        int n = static_cast<int>(exp.size());
        return Polynomial(n, {PolyTerm{std::move(exp), c}});
    }

    int n() const { return n_; }
    const std::vector<PolyTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_monomial() const { return terms_.size() == 1; }

    cplx eval(std::span<const cplx> z) const {
        if (static_cast<int>(z.size()) != n_)
            throw std::invalid_argument("evaluation point has wrong dimension");
        cplx acc(0.0, 0.0);
        for (const auto& t : terms_) {
            cplx v = t.coeff;
            for (int j = 0; j < n_; ++j) v *= cpow_nonneg(z[j], t.exp[j]);
            acc += v;
        }
        return acc;
    }

    // Smallest exponent of variable j over all terms. Meaningless for the
    // zero polynomial; callers must branch on is_zero() first.
    int min_degree(int j) const {
        if (j < 0 || j >= n_) throw std::out_of_range("variable index out of range");
        if (terms_.empty()) throw std::logic_error("min_degree of the zero polynomial");
        int d = terms_[0].exp[j];
        for (const auto& t : terms_) d = std::min(d, t.exp[j]);
        return d;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& t : terms_) {
            int s = 0;
            for (int e : t.exp) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    // True iff the polynomial vanishes identically after setting the first
    // `mu` variables to zero, i.e. every term carries a positive power of
    // at least one of them.
    bool vanishes_on_first(int mu) const {
        if (mu < 0 || mu > n_) throw std::out_of_range("slice size out of range");
        for (const auto& t : terms_) {
            bool killed = false;
            for (int j = 0; j < mu; ++j)
                if (t.exp[j] > 0) {
                    killed = true;
                    break;
                }
            if (!killed) return false;
        }
        return true;
    }

    Polynomial permuted(const std::vector<int>& perm) const {
        if (static_cast<int>(perm.size()) != n_)
            throw std::invalid_argument("permutation has wrong length");
        std::vector<PolyTerm> out = terms_;
        for (auto& t : out) {
            std::vector<int> e(n_);
            for (int j = 0; j < n_; ++j) e[j] = t.exp[perm[j]];
            t.exp = std::move(e);
        }
        return Polynomial(n_, std::move(out));
    }

    Polynomial operator+(const Polynomial& o) const {
        require_same_dim(o);
        std::vector<PolyTerm> out = terms_;
        out.insert(out.end(), o.terms_.begin(), o.terms_.end());
        return Polynomial(n_, std::move(out));
    }

    Polynomial operator-(const Polynomial& o) const { return *this + o * cplx(-1.0, 0.0); }

    Polynomial operator*(cplx c) const {
        std::vector<PolyTerm> out = terms_;
        for (auto& t : out) t.coeff *= c;
        return Polynomial(n_, std::move(out));
    }

    bool operator==(const Polynomial& o) const {
        return n_ == o.n_ && terms_.size() == o.terms_.size() &&
               std::equal(terms_.begin(), terms_.end(), o.terms_.begin(),
                          [](const PolyTerm& a, const PolyTerm& b) {
                              return a.exp == b.exp && a.coeff == b.coeff;
                          });
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            if (!first) os << " + ";
            os << "(" << t.coeff.real();
            if (t.coeff.imag() >= 0)
                os << "+" << t.coeff.imag() << "i)";
            else
                os << t.coeff.imag() << "i)";
            for (int j = 0; j < n_; ++j) {
                if (t.exp[j] == 0) continue;
                os << " z" << (j + 1);
                if (t.exp[j] > 1) os << "^" << t.exp[j];
            }
            first = false;
        }
        return os.str();
    }

private:
    void require_same_dim(const Polynomial& o) const {
        if (n_ != o.n_) throw std::invalid_argument("polynomial dimension mismatch");
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const PolyTerm& a, const PolyTerm& b) { return a.exp < b.exp; });
        std::vector<PolyTerm> merged;
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().exp == t.exp)
                merged.back().coeff += t.coeff;
            else
                merged.push_back(std::move(t));
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const PolyTerm& t) {
                                        return t.coeff == cplx(0.0, 0.0);
                                    }),
                     merged.end());
        terms_ = std::move(merged);
    }

    int n_;
    std::vector<PolyTerm> terms_;
};

}  // namespace plurinorm
