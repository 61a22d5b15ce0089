#pragma once

// Cutoff weights χ on the closed unit polydisc. Three declared families,
// all angle-free (they depend on the radii only):
//   constant        χ = c, c ≥ 0
//   radial-poly     χ = polynomial in r_1², …, r_n² with real coefficients
//   separable-bump  χ = amp · ∏_j (1 − r_j²)^{p_j}
// Radial polynomials are checked for nonnegativity on a sample grid at
// construction; the other two families are nonnegative by shape.

#include <cmath>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plurinorm {

class Weight {
public:
    enum class Kind { Constant, RadialPoly, SeparableBump };

    struct RadialTerm {
        std::vector<int> pow;  // per-coordinate powers of r_j^2
        double coeff = 0.0;
    };

    static Weight constant(int n, double c) {
        check_dim(n);
        if (!(c >= 0.0)) throw std::invalid_argument("constant weight must be nonnegative");
        Weight w(n, Kind::Constant);
        w.const_ = c;
        return w;
    }

    static Weight one(int n) { return constant(n, 1.0); }

    static Weight radial_poly(int n, std::vector<RadialTerm> terms) {
        check_dim(n);
        for (const auto& t : terms) {
            if (static_cast<int>(t.pow.size()) != n)
                throw std::invalid_argument("radial weight term has wrong power length");
            for (int p : t.pow)
                if (p < 0) throw std::invalid_argument("negative power in radial weight term");
        }
        Weight w(n, Kind::RadialPoly);
        w.terms_ = std::move(terms);
        w.check_nonnegative_on_grid();
        return w;
    }

    static Weight separable_bump(int n, std::vector<int> orders, double amplitude = 1.0) {
        check_dim(n);
        if (static_cast<int>(orders.size()) != n)
            throw std::invalid_argument("bump weight has wrong order count");
        for (int p : orders)
            if (p < 0) throw std::invalid_argument("bump order must be nonnegative");
        if (!(amplitude > 0.0)) throw std::invalid_argument("bump amplitude must be positive");
        Weight w(n, Kind::SeparableBump);
        w.orders_ = std::move(orders);
        w.const_ = amplitude;
        return w;
    }

    Kind kind() const { return kind_; }
    int n() const { return n_; }
    double amplitude() const { return const_; }
    const std::vector<RadialTerm>& terms() const { return terms_; }
    const std::vector<int>& orders() const { return orders_; }

    double eval(std::span<const double> r) const {
        if (static_cast<int>(r.size()) != n_)
            throw std::invalid_argument("weight evaluated at wrong dimension");
        switch (kind_) {
            case Kind::Constant:
                return const_;
            case Kind::RadialPoly: {
                double acc = 0.0;
                for (const auto& t : terms_) {
                    double v = t.coeff;
                    for (int j = 0; j < n_; ++j) {
                        double u = r[j] * r[j];
                        for (int k = 0; k < t.pow[j]; ++k) v *= u;
                    }
                    acc += v;
                }
                return acc;
            }
            case Kind::SeparableBump: {
                double v = const_;
                for (int j = 0; j < n_; ++j) {
                    double b = 1.0 - r[j] * r[j];
                    if (b < 0.0) b = 0.0;  // clipped outside the closed disc
                    for (int k = 0; k < orders_[j]; ++k) v *= b;
                }
                return v;
            }
        }
        return 0.0;  // unreachable
    }

    double at_origin() const {
        std::vector<double> zero(n_, 0.0);
        return eval(zero);
    }

    // §2.4 condition (v) wants χ(0) ≠ 0; callers surface this as a warning,
    // not a hard error, since partition-of-unity pieces away from the
    // origin are legitimate inputs.
    bool origin_zero() const { return at_origin() == 0.0; }

    // True when χ factors as a product of per-coordinate functions, which
    // enables the 1-D product fast path in the integrator.
    bool separable() const {
        switch (kind_) {
            case Kind::Constant:
            case Kind::SeparableBump:
                return true;
            case Kind::RadialPoly:
                return n_ == 1 || terms_.size() <= 1;
        }
        return false;
    }

    // j-th factor of a separable weight; the scalar part is folded into
    // factor 0 so the product over j reproduces eval().
    double factor(int j, double r) const {
        if (!separable()) throw std::logic_error("weight is not separable");
        if (j < 0 || j >= n_) throw std::out_of_range("coordinate index out of range");
        switch (kind_) {
            case Kind::Constant:
                return j == 0 ? const_ : 1.0;
            case Kind::SeparableBump: {
                double b = 1.0 - r * r;
                if (b < 0.0) b = 0.0;
                double v = (j == 0) ? const_ : 1.0;
                for (int k = 0; k < orders_[j]; ++k) v *= b;
                return v;
            }
            case Kind::RadialPoly: {
                if (terms_.empty()) return 0.0;
                const auto& t = terms_[0];
                double v = (j == 0) ? t.coeff : 1.0;
                double u = r * r;
                for (int k = 0; k < t.pow[j]; ++k) v *= u;
                return v;
            }
        }
        return 0.0;  // unreachable
    }

    std::string describe() const {
        std::ostringstream os;
        switch (kind_) {
            case Kind::Constant:
                os << "constant(" << const_ << ")";
                break;
            case Kind::RadialPoly:
                os << "radial-poly(";
                for (size_t i = 0; i < terms_.size(); ++i) {
                    if (i) os << " + ";
                    os << terms_[i].coeff;
                    for (int j = 0; j < n_; ++j)
                        if (terms_[i].pow[j] > 0) os << " u" << (j + 1) << "^" << terms_[i].pow[j];
                }
                os << ")";
                break;
            case Kind::SeparableBump:
                os << "bump(amp=" << const_ << ", orders=";
                for (int j = 0; j < n_; ++j) os << (j ? "," : "") << orders_[j];
                os << ")";
                break;
        }
        return os.str();
    }

private:
    Weight(int n, Kind k) : n_(n), kind_(k) {}

    static void check_dim(int n) {
        if (n < 1) throw std::invalid_argument("weight dimension must be positive");
    }

    void check_nonnegative_on_grid() const {
        int steps = n_ <= 3 ? 16 : (n_ == 4 ? 8 : 4);
        std::vector<double> r(n_, 0.0);
        std::vector<int> idx(n_, 0);
        while (true) {
            for (int j = 0; j < n_; ++j) r[j] = static_cast<double>(idx[j]) / steps;
            if (eval(r) < 0.0) {
                std::ostringstream os;
                os << "radial weight is negative at r=(";
                for (int j = 0; j < n_; ++j) os << (j ? "," : "") << r[j];
                os << ")";
                throw std::invalid_argument(os.str());
            }
            int d = n_ - 1;
            while (d >= 0 && idx[d] == steps) idx[d--] = 0;
            if (d < 0) break;
            ++idx[d];
        }
    }

    int n_;
    Kind kind_;
    double const_ = 1.0;             // constant value or bump amplitude
    std::vector<RadialTerm> terms_;  // radial-poly case
    std::vector<int> orders_;        // bump case
};

}  // namespace plurinorm
