#pragma once

// Declarative simple-normal-crossing resolution models and the singularity
// invariants read off them. A model lists divisors with discrepancy data
// (a, b), intersection strata (a set of divisors that meet, with the image
// points of that intersection downstairs), and the point set of the base.
// All invariants are exact rational arithmetic over this incidence data;
// no geometry beyond membership is involved.

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "plurinorm/charindex.hpp"
#include "plurinorm/rational.hpp"

namespace plurinorm {

struct ModelValidationError : std::runtime_error {
    explicit ModelValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Divisor {
    std::string id;
    int a = 1;  // multiplicity of the divisor in the pullback
    int b = 0;  // discrepancy coefficient
};

struct Stratum {
    std::set<std::string> divisor_ids;
    std::set<std::string> image_points;
};

struct PointIndexReport {
    std::string point;
    ExtRational lct;
    int mu = 0;  // 0 encodes "undefined" when lct is infinite
};

class ResolutionModel {
public:
    // Validates referential integrity, singleton coverage (every divisor has
    // an image), and stratum monotonicity: every nonempty subset of a
    // stratum's divisor set must itself be declared, with image points
    // containing those of the larger stratum.
    ResolutionModel(std::vector<Divisor> divisors, std::vector<Stratum> strata,
                    std::set<std::string> points);

    const std::vector<Divisor>& divisors() const { return divisors_; }
    const std::vector<Stratum>& strata() const { return strata_; }
    const std::set<std::string>& points() const { return points_; }

    ExtRational global_lct() const;
    ExtRational local_lct(const std::string& point) const;
    int local_mu(const std::string& point) const;  // throws if local_lct infinite
    PointIndexReport point_report(const std::string& point) const;

    // Global characteristic index with the set of points achieving it,
    // computed from strata whose divisors all achieve the global lct.
    std::pair<CharIndex, std::set<std::string>> characteristic_indicatrix() const;

    // Audit of the inequality lct(D,x) <= n / mult against a user-asserted
    // multiplicity; exact rational comparison.
    bool mult_bound_check(const std::string& point, int mult, int n) const;

private:
    const Divisor& divisor(const std::string& id) const;
    void require_point(const std::string& point) const;
    Rational ratio(const Divisor& d) const { return Rational(d.b + 1, d.a); }

    std::vector<Divisor> divisors_;
    std::vector<Stratum> strata_;
    std::set<std::string> points_;
};

}  // namespace plurinorm
