#include "plurinorm/resolution.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace plurinorm {

namespace {

std::string join_ids(const std::set<std::string>& ids) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& id : ids) {
        if (!first) os << ",";
        os << id;
        first = false;
    }
    os << "}";
    return os.str();
}

// Enumerates proper nonempty subsets obtained by dropping exactly one
// element; monotonicity for those implies it for all subsets by induction.
std::vector<std::set<std::string>> facets(const std::set<std::string>& s) {
    std::vector<std::set<std::string>> out;
    if (s.size() < 2) return out;
    for (const auto& drop : s) {
        std::set<std::string> t = s;
        t.erase(drop);
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

ResolutionModel::ResolutionModel(std::vector<Divisor> divisors, std::vector<Stratum> strata,
                                 std::set<std::string> points)
    : divisors_(std::move(divisors)), strata_(std::move(strata)), points_(std::move(points)) {
    if (points_.empty()) throw ModelValidationError("model has no base points");

    std::set<std::string> ids;
    for (const auto& d : divisors_) {
        if (d.id.empty()) throw ModelValidationError("divisor with empty id");
        if (!ids.insert(d.id).second)
            throw ModelValidationError("duplicate divisor id '" + d.id + "'");
        if (d.a < 1)
            throw ModelValidationError("divisor '" + d.id + "' has nonpositive multiplicity a=" +
                                       std::to_string(d.a));
        if (d.b < 0)
            throw ModelValidationError("divisor '" + d.id + "' has negative coefficient b=" +
                                       std::to_string(d.b));
    }

    std::map<std::set<std::string>, const Stratum*> by_key;
    for (const auto& s : strata_) {
        if (s.divisor_ids.empty()) throw ModelValidationError("stratum with empty divisor set");
        for (const auto& id : s.divisor_ids)
            if (!ids.count(id))
                throw ModelValidationError("stratum " + join_ids(s.divisor_ids) +
                                           " references unknown divisor '" + id + "'");
        if (s.image_points.empty())
            throw ModelValidationError("stratum " + join_ids(s.divisor_ids) +
                                       " has empty image point set");
        for (const auto& p : s.image_points)
            if (!points_.count(p))
                throw ModelValidationError("stratum " + join_ids(s.divisor_ids) +
                                           " maps to unknown point '" + p + "'");
        if (!by_key.emplace(s.divisor_ids, &s).second)
            throw ModelValidationError("duplicate stratum " + join_ids(s.divisor_ids));
    }

    // Every divisor must be declared as a singleton stratum, otherwise its
    // image is unknown and local invariants would be ill-defined.
    for (const auto& d : divisors_)
        if (!by_key.count({d.id}))
            throw ModelValidationError("divisor '" + d.id + "' has no singleton stratum");

    // Monotonicity: sub-strata exist and their images can only grow when
    // divisors are removed from the intersection.
    for (const auto& s : strata_) {
        for (const auto& sub : facets(s.divisor_ids)) {
            auto it = by_key.find(sub);
            if (it == by_key.end())
                throw ModelValidationError("stratum " + join_ids(s.divisor_ids) +
                                           " lacks declared sub-stratum " + join_ids(sub));
            const auto& small_img = s.image_points;
            const auto& big_img = it->second->image_points;
            if (!std::includes(big_img.begin(), big_img.end(), small_img.begin(),
                               small_img.end()))
                throw ModelValidationError("image of stratum " + join_ids(s.divisor_ids) +
                                           " is not contained in image of sub-stratum " +
                                           join_ids(sub));
        }
    }
}

const Divisor& ResolutionModel::divisor(const std::string& id) const {
    for (const auto& d : divisors_)
        if (d.id == id) return d;
    throw ModelValidationError("unknown divisor '" + id + "'");
}

void ResolutionModel::require_point(const std::string& point) const {
    if (!points_.count(point)) throw ModelValidationError("unknown point '" + point + "'");
}

ExtRational ResolutionModel::global_lct() const {
    ExtRational best = ExtRational::infinity();
    for (const auto& d : divisors_) {
        ExtRational r{ratio(d)};
        if (r < best) best = r;
    }
    return best;
}

ExtRational ResolutionModel::local_lct(const std::string& point) const {
    require_point(point);
    ExtRational best = ExtRational::infinity();
    for (const auto& s : strata_) {
        if (s.divisor_ids.size() != 1 || !s.image_points.count(point)) continue;
        ExtRational r{ratio(divisor(*s.divisor_ids.begin()))};
        if (r < best) best = r;
    }
    return best;
}

int ResolutionModel::local_mu(const std::string& point) const {
    ExtRational l = local_lct(point);
    if (l.is_infinite())
        throw ModelValidationError("local multiplicity undefined at '" + point +
                                   "': no divisor lies over the point");
    int mu = 0;
    for (const auto& s : strata_) {
        if (!s.image_points.count(point)) continue;
        bool all_min = true;
        for (const auto& id : s.divisor_ids)
            if (ExtRational{ratio(divisor(id))} != l) {
                all_min = false;
                break;
            }
        if (all_min) mu = std::max(mu, static_cast<int>(s.divisor_ids.size()));
    }
    return mu;
}

PointIndexReport ResolutionModel::point_report(const std::string& point) const {
    PointIndexReport rep;
    rep.point = point;
    rep.lct = local_lct(point);
    rep.mu = rep.lct.is_infinite() ? 0 : local_mu(point);
    return rep;
}

std::pair<CharIndex, std::set<std::string>> ResolutionModel::characteristic_indicatrix() const {
    if (divisors_.empty())
        throw ModelValidationError("characteristic indicatrix needs at least one divisor");
    ExtRational l = global_lct();
    if (l.is_infinite()) return {CharIndex(ExtRational::infinity(), 0), {}};
    int best_mu = 0;
    std::set<std::string> where;
    for (const auto& p : points_) {
        if (local_lct(p) != l) continue;
        int mu = local_mu(p);
        if (mu > best_mu) {
            best_mu = mu;
            where.clear();
        }
        if (mu == best_mu) where.insert(p);
    }
    return {CharIndex(l, best_mu), where};
}

bool ResolutionModel::mult_bound_check(const std::string& point, int mult, int n) const {
    if (mult < 1) throw ModelValidationError("multiplicity must be positive");
    if (n < 1) throw ModelValidationError("dimension must be positive");
    ExtRational l = local_lct(point);
    if (l.is_infinite()) return false;
    return l.value() <= Rational(n, mult);
}

}  // namespace plurinorm
