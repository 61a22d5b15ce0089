#include "plurinorm/pseudonorm.hpp"

#include <cmath>
#include <set>

namespace plurinorm {

CoverModel::CoverModel(int m, int n, std::vector<ChartModel> charts)
    : m_(m), n_(n), charts_(std::move(charts)) {
    if (m_ < 3) throw std::invalid_argument("cover requires m >= 3");
    if (n_ < 1) throw std::invalid_argument("cover dimension must be positive");
    if (charts_.empty()) throw std::invalid_argument("cover must contain at least one chart");
    std::set<std::string> ids;
    for (const auto& c : charts_) {
        if (c.id.empty()) throw std::invalid_argument("chart with empty id");
        if (!ids.insert(c.id).second)
            throw std::invalid_argument("duplicate chart id '" + c.id + "'");
        if (c.weight.n() != n_)
            throw std::invalid_argument("chart '" + c.id + "' weight has wrong dimension");
        if (static_cast<int>(c.B.size()) != n_)
            throw std::invalid_argument("chart '" + c.id + "' B has wrong length");
        for (int b : c.B)
            if (b < 0)
                throw std::invalid_argument("chart '" + c.id + "' has negative B entry");
    }
}

std::vector<std::string> CoverModel::zero_origin_charts() const {
    std::vector<std::string> out;
    for (const auto& c : charts_)
        if (c.weight.origin_zero()) out.push_back(c.id);
    return out;
}

SectionModel::SectionModel(const CoverModel& cover, std::vector<Polynomial> numerators)
    : cover_(&cover), numerators_(std::move(numerators)) {
    if (numerators_.size() != cover.charts().size())
        throw std::invalid_argument("section needs exactly one numerator per chart");
    for (const auto& g : numerators_)
        if (g.n() != cover.n())
            throw std::invalid_argument("section numerator has wrong dimension");
}

SectionModel SectionModel::zero(const CoverModel& cover) {
    std::vector<Polynomial> nums(cover.charts().size(), Polynomial::zero(cover.n()));
    return SectionModel(cover, std::move(nums));
}

bool SectionModel::is_zero() const {
    for (const auto& g : numerators_)
        if (!g.is_zero()) return false;
    return true;
}

SectionModel SectionModel::operator+(const SectionModel& o) const {
    if (!same_cover(o)) throw std::invalid_argument("sections live over different covers");
    std::vector<Polynomial> nums;
    nums.reserve(numerators_.size());
    for (size_t i = 0; i < numerators_.size(); ++i) nums.push_back(numerators_[i] + o.numerators_[i]);
    return SectionModel(*cover_, std::move(nums));
}

SectionModel SectionModel::operator*(cplx c) const {
    std::vector<Polynomial> nums;
    nums.reserve(numerators_.size());
    for (const auto& g : numerators_) nums.push_back(g * c);
    return SectionModel(*cover_, std::move(nums));
}

PsiResult pseudonorm_detailed(const SectionModel& s, const QuadratureConfig& cfg) {
    PsiResult total;
    const auto& charts = s.cover().charts();
    for (size_t i = 0; i < charts.size(); ++i) {
        PsiResult r = weighted_power_integral(s.numerators()[i], charts[i].B, s.cover().m(),
                                              charts[i].weight, cfg);
        total.value += r.value;
        total.err_est += r.err_est;
        total.converged = total.converged && r.converged;
        total.cells += r.cells;
    }
    return total;
}

double pseudonorm(const SectionModel& s, const QuadratureConfig& cfg) {
    return pseudonorm_detailed(s, cfg).value;
}

double distance(const SectionModel& s1, const SectionModel& s2, const QuadratureConfig& cfg) {
    if (!s1.same_cover(s2)) throw std::invalid_argument("distance requires a shared cover");
    return pseudonorm(s1 + s2 * cplx(-1.0, 0.0), cfg);
}

double scaling_residual(const SectionModel& s, cplx c, const QuadratureConfig& cfg) {
    double base = pseudonorm(s, cfg);
    double scaled = pseudonorm(s * c, cfg);
    double predicted = std::pow(std::norm(c), 1.0 / s.cover().m()) * base;
    return std::abs(scaled - predicted) / std::max(base, cfg.abs_floor);
}

double triangle_residual(const SectionModel& s1, const SectionModel& s2,
                         const QuadratureConfig& cfg) {
    if (!s1.same_cover(s2)) throw std::invalid_argument("triangle residual requires a shared cover");
    return pseudonorm(s1 + s2, cfg) - pseudonorm(s1, cfg) - pseudonorm(s2, cfg);
}

}  // namespace plurinorm
