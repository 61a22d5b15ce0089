#pragma once

// Chart-modeled global pseudonorm:  ⟨⟨s⟩⟩ = Σ_V ∫ χ_V |g_V|^{2/m} |Z|^{2B_V}.
// A cover fixes m and the chart data (weight and B per chart); sections over
// one cover form a complex-linear family through their per-chart numerators.
// Cross-cover operations are rejected — compatibility between covers is out
// of scope, so a section is only meaningful relative to its own cover.

#include <memory>
#include <string>
#include <vector>

#include "plurinorm/integrator.hpp"

namespace plurinorm {

struct ChartModel {
    std::string id;
    Weight weight;
    std::vector<int> B;
};

class CoverModel {
public:
    CoverModel(int m, int n, std::vector<ChartModel> charts);

    int m() const { return m_; }
    int n() const { return n_; }
    const std::vector<ChartModel>& charts() const { return charts_; }

    // Charts whose weight vanishes at the origin (flagged, not rejected).
    std::vector<std::string> zero_origin_charts() const;

private:
    int m_;
    int n_;
    std::vector<ChartModel> charts_;
};

class SectionModel {
public:
    SectionModel(const CoverModel& cover, std::vector<Polynomial> numerators);

    static SectionModel zero(const CoverModel& cover);

    const CoverModel& cover() const { return *cover_; }
    const std::vector<Polynomial>& numerators() const { return numerators_; }
    bool same_cover(const SectionModel& o) const { return cover_ == o.cover_; }
    bool is_zero() const;

    SectionModel operator+(const SectionModel& o) const;
    SectionModel operator*(cplx c) const;

private:
    const CoverModel* cover_;  // non-owning; the cover must outlive sections
    std::vector<Polynomial> numerators_;
};

// Σ over charts with propagated error estimate.
PsiResult pseudonorm_detailed(const SectionModel& s, const QuadratureConfig& cfg);
double pseudonorm(const SectionModel& s, const QuadratureConfig& cfg);

// ⟨⟨s1 − s2⟩⟩; symmetric, zero iff equal numerators (to tolerance).
double distance(const SectionModel& s1, const SectionModel& s2, const QuadratureConfig& cfg);

// |⟨⟨c·s⟩⟩ − |c|^{2/m}·⟨⟨s⟩⟩| / max(⟨⟨s⟩⟩, abs_floor).
double scaling_residual(const SectionModel& s, cplx c, const QuadratureConfig& cfg);

// ⟨⟨s1+s2⟩⟩ − ⟨⟨s1⟩⟩ − ⟨⟨s2⟩⟩; nonpositive up to quadrature noise.
double triangle_residual(const SectionModel& s1, const SectionModel& s2,
                         const QuadratureConfig& cfg);

}  // namespace plurinorm
