#pragma once

// Adaptive tensor-product cubature over axis-aligned boxes with embedded
// Gauss-Legendre error estimates.
//
// The refinement loop is batched: each round selects the worst cells in a
// deterministic order (error descending, creation id ascending), splits
// them at the midpoint of a probed direction, and evaluates the children —
// possibly in parallel. Cell evaluations are independent and the final
// reduction runs in canonical id order with compensated summation, so the
// result is bit-identical for any thread count, including the serial path.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace plurinorm {

inline constexpr int kMaxDims = 8;

struct AxisSpec {
    double lo = 0.0;
    double hi = 1.0;
    int nodes = 8;  // Gauss-Legendre points per cell along this axis
};

struct EngineLimits {
    double rel_tol = 1e-7;
    double abs_floor = 1e-12;
    int max_depth = 30;
    long long max_cells = 400000;
    bool parallel = true;  // false = serial reference path (same arithmetic)
};

struct QuadResult {
    double value = 0.0;
    double err_est = 0.0;
    bool converged = true;
    long long cells = 0;
};

struct GLRule {
    std::vector<double> x;  // nodes on (-1, 1)
    std::vector<double> w;
};

// Nodes and weights of the q-point Gauss-Legendre rule (Newton on P_q).
GLRule gl_rule(int q);

namespace qdetail {

struct Cell {
    std::array<double, kMaxDims> lo{};
    std::array<double, kMaxDims> wid{};
    long long id = 0;
    int depth = 0;
    double val = 0.0;
    double err = 0.0;
    int split_dim = 0;
};

// Tensor-product rule over one cell. f takes a d-vector.
template <class F>
double tensor_sum(const F& f, int d, const Cell& c, const GLRule* const* rules) {
    int cnt[kMaxDims];
    double xs[kMaxDims][32];
    double ws[kMaxDims][32];
    long long total = 1;
    for (int k = 0; k < d; ++k) {
        const GLRule& R = *rules[k];
        cnt[k] = static_cast<int>(R.x.size());
        for (int i = 0; i < cnt[k]; ++i) {
            xs[k][i] = c.lo[k] + 0.5 * c.wid[k] * (1.0 + R.x[i]);
            ws[k][i] = 0.5 * c.wid[k] * R.w[i];
        }
        total *= cnt[k];
    }
    int idx[kMaxDims] = {0};
    double x[kMaxDims] = {};
    double acc = 0.0;
    for (long long p = 0; p < total; ++p) {
        double w = 1.0;
        for (int k = 0; k < d; ++k) {
            x[k] = xs[k][idx[k]];
            w *= ws[k][idx[k]];
        }
        acc += w * f(x);
        int k = d - 1;
        while (k >= 0 && ++idx[k] == cnt[k]) idx[k--] = 0;
    }
    return acc;
}

template <class F>
void eval_cell(const F& f, int d, const GLRule* const* hi, const GLRule* const* lo, Cell& c) {
    double vh = tensor_sum(f, d, c, hi);
    double vl = tensor_sum(f, d, c, lo);
    c.val = vh;
    c.err = std::abs(vh - vl);

    // Split-direction probe: central second difference along each axis.
    double ctr[kMaxDims] = {};
    for (int k = 0; k < d; ++k) ctr[k] = c.lo[k] + 0.5 * c.wid[k];
    double f0 = f(ctr);
    double best = 0.0;
    int bd = -1;
    double x[kMaxDims] = {};
    for (int k = 0; k < d; ++k) {
        for (int j = 0; j < d; ++j) x[j] = ctr[j];
        double h = 0.3 * c.wid[k];
        x[k] = ctr[k] + h;
        double fp = f(x);
        x[k] = ctr[k] - h;
        double fm = f(x);
        double s = std::abs(fp + fm - 2.0 * f0);
        if (bd < 0 || s > best) {
            best = s;
            bd = k;
        }
    }
    if (best == 0.0) {  // flat probe: fall back to the widest axis
        bd = 0;
        for (int k = 1; k < d; ++k)
            if (c.wid[k] > c.wid[bd]) bd = k;
    }
    c.split_dim = bd;
}

}  // namespace qdetail

template <class F>
QuadResult adaptive_box_integrate(std::span<const AxisSpec> axes, const F& f,
                                  const EngineLimits& lim) {
    const int d = static_cast<int>(axes.size());
    if (d < 1 || d > kMaxDims) throw std::invalid_argument("integration dimension out of range");
    if (!(lim.rel_tol > 0.0 && lim.rel_tol < 1.0))
        throw std::invalid_argument("rel_tol must lie in (0,1)");
    if (!(lim.abs_floor > 0.0)) throw std::invalid_argument("abs_floor must be positive");
    if (lim.max_depth < 1 || lim.max_cells < 1)
        throw std::invalid_argument("depth and cell budgets must be positive");

    std::map<int, GLRule> rule_cache;
    auto rule = [&rule_cache](int q) -> const GLRule* {
        auto it = rule_cache.find(q);
        if (it == rule_cache.end()) it = rule_cache.emplace(q, gl_rule(q)).first;
        return &it->second;
    };
    const GLRule* hi[kMaxDims] = {};
    const GLRule* lo[kMaxDims] = {};
    for (int k = 0; k < d; ++k) {
        int q = axes[k].nodes;
        if (q < 2 || q > 32) throw std::invalid_argument("node count per axis must be in [2,32]");
        if (!(axes[k].hi > axes[k].lo)) throw std::invalid_argument("empty integration axis");
        hi[k] = rule(q);
        lo[k] = rule(std::max(q - 2, 1));
    }

    qdetail::Cell root;
    for (int k = 0; k < d; ++k) {
        root.lo[k] = axes[k].lo;
        root.wid[k] = axes[k].hi - axes[k].lo;
    }
    qdetail::eval_cell(f, d, hi, lo, root);

    std::vector<qdetail::Cell> active{root};
    long long next_id = 1;
    // Running totals drive the stopping test only; they are updated in a
    // thread-independent order, and the reported value is re-accumulated
    // canonically at the end.
    long double run_val = root.val;
    long double run_err = root.err;
    bool converged = false;

    std::vector<size_t> cand;
    std::vector<qdetail::Cell> parents, children;
    while (true) {
        double target = std::max(lim.rel_tol * std::abs(static_cast<double>(run_val)),
                                 lim.abs_floor);
        if (static_cast<double>(run_err) <= target) {
            converged = true;
            break;
        }
        if (static_cast<long long>(active.size()) >= lim.max_cells) break;
        cand.clear();
        for (size_t i = 0; i < active.size(); ++i)
            if (active[i].depth < lim.max_depth) cand.push_back(i);
        if (cand.empty()) break;

        size_t batch = std::clamp(active.size() / 8, size_t{64}, size_t{4096});
        std::sort(cand.begin(), cand.end(), [&active](size_t a, size_t b) {
            if (active[a].err != active[b].err) return active[a].err > active[b].err;
            return active[a].id < active[b].id;
        });
        if (cand.size() > batch) cand.resize(batch);
        const int nsel = static_cast<int>(cand.size());

        parents.assign(nsel, {});
        children.assign(2 * static_cast<size_t>(nsel), {});
        for (int i = 0; i < nsel; ++i) {
            const qdetail::Cell& p = active[cand[i]];
            parents[i] = p;
            int sd = p.split_dim;
            qdetail::Cell a = p, b = p;
            a.wid[sd] = b.wid[sd] = 0.5 * p.wid[sd];
            b.lo[sd] = a.lo[sd] + a.wid[sd];
            a.depth = b.depth = p.depth + 1;
            a.id = next_id + 2 * i;
            b.id = next_id + 2 * i + 1;
            children[2 * i] = a;
            children[2 * i + 1] = b;
        }
        next_id += 2 * nsel;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 1) if (lim.parallel)
#endif
        for (int i = 0; i < 2 * nsel; ++i) qdetail::eval_cell(f, d, hi, lo, children[i]);

        for (int i = 0; i < nsel; ++i) {
            run_val += children[2 * i].val + children[2 * i + 1].val - parents[i].val;
            run_err += children[2 * i].err + children[2 * i + 1].err - parents[i].err;
            active[cand[i]] = children[2 * i];
            active.push_back(children[2 * i + 1]);
        }
    }

    std::sort(active.begin(), active.end(),
              [](const qdetail::Cell& a, const qdetail::Cell& b) { return a.id < b.id; });
    double val = 0.0, vc = 0.0, err = 0.0, ec = 0.0;
    for (const auto& c : active) {
        double y = c.val - vc;
        double t = val + y;
        vc = (t - val) - y;
        val = t;
        y = c.err - ec;
        t = err + y;
        ec = (t - err) - y;
        err = t;
    }
    QuadResult res;
    res.value = val;
    res.err_est = err;
    res.converged = converged;
    res.cells = static_cast<long long>(active.size());
    return res;
}

// Non-adaptive reference: a uniform dyadic grid with 2^level panels per
// axis, tensor Gauss-Legendre in each panel, plain serial loops. Used by
// the tests as an independent cross-check of the adaptive engine.
template <class F>
double fixed_grid_integrate(std::span<const AxisSpec> axes, const F& f, int level) {
    const int d = static_cast<int>(axes.size());
    if (d < 1 || d > kMaxDims) throw std::invalid_argument("integration dimension out of range");
    if (level < 0 || level > 12) throw std::invalid_argument("grid level out of range");
    std::map<int, GLRule> rules;
    const GLRule* rr[kMaxDims];
    for (int k = 0; k < d; ++k) {
        auto it = rules.find(axes[k].nodes);
        if (it == rules.end()) it = rules.emplace(axes[k].nodes, gl_rule(axes[k].nodes)).first;
        rr[k] = &it->second;
    }
    const long long panels = 1LL << level;
    long long total_panels = 1;
    for (int k = 0; k < d; ++k) total_panels *= panels;

    double acc = 0.0, comp = 0.0;
    std::vector<long long> pidx(d, 0);
    qdetail::Cell c;
    for (long long p = 0; p < total_panels; ++p) {
        for (int k = 0; k < d; ++k) {
            double w = (axes[k].hi - axes[k].lo) / static_cast<double>(panels);
            c.lo[k] = axes[k].lo + w * static_cast<double>(pidx[k]);
            c.wid[k] = w;
        }
        double y = qdetail::tensor_sum(f, d, c, rr) - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        int k = d - 1;
        while (k >= 0 && ++pidx[k] == panels) pidx[k--] = 0;
    }
    return acc;
}

}  // namespace plurinorm
