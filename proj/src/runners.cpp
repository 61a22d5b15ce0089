#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "plurinorm/report.hpp"
#include "plurinorm/scenario.hpp"

namespace plurinorm {

namespace {

// ---------------------------------------------------------------------------
// Shared runner plumbing.

std::string sanitize(const std::string& s) {
    std::string out;
    for (char ch : s) {
        bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                  (ch >= '0' && ch <= '9') || ch == '-' || ch == '_';
        out.push_back(ok ? ch : '_');
    }
    if (out.empty()) out = "scenario";
    return out;
}

void prepare_out_dir(const RunOptions& opt) {
    if (opt.out_dir.empty() || opt.out_dir == ".") return;
    std::error_code ec;
    std::filesystem::create_directories(opt.out_dir, ec);
    if (ec)
        throw ScenarioError("cannot create output directory '" + opt.out_dir +
                            "': " + ec.message());
}

std::string out_path(const RunOptions& opt, const std::string& stem, const std::string& suffix) {
    std::filesystem::path dir = opt.out_dir.empty() ? "." : opt.out_dir;
    return (dir / (stem + suffix)).string();
}

void apply_threads(const RunOptions& opt) {
#ifdef _OPENMP
    if (opt.threads > 0) omp_set_num_threads(opt.threads);
#else
    (void)opt;
#endif
}

QuadratureConfig with_overrides(QuadratureConfig q, const RunOptions& opt) {
    if (opt.rel_tol) q.rel_tol = *opt.rel_tol;
    if (opt.max_depth) q.max_depth = *opt.max_depth;
    if (opt.threads == 1) q.parallel = false;
    try {
        q.validate();
    } catch (const std::invalid_argument& e) {
        throw ScenarioError(std::string("invalid quadrature override: ") + e.what());
    }
    return q;
}

void emit(RunOutcome& out, const std::string& path, const std::string& content) {
    write_file(path, content);
    out.files.push_back(path);
}

[[noreturn]] void wrong_kind(const char* cmd, const char* wanted, const Scenario& sc) {
    throw ScenarioError(std::string(cmd) + " needs a " + wanted + " scenario (got " +
                        kind_name(sc.kind) + ")");
}

// ---------------------------------------------------------------------------
// Sweep evaluation and emission.

bool all_converged(const PsiSamples& s) {
    for (char ok : s.budget_ok)
        if (!ok) return false;
    return true;
}

std::string sweep_csv(const PsiSamples& s) {
    std::string out = "t,delta,err_est,converged\n";
    for (int k = 0; k < s.count(); ++k) {
        out += fmt_double(s.t_values[static_cast<std::size_t>(k)]);
        out += ',';
        out += fmt_double(s.delta_values[static_cast<std::size_t>(k)]);
        out += ',';
        out += fmt_double(s.err_ests[static_cast<std::size_t>(k)]);
        out += ',';
        out += s.budget_ok[static_cast<std::size_t>(k)] ? '1' : '0';
        out += '\n';
    }
    return out;
}

Json samples_json(const PsiSamples& s) {
    Json arr = Json::array();
    for (int k = 0; k < s.count(); ++k) {
        Json row = Json::object();
        row.set("t", Json::real(s.t_values[static_cast<std::size_t>(k)]));
        row.set("delta", Json::real(s.delta_values[static_cast<std::size_t>(k)]));
        row.set("err_est", Json::real(s.err_ests[static_cast<std::size_t>(k)]));
        row.set("converged", Json::boolean(s.budget_ok[static_cast<std::size_t>(k)] != 0));
        arr.push(std::move(row));
    }
    return arr;
}

PsiSamples sweep_local(const LocalPsiScenario& L, const QuadratureConfig& q) {
    LocalIntegrand ig(L.pair, L.m, L.phi, L.chi);
    return sample_psi(ig, L.sweep.t0, L.sweep.ratio, L.sweep.count, q);
}

struct CoverSweep {
    std::vector<std::pair<std::string, PsiSamples>> charts;
    PsiSamples total;
};

// Chart-by-chart sweep with the deltas summed pointwise; identical chart
// integrands are evaluated once.
CoverSweep sweep_cover(const GlobalCoverScenario& g, const QuadratureConfig& q) {
    CoverSweep out;
    std::map<std::string, std::size_t> memo;  // integrand signature → chart slot
    for (const CoverChartSpec& c : g.charts) {
        std::ostringstream key;
        key << "A=";
        for (int a : c.pair.A) key << a << ',';
        key << ";B=";
        for (int b : c.pair.B) key << b << ',';
        key << ";phi=" << c.phi.str() << ";chi=" << c.chi.describe();
        auto it = memo.find(key.str());
        if (it != memo.end()) {
            out.charts.emplace_back(c.id, out.charts[it->second].second);
        } else {
            LocalIntegrand ig(c.pair, g.m, c.phi, c.chi);
            out.charts.emplace_back(c.id,
                                    sample_psi(ig, g.sweep.t0, g.sweep.ratio, g.sweep.count, q));
            memo.emplace(key.str(), out.charts.size() - 1);
        }
    }
    out.total = out.charts.front().second;
    for (std::size_t i = 1; i < out.charts.size(); ++i) {
        const PsiSamples& s = out.charts[i].second;
        for (int k = 0; k < s.count(); ++k) {
            out.total.delta_values[static_cast<std::size_t>(k)] +=
                s.delta_values[static_cast<std::size_t>(k)];
            out.total.err_ests[static_cast<std::size_t>(k)] +=
                s.err_ests[static_cast<std::size_t>(k)];
            if (!s.budget_ok[static_cast<std::size_t>(k)])
                out.total.budget_ok[static_cast<std::size_t>(k)] = 0;
        }
    }
    return out;
}

void emit_local_sweep(RunOutcome& out, const RunOptions& opt, const std::string& stem,
                      const std::string& name, const PsiSamples& s) {
    if (opt.format == OutputFormat::Csv) {
        emit(out, out_path(opt, stem, ".sweep.csv"), sweep_csv(s));
    } else {
        Json doc = Json::object();
        doc.set("schema", Json::str("plurinorm/sweep-v1"));
        doc.set("name", Json::str(name));
        doc.set("kind", Json::str("local-psi"));
        doc.set("samples", samples_json(s));
        emit(out, out_path(opt, stem, ".sweep.json"), doc.dump());
    }
}

void emit_cover_sweep(RunOutcome& out, const RunOptions& opt, const std::string& stem,
                      const std::string& name, const CoverSweep& cs) {
    if (opt.format == OutputFormat::Csv) {
        for (const auto& [id, s] : cs.charts)
            emit(out, out_path(opt, stem, "." + sanitize(id) + ".sweep.csv"), sweep_csv(s));
        emit(out, out_path(opt, stem, ".global.sweep.csv"), sweep_csv(cs.total));
    } else {
        Json doc = Json::object();
        doc.set("schema", Json::str("plurinorm/sweep-v1"));
        doc.set("name", Json::str(name));
        doc.set("kind", Json::str("global-cover"));
        Json charts = Json::array();
        for (const auto& [id, s] : cs.charts) {
            Json c = Json::object();
            c.set("id", Json::str(id));
            c.set("samples", samples_json(s));
            charts.push(std::move(c));
        }
        doc.set("charts", std::move(charts));
        doc.set("global", samples_json(cs.total));
        emit(out, out_path(opt, stem, ".sweep.json"), doc.dump());
    }
}

// ---------------------------------------------------------------------------
// Report nodes.

Json int_vec_json(const std::vector<int>& v) {
    Json arr = Json::array();
    for (int x : v) arr.push(Json::integer(x));
    return arr;
}

Json index_node(const CharIndex& ix) {
    Json o = Json::object();
    o.set("l", Json::str(ix.l.str()));
    if (ix.l.is_infinite()) {
        o.set("l_value", Json::null());
        o.set("mu", Json::null());
    } else {
        o.set("l_value", Json::real(ix.l.value().to_double()));
        o.set("mu", Json::integer(ix.mu));
    }
    return o;
}

Json fit_node(const AsymptoticFitResult& f) {
    Json o = Json::object();
    o.set("c_hat", Json::real(f.c_hat));
    o.set("alpha_hat", Json::real(f.alpha_hat));
    o.set("p_hat", Json::integer(f.p_hat));
    o.set("residual_rms", Json::real(f.residual_rms));
    o.set("case", Json::str(f.case_tag == CaseTag::Case1 ? "case1" : "case2"));
    Json win = Json::array();
    win.push(Json::integer(f.window_lo));
    win.push(Json::integer(f.window_hi));
    o.set("window", std::move(win));
    return o;
}

Json complex_json(cplx c) {
    Json arr = Json::array();
    arr.push(Json::real(c.real()));
    arr.push(Json::real(c.imag()));
    return arr;
}

// Exact-side summary for one chart: index, exponent 2l + 2/m, case split,
// the expected (alpha, p) model, and the symbolic vanishing test.
Json exact_node(const MultiIndexPair& pair, int m, const Polynomial& phi) {
    CharIndex ix = local_char_index(pair);
    Json o = Json::object();
    o.set("index", index_node(ix));
    if (ix.l.is_infinite()) {
        o.set("case", Json::null());
        return o;
    }
    CaseClassification cc = classify_case(pair, m);
    o.set("exponent", Json::str(cc.exponent.str()));
    o.set("exponent_value", Json::real(cc.exponent.to_double()));
    o.set("case", Json::str(cc.tag == CaseTag::Case1 ? "case1" : "case2"));
    Json model = Json::object();
    if (cc.tag == CaseTag::Case2) {
        model.set("alpha", Json::real(cc.exponent.to_double()));
        model.set("p", Json::integer(ix.mu - 1));
        model.set("sharp", Json::boolean(true));
    } else {
        // Case 1 only gives the envelope O(|t| ln^mu); the fit may sit below.
        model.set("alpha", Json::real(1.0));
        model.set("p", Json::integer(ix.mu));
        model.set("sharp", Json::boolean(false));
    }
    o.set("model", std::move(model));
    o.set("coefficient_vanishes", Json::boolean(coefficient_vanishes(phi, ix.mu)));
    return o;
}

}  // namespace

// ---------------------------------------------------------------------------
// Runners.

RunOutcome run_psi_sweep(const Scenario& sc, const RunOptions& opt) {
    RunOutcome out;
    prepare_out_dir(opt);
    apply_threads(opt);
    std::string stem = sanitize(sc.name);
    if (sc.kind == ScenarioKind::LocalPsi) {
        const LocalPsiScenario& L = *sc.local_psi;
        PsiSamples s = sweep_local(L, with_overrides(L.quad, opt));
        out.budget_exhausted = !all_converged(s);
        emit_local_sweep(out, opt, stem, sc.name, s);
    } else if (sc.kind == ScenarioKind::GlobalCover) {
        const GlobalCoverScenario& g = *sc.global_cover;
        CoverSweep cs = sweep_cover(g, with_overrides(g.quad, opt));
        out.budget_exhausted = !all_converged(cs.total);
        emit_cover_sweep(out, opt, stem, sc.name, cs);
    } else {
        wrong_kind("psi-sweep", "local-psi or global-cover", sc);
    }
    return out;
}

RunOutcome run_fit(const Scenario& sc, const RunOptions& opt) {
    RunOutcome out;
    prepare_out_dir(opt);
    apply_threads(opt);
    std::string stem = sanitize(sc.name);

    if (sc.kind == ScenarioKind::LocalPsi) {
        const LocalPsiScenario& L = *sc.local_psi;
        QuadratureConfig q = with_overrides(L.quad, opt);
        PsiSamples s = sweep_local(L, q);
        out.budget_exhausted = !all_converged(s);
        emit_local_sweep(out, opt, stem, sc.name, s);

        std::vector<int> grid = L.p_grid;
        if (grid.empty())
            for (int p = 0; p < L.pair.n(); ++p) grid.push_back(p);
        AsymptoticFitResult fit = fit_expansion(s, grid);

        Json doc = Json::object();
        doc.set("schema", Json::str("plurinorm/fit-summary-v1"));
        doc.set("name", Json::str(sc.name));
        doc.set("m", Json::integer(L.m));
        doc.set("A", int_vec_json(L.pair.A));
        doc.set("B", int_vec_json(L.pair.B));
        doc.set("exact", exact_node(L.pair, L.m, L.phi));
        doc.set("p_grid", int_vec_json(grid));
        doc.set("fit", fit_node(fit));
        doc.set("budget_exhausted", Json::boolean(out.budget_exhausted));
        emit(out, out_path(opt, stem, ".fit.json"), doc.dump());
    } else if (sc.kind == ScenarioKind::GlobalCover) {
        const GlobalCoverScenario& g = *sc.global_cover;
        QuadratureConfig q = with_overrides(g.quad, opt);
        std::vector<ChartSweep> sweeps;
        for (const CoverChartSpec& c : g.charts)
            sweeps.push_back(ChartSweep{c.id, LocalIntegrand(c.pair, g.m, c.phi, c.chi)});
        GlobalExpansion ge = global_expansion(sweeps, g.sweep.t0, g.sweep.ratio,
                                              g.sweep.count, q);

        CoverSweep cs;
        for (const ChartContribution& c : ge.charts) cs.charts.emplace_back(c.id, c.samples);
        cs.total = ge.samples;
        out.budget_exhausted = !all_converged(ge.samples);
        emit_cover_sweep(out, opt, stem, sc.name, cs);

        Json doc = Json::object();
        doc.set("schema", Json::str("plurinorm/global-fit-v1"));
        doc.set("name", Json::str(sc.name));
        doc.set("m", Json::integer(g.m));
        Json global = Json::object();
        global.set("index", index_node(ge.index));
        global.set("fit", fit_node(ge.fit));
        doc.set("global", std::move(global));
        Json charts = Json::array();
        for (const ChartContribution& c : ge.charts) {
            Json node = Json::object();
            node.set("id", Json::str(c.id));
            node.set("index", index_node(c.index));
            node.set("maximal", Json::boolean(c.maximal));
            node.set("fit_ok", Json::boolean(c.fit_ok));
            if (c.fit_ok)
                node.set("fit", fit_node(c.fit));
            else
                node.set("fit_error", Json::str(c.fit_error));
            charts.push(std::move(node));
        }
        doc.set("charts", std::move(charts));
        doc.set("budget_exhausted", Json::boolean(out.budget_exhausted));
        emit(out, out_path(opt, stem, ".fit.json"), doc.dump());
    } else {
        wrong_kind("fit", "local-psi or global-cover", sc);
    }
    return out;
}

namespace {

Json point_table(const ResolutionModel& model) {
    Json arr = Json::array();
    for (const std::string& p : model.points()) {
        PointIndexReport rep = model.point_report(p);
        Json row = Json::object();
        row.set("point", Json::str(rep.point));
        row.set("lct", Json::str(rep.lct.str()));
        if (rep.lct.is_infinite()) {
            row.set("lct_value", Json::null());
            row.set("mu", Json::null());
        } else {
            row.set("lct_value", Json::real(rep.lct.value().to_double()));
            row.set("mu", Json::integer(rep.mu));
        }
        arr.push(std::move(row));
    }
    return arr;
}

}  // namespace

RunOutcome run_lct(const Scenario& sc, const RunOptions& opt) {
    if (sc.kind != ScenarioKind::Resolution) wrong_kind("lct", "resolution", sc);
    RunOutcome out;
    prepare_out_dir(opt);
    const ResolutionScenario& r = *sc.resolution;
    const ResolutionModel& model = r.model;
    std::string stem = sanitize(sc.name);

    Json doc = Json::object();
    doc.set("schema", Json::str("plurinorm/resolution-v1"));
    doc.set("name", Json::str(sc.name));
    ExtRational glct = model.global_lct();
    doc.set("global_lct", Json::str(glct.str()));
    doc.set("global_lct_value",
            glct.is_infinite() ? Json::null() : Json::real(glct.value().to_double()));
    doc.set("points", point_table(model));

    Json checks = Json::array();
    for (const MultCheckSpec& c : r.mult_checks) {
        bool ok = model.mult_bound_check(c.point, c.mult, c.n);
        Json row = Json::object();
        row.set("point", Json::str(c.point));
        row.set("mult", Json::integer(c.mult));
        row.set("n", Json::integer(c.n));
        row.set("bound", Json::str(Rational(c.n, c.mult).str()));
        row.set("ok", Json::boolean(ok));
        checks.push(std::move(row));
        if (!ok) {
            std::ostringstream os;
            os << "multiplicity bound violated at point '" << c.point << "': lct "
               << model.local_lct(c.point).str() << " exceeds " << c.n << "/" << c.mult;
            out.violations.push_back(os.str());
        }
    }
    doc.set("mult_checks", std::move(checks));
    emit(out, out_path(opt, stem, ".lct.json"), doc.dump());
    return out;
}

RunOutcome run_indicatrix(const Scenario& sc, const RunOptions& opt) {
    if (sc.kind != ScenarioKind::Resolution) wrong_kind("indicatrix", "resolution", sc);
    RunOutcome out;
    prepare_out_dir(opt);
    const ResolutionModel& model = sc.resolution->model;
    std::string stem = sanitize(sc.name);

    auto [index, achieving] = model.characteristic_indicatrix();
    Json doc = Json::object();
    doc.set("schema", Json::str("plurinorm/indicatrix-v1"));
    doc.set("name", Json::str(sc.name));
    doc.set("index", index_node(index));
    Json pts = Json::array();
    for (const std::string& p : achieving) pts.push(Json::str(p));
    doc.set("achieving_points", std::move(pts));
    doc.set("points", point_table(model));
    emit(out, out_path(opt, stem, ".indicatrix.json"), doc.dump());
    return out;
}

RunOutcome run_pseudonorm(const Scenario& sc, const RunOptions& opt) {
    if (sc.kind != ScenarioKind::GlobalCover) wrong_kind("pseudonorm", "global-cover", sc);
    const GlobalCoverScenario& g = *sc.global_cover;
    if (g.sections.empty())
        throw ScenarioError("pseudonorm needs at least one entry in 'sections'");

    RunOutcome out;
    prepare_out_dir(opt);
    apply_threads(opt);
    QuadratureConfig q = with_overrides(g.quad, opt);
    std::string stem = sanitize(sc.name);
    int n = g.charts.front().pair.n();

    std::vector<ChartModel> chart_models;
    for (const CoverChartSpec& c : g.charts)
        chart_models.push_back(ChartModel{c.id, c.chi, c.pair.B});
    CoverModel cover(g.m, n, std::move(chart_models));

    std::map<std::string, SectionModel> sections;
    for (const SectionSpec& spec : g.sections)
        sections.emplace(spec.name, SectionModel(cover, spec.numerators));

    Json doc = Json::object();
    doc.set("schema", Json::str("plurinorm/pseudonorm-v1"));
    doc.set("name", Json::str(sc.name));
    doc.set("m", Json::integer(g.m));
    doc.set("n", Json::integer(n));
    Json charts = Json::array();
    for (const CoverChartSpec& c : g.charts) charts.push(Json::str(c.id));
    doc.set("charts", std::move(charts));
    Json zero_origin = Json::array();
    for (const std::string& id : cover.zero_origin_charts()) zero_origin.push(Json::str(id));
    doc.set("zero_origin_charts", std::move(zero_origin));

    Json section_arr = Json::array();
    for (const SectionSpec& spec : g.sections) {
        const SectionModel& s = sections.at(spec.name);
        PsiResult r = pseudonorm_detailed(s, q);
        if (!r.converged) out.budget_exhausted = true;
        Json row = Json::object();
        row.set("name", Json::str(spec.name));
        row.set("value", Json::real(r.value));
        row.set("err_est", Json::real(r.err_est));
        row.set("converged", Json::boolean(r.converged));
        row.set("zero_section", Json::boolean(s.is_zero()));
        section_arr.push(std::move(row));
    }
    doc.set("sections", std::move(section_arr));

    std::vector<cplx> factors = g.scale_factors;
    if (factors.empty())
        factors = {cplx(0.25, 0.0), cplx(0.5, 0.0), cplx(2.0, 0.0), cplx(4.0, 0.0)};
    Json scaling = Json::array();
    for (const SectionSpec& spec : g.sections) {
        const SectionModel& s = sections.at(spec.name);
        if (s.is_zero()) continue;  // the law is trivial and the residual floor-divides
        for (cplx c : factors) {
            double res = scaling_residual(s, c, q);
            bool ok = res <= g.scaling_tol;
            Json row = Json::object();
            row.set("section", Json::str(spec.name));
            row.set("factor", complex_json(c));
            row.set("residual", Json::real(res));
            row.set("tol", Json::real(g.scaling_tol));
            row.set("ok", Json::boolean(ok));
            scaling.push(std::move(row));
            if (!ok) {
                std::ostringstream os;
                os << "scaling law violated for section '" << spec.name << "' at factor ("
                   << fmt_double(c.real()) << "," << fmt_double(c.imag()) << "): residual "
                   << fmt_double(res) << " > " << fmt_double(g.scaling_tol);
                out.violations.push_back(os.str());
            }
        }
    }
    doc.set("scaling", std::move(scaling));

    Json triangle = Json::array();
    for (const auto& [na, nb] : g.triangle_pairs) {
        const SectionModel& sa = sections.at(na);
        const SectionModel& sb = sections.at(nb);
        PsiResult ra = pseudonorm_detailed(sa, q);
        PsiResult rb = pseudonorm_detailed(sb, q);
        PsiResult rab = pseudonorm_detailed(sa + sb, q);
        if (!(ra.converged && rb.converged && rab.converged)) out.budget_exhausted = true;
        double excess = rab.value - ra.value - rb.value;
        double allowance = 20.0 * (ra.err_est + rb.err_est + rab.err_est) + q.abs_floor;
        bool ok = excess <= allowance;
        Json row = Json::object();
        row.set("a", Json::str(na));
        row.set("b", Json::str(nb));
        row.set("excess", Json::real(excess));
        row.set("allowance", Json::real(allowance));
        row.set("distance", Json::real(distance(sa, sb, q)));
        row.set("ok", Json::boolean(ok));
        triangle.push(std::move(row));
        if (!ok) {
            std::ostringstream os;
            os << "triangle inequality violated for ('" << na << "','" << nb
               << "'): excess " << fmt_double(excess) << " > allowance "
               << fmt_double(allowance);
            out.violations.push_back(os.str());
        }
    }
    doc.set("triangle", std::move(triangle));
    doc.set("budget_exhausted", Json::boolean(out.budget_exhausted));
    emit(out, out_path(opt, stem, ".pseudonorm.json"), doc.dump());
    return out;
}

RunOutcome run_bounds(const Scenario& sc, const RunOptions& opt) {
    if (sc.kind != ScenarioKind::Bounds) wrong_kind("bounds", "bounds", sc);
    RunOutcome out;
    prepare_out_dir(opt);
    const BoundsScenario& b = *sc.bounds;
    std::string stem = sanitize(sc.name);

    BoundsReport rep = bounds_report(b.n, b.path);
    Json doc = Json::object();
    doc.set("schema", Json::str("plurinorm/bounds-v1"));
    doc.set("name", Json::str(sc.name));
    doc.set("n", Json::integer(b.n));
    doc.set("path", Json::str(b.path == BoundsPath::Surface ? "surface" : "general"));
    Json repn = Json::object();
    repn.set("d", Json::integer(rep.d));
    repn.set("m0", Json::integer(rep.m0));
    repn.set("nu_min", Json::integer(rep.nu_min));
    repn.set("r0", rep.r0 ? Json::integer(*rep.r0) : Json::null());
    repn.set("note", Json::str(rep.note));
    doc.set("report", std::move(repn));

    Json thresholds = Json::array();
    for (long long r : {3LL, 4LL, 5LL, 6LL, 12LL, 100LL}) {
        Rational th = mult_threshold(b.n, r);
        Json row = Json::object();
        row.set("r", Json::integer(r));
        row.set("threshold", Json::str(th.str()));
        row.set("value", Json::real(th.to_double()));
        thresholds.push(std::move(row));
    }
    doc.set("mult_thresholds", std::move(thresholds));

    Json kollar = Json::array();
    for (const KollarSpotSpec& k : b.kollar_spots) {
        long long deg;
        try {
            deg = kollar_free_degree(k.n, k.a);
        } catch (const std::overflow_error& e) {
            throw ScenarioError(std::string("kollar_spots: ") + e.what());
        }
        Json row = Json::object();
        row.set("n", Json::integer(k.n));
        row.set("a", Json::integer(k.a));
        row.set("degree", Json::integer(deg));
        kollar.push(std::move(row));
    }
    doc.set("kollar", std::move(kollar));

    Json lemma43 = Json::array();
    for (const Lemma43Spec& s : b.lemma43) {
        Lemma43Check chk = lemma43_check(s.nu, s.m, s.n);
        Json row = Json::object();
        row.set("nu", Json::integer(s.nu));
        row.set("m", Json::integer(s.m));
        row.set("n", Json::integer(s.n));
        row.set("threshold", Json::str(chk.threshold.str()));
        row.set("strict_holds", Json::boolean(chk.strict_holds));
        row.set("boundary", Json::boolean(chk.boundary));
        lemma43.push(std::move(row));
    }
    doc.set("lemma43", std::move(lemma43));
    emit(out, out_path(opt, stem, ".bounds.json"), doc.dump());
    return out;
}

RunOutcome run_semigroup(const Scenario& sc, const RunOptions& opt) {
    if (sc.kind != ScenarioKind::Semigroup) wrong_kind("semigroup", "semigroup", sc);
    RunOutcome out;
    prepare_out_dir(opt);
    const SemigroupScenario& s = *sc.semigroup;
    std::string stem = sanitize(sc.name);

    SemigroupTable table = surface_semigroup(s.limit);
    long long conductor = 1;
    for (long long k = s.limit; k >= 1; --k)
        if (!table.contains(k)) {
            conductor = k + 1;
            break;
        }
    std::vector<long long> gaps = table.gaps_below(s.gap_bound);

    if (conductor != 75) {
        std::ostringstream os;
        os << "conductor mismatch: largest gap ends at " << conductor
           << " instead of 75 (limit " << s.limit << ")";
        out.violations.push_back(os.str());
    }
    bool contains_74_gap = std::find(gaps.begin(), gaps.end(), 74LL) != gaps.end();
    if (s.gap_bound > 74 && !contains_74_gap)
        out.violations.push_back("expected 74 in the gap list below " +
                                 std::to_string(s.gap_bound));

    Json doc = Json::object();
    doc.set("schema", Json::str("plurinorm/semigroup-v1"));
    doc.set("name", Json::str(sc.name));
    doc.set("limit", Json::integer(table.limit));
    doc.set("generators_rule", Json::str(table.generators_rule));
    doc.set("conductor", Json::integer(conductor));
    Json gap_node = Json::object();
    gap_node.set("bound", Json::integer(s.gap_bound));
    gap_node.set("count", Json::integer(static_cast<long long>(gaps.size())));
    Json gap_vals = Json::array();
    for (long long gp : gaps) gap_vals.push(Json::integer(gp));
    gap_node.set("values", std::move(gap_vals));
    doc.set("gaps_below", std::move(gap_node));
    doc.set("contains_74_gap",
            s.gap_bound > 74 ? Json::boolean(contains_74_gap) : Json::null());

    if (s.lemma42_max >= 3) {
        long long checked = 0, failures = 0;
        Rational min_gap(0);
        bool have_gap = false;
        for (long long x = 3; x <= s.lemma42_max; ++x)
            for (long long y = 3; y <= s.lemma42_max; ++y) {
                auto [holds, gap] = semigroup_inequality_check(x, y);
                ++checked;
                if (!holds) ++failures;
                if (!have_gap || gap < min_gap) {
                    min_gap = gap;
                    have_gap = true;
                }
            }
        if (failures > 0) {
            std::ostringstream os;
            os << "two-term inequality failed " << failures << " times for 3 <= x,y <= "
               << s.lemma42_max;
            out.violations.push_back(os.str());
        }
        Json lem = Json::object();
        lem.set("max", Json::integer(s.lemma42_max));
        lem.set("checked", Json::integer(checked));
        lem.set("all_hold", Json::boolean(failures == 0));
        lem.set("min_gap", Json::str(min_gap.str()));
        doc.set("lemma42", std::move(lem));
    } else {
        doc.set("lemma42", Json::null());
    }
    emit(out, out_path(opt, stem, ".semigroup.json"), doc.dump());

    // Membership table around the gap region; everything past the conductor
    // is a member, so a short prefix carries all the information.
    long long rows = std::min(table.limit, std::max(s.gap_bound, 100LL));
    if (opt.format == OutputFormat::Csv) {
        std::string csv = "k,member\n";
        for (long long k = 1; k <= rows; ++k) {
            csv += std::to_string(k);
            csv += ',';
            csv += table.contains(k) ? '1' : '0';
            csv += '\n';
        }
        emit(out, out_path(opt, stem, ".members.csv"), csv);
    } else {
        Json doc2 = Json::object();
        doc2.set("schema", Json::str("plurinorm/members-v1"));
        doc2.set("name", Json::str(sc.name));
        Json arr = Json::array();
        for (long long k = 1; k <= rows; ++k) {
            Json row = Json::object();
            row.set("k", Json::integer(k));
            row.set("member", Json::boolean(table.contains(k)));
            arr.push(std::move(row));
        }
        doc2.set("rows", std::move(arr));
        emit(out, out_path(opt, stem, ".members.json"), doc2.dump());
    }
    return out;
}

RunOutcome run_suite(const Scenario& sc, const RunOptions& opt) {
    if (sc.kind != ScenarioKind::PropertySuite) wrong_kind("suite", "property-suite", sc);
    RunOutcome out;
    prepare_out_dir(opt);
    apply_threads(opt);
    const SuiteScenario& su = *sc.suite;
    std::string stem = sanitize(sc.name);

    SuiteResult result;
    if (su.suite == "charindex-order") {
        result = run_charindex_suite(su.pairs, su.seed);
    } else {
        PseudonormSuiteParams p = su.pseudo;
        p.quad = with_overrides(p.quad, opt);
        result = run_pseudonorm_suite(p);
    }

    Json doc = Json::object();
    doc.set("schema", Json::str("plurinorm/suite-v1"));
    doc.set("name", Json::str(sc.name));
    doc.set("suite", Json::str(result.suite));
    doc.set("passed", Json::boolean(result.passed));
    Json checks = Json::array();
    for (const SuiteCheck& c : result.checks) {
        Json row = Json::object();
        row.set("name", Json::str(c.name));
        row.set("passed", Json::boolean(c.passed));
        row.set("detail", Json::str(c.detail));
        checks.push(std::move(row));
        if (!c.passed) out.violations.push_back("suite check failed: " + c.name + " (" +
                                                c.detail + ")");
    }
    doc.set("checks", std::move(checks));
    emit(out, out_path(opt, stem, ".suite.json"), doc.dump());
    return out;
}

}  // namespace plurinorm
