#include "plurinorm/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <initializer_list>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "json.hpp"
#include "plurinorm/report.hpp"

namespace plurinorm {

namespace {

using njson = nlohmann::json;

// ---------------------------------------------------------------------------
// Strict JSON traversal with path-tracked diagnostics.

class Cur {
public:
    Cur(const njson& j, std::string path, const std::string& origin)
        : j_(&j), path_(std::move(path)), origin_(&origin) {}

    const njson& raw() const { return *j_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << *origin_ << ": at " << (path_.empty() ? "/" : path_) << ": " << msg;
        throw ScenarioError(os.str());
    }

    bool has(const char* k) const { return j_->is_object() && j_->contains(k); }

    Cur key(const char* k) const {
        if (!j_->is_object()) fail("expected an object");
        auto it = j_->find(k);
        if (it == j_->end()) fail(std::string("missing required field '") + k + "'");
        return Cur(*it, path_ + "/" + k, *origin_);
    }

    std::optional<Cur> opt(const char* k) const {
        if (!j_->is_object()) fail("expected an object");
        auto it = j_->find(k);
        if (it == j_->end()) return std::nullopt;
        return Cur(*it, path_ + "/" + k, *origin_);
    }

    void require_object(std::initializer_list<const char*> allowed) const {
        if (!j_->is_object()) fail("expected an object");
        for (auto it = j_->begin(); it != j_->end(); ++it) {
            bool known = false;
            for (const char* k : allowed)
                if (it.key() == k) {
                    known = true;
                    break;
                }
            if (!known) fail("unknown field '" + it.key() + "'");
        }
    }

    std::size_t arr_size() const {
        if (!j_->is_array()) fail("expected an array");
        return j_->size();
    }

    Cur idx(std::size_t i) const {
        return Cur((*j_)[i], path_ + "/" + std::to_string(i), *origin_);
    }

    long long as_int(long long lo, long long hi) const {
        if (!j_->is_number_integer()) fail("expected an integer");
        long long v = j_->get<long long>();
        if (v < lo || v > hi) {
            std::ostringstream os;
            os << "value " << v << " outside [" << lo << ", " << hi << "]";
            fail(os.str());
        }
        return v;
    }

    int as_int32(long long lo, long long hi) const { return static_cast<int>(as_int(lo, hi)); }

    double as_double() const {
        if (!j_->is_number()) fail("expected a number");
        double v = j_->get<double>();
        if (!std::isfinite(v)) fail("value must be finite");
        return v;
    }

    bool as_bool() const {
        if (!j_->is_boolean()) fail("expected a boolean");
        return j_->get<bool>();
    }

    std::string as_string() const {
        if (!j_->is_string()) fail("expected a string");
        return j_->get<std::string>();
    }

private:
    const njson* j_;
    std::string path_;
    const std::string* origin_;
};

std::vector<int> parse_int_vec(const Cur& c, long long lo, long long hi, std::size_t min_len) {
    std::size_t len = c.arr_size();
    if (len < min_len) {
        std::ostringstream os;
        os << "expected at least " << min_len << " entries";
        c.fail(os.str());
    }
    std::vector<int> out;
    out.reserve(len);
    for (std::size_t i = 0; i < len; ++i) out.push_back(c.idx(i).as_int32(lo, hi));
    return out;
}

cplx parse_complex(const Cur& c) {
    if (c.arr_size() != 2) c.fail("expected [re, im]");
    return cplx(c.idx(0).as_double(), c.idx(1).as_double());
}

Polynomial parse_poly(const Cur& c, int n) {
    c.require_object({"terms"});
    Cur terms = c.key("terms");
    std::vector<PolyTerm> parsed;
    for (std::size_t i = 0; i < terms.arr_size(); ++i) {
        Cur t = terms.idx(i);
        t.require_object({"exp", "coeff"});
        std::vector<int> e = parse_int_vec(t.key("exp"), 0, 64, 0);
        if (static_cast<int>(e.size()) != n) {
            std::ostringstream os;
            os << "exponent length " << e.size() << " does not match dimension " << n;
            t.key("exp").fail(os.str());
        }
        parsed.push_back(PolyTerm{std::move(e), parse_complex(t.key("coeff"))});
    }
    return Polynomial(n, std::move(parsed));
}

Weight parse_weight(const Cur& c, int n) {
    std::string kind = c.key("kind").as_string();
    try {
        if (kind == "constant") {
            c.require_object({"kind", "value"});
            double v = 1.0;
            if (auto f = c.opt("value")) v = f->as_double();
            return Weight::constant(n, v);
        }
        if (kind == "radial-poly") {
            c.require_object({"kind", "terms"});
            Cur terms = c.key("terms");
            std::vector<Weight::RadialTerm> parsed;
            for (std::size_t i = 0; i < terms.arr_size(); ++i) {
                Cur t = terms.idx(i);
                t.require_object({"pow", "coeff"});
                std::vector<int> p = parse_int_vec(t.key("pow"), 0, 64, 0);
                if (static_cast<int>(p.size()) != n)
                    t.key("pow").fail("power length does not match dimension");
                parsed.push_back(Weight::RadialTerm{std::move(p), t.key("coeff").as_double()});
            }
            return Weight::radial_poly(n, std::move(parsed));
        }
        if (kind == "separable-bump") {
            c.require_object({"kind", "orders", "amplitude"});
            std::vector<int> orders = parse_int_vec(c.key("orders"), 0, 64, 1);
            if (static_cast<int>(orders.size()) != n)
                c.key("orders").fail("orders length does not match dimension");
            double amp = 1.0;
            if (auto f = c.opt("amplitude")) amp = f->as_double();
            return Weight::separable_bump(n, std::move(orders), amp);
        }
    } catch (const std::invalid_argument& e) {
        c.fail(e.what());
    }
    c.key("kind").fail("unknown weight kind '" + kind +
                       "' (expected constant, radial-poly, or separable-bump)");
}

SweepParams parse_sweep(const Cur& c) {
    c.require_object({"t0", "ratio", "count"});
    SweepParams s;
    if (auto f = c.opt("t0")) {
        s.t0 = f->as_double();
        if (!(s.t0 > 0.0 && s.t0 < 0.3678794411714423)) f->fail("t0 must lie in (0, 1/e)");
    }
    if (auto f = c.opt("ratio")) {
        s.ratio = f->as_double();
        if (!(s.ratio > 0.0 && s.ratio < 1.0)) f->fail("ratio must lie in (0, 1)");
    }
    if (auto f = c.opt("count")) s.count = f->as_int32(4, 64);
    return s;
}

QuadratureConfig parse_quad(const Cur& c) {
    c.require_object({"radial_nodes", "angular_nodes", "max_depth", "rel_tol", "abs_floor",
                      "max_cells", "parallel"});
    QuadratureConfig q;
    if (auto f = c.opt("radial_nodes")) q.radial_nodes = f->as_int32(2, 32);
    if (auto f = c.opt("angular_nodes")) q.angular_nodes = f->as_int32(2, 32);
    if (auto f = c.opt("max_depth")) q.max_depth = f->as_int32(1, 60);
    if (auto f = c.opt("rel_tol")) q.rel_tol = f->as_double();
    if (auto f = c.opt("abs_floor")) q.abs_floor = f->as_double();
    if (auto f = c.opt("max_cells")) q.max_cells = f->as_int(1000, 100000000);
    if (auto f = c.opt("parallel")) q.parallel = f->as_bool();
    try {
        q.validate();
    } catch (const std::invalid_argument& e) {
        c.fail(e.what());
    }
    return q;
}

std::vector<int> parse_p_grid(const Cur& c, int n) {
    std::vector<int> g = parse_int_vec(c, 0, 16, 1);
    for (std::size_t i = 1; i < g.size(); ++i)
        if (g[i] <= g[i - 1]) c.fail("p_grid must be strictly increasing");
    (void)n;
    return g;
}

// A/B pair from sibling fields; A defaults to zeros when allow_default_a.
MultiIndexPair parse_pair_fields(const Cur& scope, bool allow_default_a) {
    std::vector<int> B = parse_int_vec(scope.key("B"), 0, 64, 1);
    std::vector<int> A;
    if (auto f = scope.opt("A")) {
        A = parse_int_vec(*f, 0, 64, 1);
    } else if (allow_default_a) {
        A.assign(B.size(), 0);
    } else {
        scope.fail("missing required field 'A'");
    }
    if (A.size() != B.size()) scope.fail("A and B must have equal length");
    try {
        return MultiIndexPair(std::move(A), std::move(B));
    } catch (const std::invalid_argument& e) {
        scope.fail(e.what());
    }
}

// ---------------------------------------------------------------------------
// Kind payload parsers.

LocalPsiScenario parse_local_psi(const Cur& root) {
    root.require_object(
        {"schema", "kind", "name", "m", "A", "B", "phi", "chi", "sweep", "quadrature", "p_grid"});
    MultiIndexPair pair = parse_pair_fields(root, false);
    int n = pair.n();
    int m = root.key("m").as_int32(3, 1000);
    Polynomial phi = Polynomial::zero(n);
    if (auto f = root.opt("phi")) phi = parse_poly(*f, n);
    Weight chi = Weight::one(n);
    if (auto f = root.opt("chi")) chi = parse_weight(*f, n);
    SweepParams sweep;
    if (auto f = root.opt("sweep")) sweep = parse_sweep(*f);
    QuadratureConfig quad;
    if (auto f = root.opt("quadrature")) quad = parse_quad(*f);
    std::vector<int> p_grid;
    if (auto f = root.opt("p_grid")) p_grid = parse_p_grid(*f, n);
    return LocalPsiScenario{std::move(pair), m,    std::move(phi), std::move(chi),
                            sweep,           quad, std::move(p_grid)};
}

GlobalCoverScenario parse_global_cover(const Cur& root) {
    root.require_object({"schema", "kind", "name", "m", "charts", "sweep", "quadrature",
                         "sections", "scale_factors", "triangle_pairs", "scaling_tol"});
    int m = root.key("m").as_int32(3, 1000);
    Cur charts = root.key("charts");
    if (charts.arr_size() == 0) charts.fail("a cover needs at least one chart");

    std::vector<CoverChartSpec> specs;
    std::set<std::string> seen_ids;
    int n = -1;
    for (std::size_t i = 0; i < charts.arr_size(); ++i) {
        Cur c = charts.idx(i);
        c.require_object({"id", "A", "B", "phi", "chi"});
        std::string id = c.key("id").as_string();
        if (id.empty()) c.key("id").fail("chart id must be nonempty");
        if (!seen_ids.insert(id).second) c.key("id").fail("duplicate chart id '" + id + "'");
        MultiIndexPair pair = parse_pair_fields(c, true);
        if (n < 0) n = pair.n();
        if (pair.n() != n) c.fail("all charts must share one dimension");
        Polynomial phi = Polynomial::zero(n);
        if (auto f = c.opt("phi")) phi = parse_poly(*f, n);
        Weight chi = Weight::one(n);
        if (auto f = c.opt("chi")) chi = parse_weight(*f, n);
        specs.push_back(CoverChartSpec{std::move(id), std::move(pair), std::move(phi),
                                       std::move(chi)});
    }

    GlobalCoverScenario g{m,  std::move(specs), SweepParams{}, QuadratureConfig{},
                          {}, {},               {},            1e-5};
    if (auto f = root.opt("sweep")) g.sweep = parse_sweep(*f);
    if (auto f = root.opt("quadrature")) g.quad = parse_quad(*f);
    if (auto f = root.opt("scaling_tol")) {
        g.scaling_tol = f->as_double();
        if (!(g.scaling_tol > 0.0)) f->fail("scaling_tol must be positive");
    }

    std::set<std::string> section_names;
    if (auto f = root.opt("sections")) {
        for (std::size_t i = 0; i < f->arr_size(); ++i) {
            Cur s = f->idx(i);
            s.require_object({"name", "numerators"});
            SectionSpec spec;
            spec.name = s.key("name").as_string();
            if (spec.name.empty()) s.key("name").fail("section name must be nonempty");
            if (!section_names.insert(spec.name).second)
                s.key("name").fail("duplicate section name '" + spec.name + "'");
            Cur nums = s.key("numerators");
            if (nums.arr_size() != g.charts.size())
                nums.fail("need one numerator per chart");
            for (std::size_t k = 0; k < nums.arr_size(); ++k)
                spec.numerators.push_back(parse_poly(nums.idx(k), n));
            g.sections.push_back(std::move(spec));
        }
    }
    if (auto f = root.opt("scale_factors")) {
        for (std::size_t i = 0; i < f->arr_size(); ++i)
            g.scale_factors.push_back(parse_complex(f->idx(i)));
    }
    if (auto f = root.opt("triangle_pairs")) {
        for (std::size_t i = 0; i < f->arr_size(); ++i) {
            Cur p = f->idx(i);
            if (p.arr_size() != 2) p.fail("expected [name, name]");
            std::string a = p.idx(0).as_string();
            std::string b = p.idx(1).as_string();
            if (!section_names.count(a)) p.idx(0).fail("unknown section '" + a + "'");
            if (!section_names.count(b)) p.idx(1).fail("unknown section '" + b + "'");
            g.triangle_pairs.emplace_back(std::move(a), std::move(b));
        }
    }
    return g;
}

ResolutionScenario parse_resolution(const Cur& root) {
    root.require_object(
        {"schema", "kind", "name", "points", "divisors", "strata", "mult_checks"});

    std::set<std::string> points;
    Cur pts = root.key("points");
    for (std::size_t i = 0; i < pts.arr_size(); ++i) {
        std::string p = pts.idx(i).as_string();
        if (p.empty()) pts.idx(i).fail("point id must be nonempty");
        if (!points.insert(p).second) pts.idx(i).fail("duplicate point '" + p + "'");
    }

    std::vector<Divisor> divisors;
    Cur divs = root.key("divisors");
    for (std::size_t i = 0; i < divs.arr_size(); ++i) {
        Cur d = divs.idx(i);
        d.require_object({"id", "a", "b"});
        divisors.push_back(Divisor{d.key("id").as_string(), d.key("a").as_int32(0, 1000000),
                                   d.key("b").as_int32(0, 1000000)});
    }

    std::vector<Stratum> strata;
    Cur sts = root.key("strata");
    for (std::size_t i = 0; i < sts.arr_size(); ++i) {
        Cur s = sts.idx(i);
        s.require_object({"divisors", "points"});
        Stratum st;
        Cur sd = s.key("divisors");
        for (std::size_t k = 0; k < sd.arr_size(); ++k) st.divisor_ids.insert(sd.idx(k).as_string());
        Cur sp = s.key("points");
        for (std::size_t k = 0; k < sp.arr_size(); ++k) st.image_points.insert(sp.idx(k).as_string());
        strata.push_back(std::move(st));
    }

    std::vector<MultCheckSpec> checks;
    if (auto f = root.opt("mult_checks")) {
        for (std::size_t i = 0; i < f->arr_size(); ++i) {
            Cur c = f->idx(i);
            c.require_object({"point", "mult", "n"});
            checks.push_back(MultCheckSpec{c.key("point").as_string(),
                                           c.key("mult").as_int32(1, 1000000),
                                           c.key("n").as_int32(1, 64)});
        }
    }

    try {
        ResolutionModel model(std::move(divisors), std::move(strata), std::move(points));
        for (const MultCheckSpec& c : checks)
            if (!model.points().count(c.point))
                root.key("mult_checks").fail("unknown point '" + c.point + "'");
        return ResolutionScenario{std::move(model), std::move(checks)};
    } catch (const ModelValidationError& e) {
        root.fail(e.what());
    }
}

BoundsScenario parse_bounds(const Cur& root) {
    root.require_object({"schema", "kind", "name", "n", "path", "kollar_spots", "lemma43"});
    BoundsScenario b;
    b.n = root.key("n").as_int32(1, 12);
    std::string path = root.key("path").as_string();
    if (path == "surface") {
        b.path = BoundsPath::Surface;
        if (b.n != 2) root.key("n").fail("the surface path requires n = 2");
    } else if (path == "general") {
        b.path = BoundsPath::General;
    } else {
        root.key("path").fail("unknown path '" + path + "' (expected surface or general)");
    }
    if (auto f = root.opt("kollar_spots")) {
        for (std::size_t i = 0; i < f->arr_size(); ++i) {
            Cur c = f->idx(i);
            c.require_object({"n", "a"});
            b.kollar_spots.push_back(
                KollarSpotSpec{c.key("n").as_int32(1, 12), c.key("a").as_int(2, 1000000)});
        }
    }
    if (auto f = root.opt("lemma43")) {
        for (std::size_t i = 0; i < f->arr_size(); ++i) {
            Cur c = f->idx(i);
            c.require_object({"nu", "m", "n"});
            Lemma43Spec s{c.key("nu").as_int(1, 1000000), c.key("m").as_int(1, 1000000),
                          c.key("n").as_int32(1, 64)};
            if (s.nu * s.m <= 2) c.fail("nu*m must exceed 2 for the threshold to exist");
            b.lemma43.push_back(s);
        }
    }
    return b;
}

SemigroupScenario parse_semigroup(const Cur& root) {
    root.require_object({"schema", "kind", "name", "limit", "gap_bound", "lemma42_max"});
    SemigroupScenario s;
    s.limit = root.key("limit").as_int(100, 50000000);
    if (auto f = root.opt("gap_bound")) s.gap_bound = f->as_int(1, s.limit);
    if (auto f = root.opt("lemma42_max")) s.lemma42_max = f->as_int(0, 2000);
    return s;
}

SuiteScenario parse_suite(const Cur& root) {
    SuiteScenario s;
    s.suite = root.key("suite").as_string();
    if (s.suite == "charindex-order") {
        root.require_object({"schema", "kind", "name", "suite", "pairs", "seed"});
        if (auto f = root.opt("pairs")) s.pairs = f->as_int(100, 100000000);
        if (auto f = root.opt("seed")) s.seed = static_cast<unsigned>(f->as_int(0, 4294967295LL));
    } else if (s.suite == "pseudonorm-laws") {
        root.require_object({"schema", "kind", "name", "suite", "seed", "n", "m_values",
                             "pair_count", "max_degree", "scale_factors", "scaling_tol",
                             "quadrature"});
        PseudonormSuiteParams& p = s.pseudo;
        if (auto f = root.opt("seed")) p.seed = static_cast<unsigned>(f->as_int(0, 4294967295LL));
        if (auto f = root.opt("n")) p.n = f->as_int32(1, 4);
        if (auto f = root.opt("m_values")) {
            p.m_values = parse_int_vec(*f, 3, 1000, 1);
        }
        if (auto f = root.opt("pair_count")) p.pair_count = f->as_int(1, 100000);
        if (auto f = root.opt("max_degree")) p.max_degree = f->as_int32(1, 16);
        if (auto f = root.opt("scale_factors")) {
            p.scale_factors.clear();
            for (std::size_t i = 0; i < f->arr_size(); ++i)
                p.scale_factors.push_back(parse_complex(f->idx(i)));
        }
        if (auto f = root.opt("scaling_tol")) {
            p.scaling_tol = f->as_double();
            if (!(p.scaling_tol > 0.0)) f->fail("scaling_tol must be positive");
        }
        if (auto f = root.opt("quadrature")) p.quad = parse_quad(*f);
    } else {
        root.key("suite").fail("unknown suite '" + s.suite +
                               "' (expected charindex-order or pseudonorm-laws)");
    }
    return s;
}

std::string default_name(const std::string& origin) {
    std::filesystem::path p(origin);
    std::string stem = p.stem().string();
    return stem.empty() ? "scenario" : stem;
}

}  // namespace

std::string kind_name(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::LocalPsi: return "local-psi";
        case ScenarioKind::GlobalCover: return "global-cover";
        case ScenarioKind::Resolution: return "resolution";
        case ScenarioKind::Bounds: return "bounds";
        case ScenarioKind::Semigroup: return "semigroup";
        case ScenarioKind::PropertySuite: return "property-suite";
    }
    return "?";
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
    njson doc;
    try {
        doc = njson::parse(text);
    } catch (const njson::parse_error& e) {
        throw ScenarioError(origin + ": " + e.what());
    }
    Cur root(doc, "", origin);
    if (!doc.is_object()) root.fail("scenario must be a JSON object");

    std::string schema = root.key("schema").as_string();
    if (schema != kScenarioSchema)
        root.key("schema").fail("unsupported schema '" + schema + "' (expected " +
                                kScenarioSchema + ")");

    std::string kind = root.key("kind").as_string();
    Scenario sc;
    sc.name = default_name(origin);
    if (auto f = root.opt("name")) {
        sc.name = f->as_string();
        if (sc.name.empty()) f->fail("name must be nonempty");
    }

    if (kind == "local-psi") {
        sc.kind = ScenarioKind::LocalPsi;
        sc.local_psi = parse_local_psi(root);
    } else if (kind == "global-cover") {
        sc.kind = ScenarioKind::GlobalCover;
        sc.global_cover = parse_global_cover(root);
    } else if (kind == "resolution") {
        sc.kind = ScenarioKind::Resolution;
        sc.resolution = parse_resolution(root);
    } else if (kind == "bounds") {
        sc.kind = ScenarioKind::Bounds;
        sc.bounds = parse_bounds(root);
    } else if (kind == "semigroup") {
        sc.kind = ScenarioKind::Semigroup;
        sc.semigroup = parse_semigroup(root);
    } else if (kind == "property-suite") {
        sc.kind = ScenarioKind::PropertySuite;
        sc.suite = parse_suite(root);
    } else {
        root.key("kind").fail("unknown kind '" + kind + "'");
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::string text;
    try {
        text = read_file(path);
    } catch (const std::runtime_error& e) {
        throw ScenarioError(e.what());
    }
    return parse_scenario(text, path);
}

}  // namespace plurinorm
