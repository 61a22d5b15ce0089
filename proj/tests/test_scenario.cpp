#include "doctest.h"
#include "plurinorm/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace plurinorm;
namespace fs = std::filesystem;

namespace {

std::string scenario_path(const std::string& file) {
    return std::string(PLURINORM_SCENARIO_DIR) + "/" + file;
}

std::string expected_path(const std::string& file) {
    return std::string(PLURINORM_EXPECTED_DIR) + "/" + file;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "missing file: " << path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Error message for a parse attempt, or "" when it unexpectedly succeeds.
std::string parse_error_of(const std::string& text) {
    try {
        parse_scenario(text, "inline.json");
    } catch (const ScenarioError& e) {
        return e.what();
    }
    return "";
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

struct RoundTrip {
    std::string file;  // under scenarios/
    std::function<RunOutcome(const Scenario&, const RunOptions&)> runner;
    OutputFormat format = OutputFormat::Csv;
    std::vector<std::string> outputs;  // expected basenames, sorted
    bool expect_violations = false;
};

std::vector<std::string> basenames(const RunOutcome& out) {
    std::vector<std::string> names;
    for (const std::string& f : out.files) names.push_back(fs::path(f).filename().string());
    std::sort(names.begin(), names.end());
    return names;
}

RunOutcome run_into(const RoundTrip& rt, const std::string& dir) {
    Scenario sc = load_scenario(scenario_path(rt.file));
    RunOptions opt;
    opt.out_dir = dir;
    opt.format = rt.format;
    fs::remove_all(dir);
    return rt.runner(sc, opt);
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("a minimal local-psi scenario parses with defaults") {
    Scenario sc = parse_scenario(R"({
        "schema": "plurinorm/scenario-v1",
        "kind": "local-psi",
        "m": 8,
        "A": [5],
        "B": [0]
    })",
                                 "mini.json");
    CHECK(sc.kind == ScenarioKind::LocalPsi);
    CHECK(sc.name == "mini");  // from the origin stem
    REQUIRE(sc.local_psi.has_value());
    CHECK(sc.local_psi->phi.is_zero());
    CHECK(sc.local_psi->chi.kind() == Weight::Kind::Constant);
    CHECK(sc.local_psi->sweep.t0 == 1e-2);
    CHECK(sc.local_psi->sweep.count == 8);
    CHECK(sc.local_psi->p_grid.empty());
}

TEST_CASE("diagnostics carry the JSON path") {
    const std::string base = R"({
        "schema": "plurinorm/scenario-v1",
        "kind": "local-psi",
        "name": "x",
        "m": 8,
        "A": [5],
        "B": [0]@EXTRA@
    })";
    auto with = [&](const std::string& extra) {
        std::string t = base;
        t.replace(t.find("@EXTRA@"), std::string("@EXTRA@").size(), extra);
        return t;
    };

    std::string err = parse_error_of(with(R"(, "phy": 1)"));
    CHECK(contains(err, "phy"));
    CHECK(contains(err, "inline.json"));

    err = parse_error_of(with(R"(, "phi": {"terms": [{"exp": [0], "coeff": [1.0]}]})"));
    CHECK(contains(err, "/phi/terms/0/coeff"));

    err = parse_error_of(with(R"(, "sweep": {"t0": 0.5})"));
    CHECK(contains(err, "/sweep/t0"));
    CHECK(contains(err, "1/e"));

    err = parse_error_of(with(R"(, "quadrature": {"rel_tol": 2.0})"));
    CHECK(contains(err, "rel_tol"));

    err = parse_error_of(with(R"(, "phi": {"terms": [{"exp": [0, 1], "coeff": [1.0, 0.0]}]})"));
    CHECK(contains(err, "/phi/terms/0"));
}

TEST_CASE("type, schema and kind failures") {
    CHECK(contains(parse_error_of("]"), "inline.json"));
    CHECK(contains(parse_error_of("[1, 2]"), "object"));
    CHECK(contains(parse_error_of(R"({"schema": "plurinorm/scenario-v9", "kind": "bounds"})"),
                   "unsupported schema"));
    CHECK(contains(
        parse_error_of(R"({"schema": "plurinorm/scenario-v1", "kind": "mystery"})"),
        "unknown kind 'mystery'"));
    CHECK(contains(parse_error_of(R"({"kind": "bounds"})"), "schema"));
    std::string err = parse_error_of(R"({
        "schema": "plurinorm/scenario-v1", "kind": "local-psi",
        "m": "eight", "A": [5], "B": [0]
    })");
    CHECK(contains(err, "/m"));
    err = parse_error_of(R"({
        "schema": "plurinorm/scenario-v1", "kind": "local-psi", "m": 8, "A": [5]
    })");
    CHECK(contains(err, "B"));
}

TEST_CASE("cover-specific failures") {
    const std::string dup = R"({
        "schema": "plurinorm/scenario-v1", "kind": "global-cover", "name": "d", "m": 8,
        "charts": [{"id": "U", "B": [0]}, {"id": "U", "B": [0]}]
    })";
    CHECK(contains(parse_error_of(dup), "duplicate chart id"));

    const std::string orphan = R"({
        "schema": "plurinorm/scenario-v1", "kind": "global-cover", "name": "d", "m": 8,
        "charts": [{"id": "U", "B": [0]}],
        "sections": [{"name": "s", "numerators": [{"terms": []}]}],
        "triangle_pairs": [["s", "ghost"]]
    })";
    CHECK(contains(parse_error_of(orphan), "unknown section 'ghost'"));

    const std::string mixed_n = R"({
        "schema": "plurinorm/scenario-v1", "kind": "global-cover", "name": "d", "m": 8,
        "charts": [{"id": "U", "B": [0]}, {"id": "V", "B": [0, 0]}]
    })";
    CHECK_FALSE(parse_error_of(mixed_n).empty());
}

TEST_CASE("model validation surfaces as a scenario diagnostic") {
    const std::string bad = R"({
        "schema": "plurinorm/scenario-v1", "kind": "resolution", "name": "r",
        "points": ["p"],
        "divisors": [{"id": "D", "a": 1, "b": 0}],
        "strata": [{"divisors": ["ghost"], "points": ["p"]}]
    })";
    std::string err = parse_error_of(bad);
    CHECK_FALSE(err.empty());
    CHECK(contains(err, "ghost"));
}

TEST_CASE("runner kind mismatches throw ScenarioError") {
    Scenario cusp = load_scenario(scenario_path("cusp.json"));
    RunOptions opt;
    opt.out_dir = "scenario-rt-mismatch";
    CHECK_THROWS_AS(run_fit(cusp, opt), ScenarioError);
    CHECK_THROWS_AS(run_psi_sweep(cusp, opt), ScenarioError);
    CHECK_THROWS_AS(run_pseudonorm(cusp, opt), ScenarioError);
    Scenario cover = load_scenario(scenario_path("crit5-cover.json"));
    CHECK_THROWS_AS(run_lct(cover, opt), ScenarioError);
    // A cover without sections cannot feed the pseudonorm runner.
    CHECK_THROWS_AS(run_pseudonorm(cover, opt), ScenarioError);
    fs::remove_all(opt.out_dir);
}

TEST_CASE("bundled scenarios reproduce the committed outputs byte for byte") {
    const std::vector<RoundTrip> table = {
        {"crit2-power-law.json", run_psi_sweep, OutputFormat::Json,
         {"crit2-power-law.sweep.json"}, false},
        {"crit2-power-law.json", run_fit, OutputFormat::Csv,
         {"crit2-power-law.fit.json", "crit2-power-law.sweep.csv"}, false},
        {"crit3-plane-log.json", run_fit, OutputFormat::Csv,
         {"crit3-plane-log.fit.json", "crit3-plane-log.sweep.csv"}, false},
        {"crit4-vanishing.json", run_fit, OutputFormat::Csv,
         {"crit4-vanishing.fit.json", "crit4-vanishing.sweep.csv"}, false},
        {"crit5-cover.json", run_fit, OutputFormat::Csv,
         {"crit5-cover.deep.sweep.csv", "crit5-cover.fit.json", "crit5-cover.global.sweep.csv",
          "crit5-cover.mild.sweep.csv"},
         false},
        {"crit5-cover-dup.json", run_fit, OutputFormat::Csv,
         {"crit5-cover-dup.deep-twin.sweep.csv", "crit5-cover-dup.deep.sweep.csv",
          "crit5-cover-dup.fit.json", "crit5-cover-dup.global.sweep.csv",
          "crit5-cover-dup.mild.sweep.csv"},
         false},
        {"sections-demo.json", run_pseudonorm, OutputFormat::Csv,
         {"sections-demo.pseudonorm.json"}, false},
        {"cusp.json", run_lct, OutputFormat::Csv, {"cusp.lct.json"}, false},
        {"cusp.json", run_indicatrix, OutputFormat::Csv, {"cusp.indicatrix.json"}, false},
        {"two-line.json", run_lct, OutputFormat::Csv, {"two-line.lct.json"}, false},
        {"two-line.json", run_indicatrix, OutputFormat::Csv, {"two-line.indicatrix.json"},
         false},
        {"cusp-audit-fail.json", run_lct, OutputFormat::Csv, {"cusp-audit-fail.lct.json"},
         true},
        {"bounds-surface.json", run_bounds, OutputFormat::Csv, {"bounds-surface.bounds.json"},
         false},
        {"bounds-general.json", run_bounds, OutputFormat::Csv, {"bounds-general.bounds.json"},
         false},
        {"semigroup-2k.json", run_semigroup, OutputFormat::Csv,
         {"semigroup-2k.members.csv", "semigroup-2k.semigroup.json"}, false},
        {"suite-charindex.json", run_suite, OutputFormat::Csv, {"suite-charindex.suite.json"},
         false},
        {"suite-pseudonorm.json", run_suite, OutputFormat::Csv,
         {"suite-pseudonorm.suite.json"}, false},
    };

    int slot = 0;
    for (const RoundTrip& rt : table) {
        CAPTURE(rt.file);
        std::string dir = "scenario-rt-" + std::to_string(slot++);
        RunOutcome out = run_into(rt, dir);
        CHECK(basenames(out) == rt.outputs);
        CHECK(out.violations.empty() == !rt.expect_violations);
        CHECK_FALSE(out.budget_exhausted);
        for (const std::string& name : rt.outputs) {
            CAPTURE(name);
            std::string got = slurp(dir + "/" + name);
            std::string want = slurp(expected_path(name));
            CHECK_MESSAGE(got == want, "output drifted from the committed copy: " << name);
        }
        fs::remove_all(dir);
    }
}

TEST_CASE("repeat runs are byte-identical") {
    const std::vector<RoundTrip> table = {
        {"crit2-power-law.json", run_fit, OutputFormat::Csv,
         {"crit2-power-law.fit.json", "crit2-power-law.sweep.csv"}, false},
        {"sections-demo.json", run_pseudonorm, OutputFormat::Csv,
         {"sections-demo.pseudonorm.json"}, false},
        {"cusp.json", run_lct, OutputFormat::Csv, {"cusp.lct.json"}, false},
        {"bounds-surface.json", run_bounds, OutputFormat::Csv, {"bounds-surface.bounds.json"},
         false},
        {"semigroup-2k.json", run_semigroup, OutputFormat::Json,
         {"semigroup-2k.members.json", "semigroup-2k.semigroup.json"}, false},
        {"suite-charindex.json", run_suite, OutputFormat::Csv, {"suite-charindex.suite.json"},
         false},
    };
    int slot = 0;
    for (const RoundTrip& rt : table) {
        CAPTURE(rt.file);
        std::string d1 = "scenario-det-a-" + std::to_string(slot);
        std::string d2 = "scenario-det-b-" + std::to_string(slot);
        ++slot;
        run_into(rt, d1);
        run_into(rt, d2);
        for (const std::string& name : rt.outputs) {
            CAPTURE(name);
            CHECK(slurp(d1 + "/" + name) == slurp(d2 + "/" + name));
        }
        fs::remove_all(d1);
        fs::remove_all(d2);
    }
}

}  // TEST_SUITE
