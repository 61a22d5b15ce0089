#pragma once

// Declarative scenario files drive every CLI entry point. A scenario is a
// JSON document with a schema tag, a kind, and a kind-specific payload;
// loading is strict — unknown fields, wrong types, and out-of-range values
// are rejected with the JSON path of the offending node. Runners consume a
// loaded scenario plus command-line overrides and write deterministic
// reports (JSON) and sweeps/tables (CSV or JSON).

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plurinorm/asymptotics.hpp"
#include "plurinorm/bounds.hpp"
#include "plurinorm/integrator.hpp"
#include "plurinorm/pseudonorm.hpp"
#include "plurinorm/resolution.hpp"
#include "plurinorm/suites.hpp"

namespace plurinorm {

inline constexpr const char* kScenarioSchema = "plurinorm/scenario-v1";

// Input-side rejection: malformed files, schema violations, payloads
// inconsistent with the requested operation.
struct ScenarioError : std::runtime_error {
    explicit ScenarioError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ScenarioKind { LocalPsi, GlobalCover, Resolution, Bounds, Semigroup, PropertySuite };

std::string kind_name(ScenarioKind k);

struct SweepParams {
    double t0 = 1e-2;
    double ratio = 0.5;
    int count = 8;
};

struct LocalPsiScenario {
    MultiIndexPair pair;
    int m = 3;
    Polynomial phi;
    Weight chi;
    SweepParams sweep;
    QuadratureConfig quad;
    std::vector<int> p_grid;  // empty → {0, …, n−1}
};

struct CoverChartSpec {
    std::string id;
    MultiIndexPair pair;
    Polynomial phi;
    Weight chi;
};

struct SectionSpec {
    std::string name;
    std::vector<Polynomial> numerators;  // one per chart, in chart order
};

struct GlobalCoverScenario {
    int m = 3;
    std::vector<CoverChartSpec> charts;
    SweepParams sweep;
    QuadratureConfig quad;
    // Pseudonorm payload (optional): named sections over the cover, the
    // scale factors for the scaling-law check, and section-name pairs for
    // the triangle check.
    std::vector<SectionSpec> sections;
    std::vector<cplx> scale_factors;
    std::vector<std::pair<std::string, std::string>> triangle_pairs;
    double scaling_tol = 1e-5;
};

struct MultCheckSpec {
    std::string point;
    int mult = 1;
    int n = 1;
};

struct ResolutionScenario {
    ResolutionModel model;
    std::vector<MultCheckSpec> mult_checks;
};

struct KollarSpotSpec {
    int n = 1;
    long long a = 2;
};

struct Lemma43Spec {
    long long nu = 0;
    long long m = 0;
    int n = 1;
};

struct BoundsScenario {
    int n = 2;
    BoundsPath path = BoundsPath::Surface;
    std::vector<KollarSpotSpec> kollar_spots;
    std::vector<Lemma43Spec> lemma43;
};

struct SemigroupScenario {
    long long limit = 1000;
    long long gap_bound = 75;   // gaps are listed below this value
    long long lemma42_max = 100;  // exhaustive two-term inequality range; 0 skips
};

struct SuiteScenario {
    std::string suite;  // "charindex-order" or "pseudonorm-laws"
    long long pairs = 10000;
    unsigned seed = 20260823;
    PseudonormSuiteParams pseudo;  // consulted only for pseudonorm-laws
};

struct Scenario {
    std::string name;
    ScenarioKind kind = ScenarioKind::LocalPsi;
    std::optional<LocalPsiScenario> local_psi;
    std::optional<GlobalCoverScenario> global_cover;
    std::optional<ResolutionScenario> resolution;
    std::optional<BoundsScenario> bounds;
    std::optional<SemigroupScenario> semigroup;
    std::optional<SuiteScenario> suite;
};

// Parse from text (origin labels diagnostics) or load from a file.
Scenario parse_scenario(const std::string& text, const std::string& origin);
Scenario load_scenario(const std::string& path);

enum class OutputFormat { Csv, Json };

struct RunOptions {
    std::string out_dir = ".";
    OutputFormat format = OutputFormat::Csv;  // for sweeps and tables
    int threads = 0;                          // 0 = runtime default
    std::optional<double> rel_tol;            // quadrature override
    std::optional<int> max_depth;             // quadrature override
};

struct RunOutcome {
    std::vector<std::string> files;        // paths written, in order
    bool budget_exhausted = false;         // any integration budget ran out
    std::vector<std::string> violations;   // failed declared invariants
};

// Runners. Kind mismatches and payload gaps throw ScenarioError; outputs
// are written before budget/violation status is reported in the outcome.
RunOutcome run_psi_sweep(const Scenario& sc, const RunOptions& opt);
RunOutcome run_fit(const Scenario& sc, const RunOptions& opt);
RunOutcome run_lct(const Scenario& sc, const RunOptions& opt);
RunOutcome run_indicatrix(const Scenario& sc, const RunOptions& opt);
RunOutcome run_pseudonorm(const Scenario& sc, const RunOptions& opt);
RunOutcome run_bounds(const Scenario& sc, const RunOptions& opt);
RunOutcome run_semigroup(const Scenario& sc, const RunOptions& opt);
RunOutcome run_suite(const Scenario& sc, const RunOptions& opt);

}  // namespace plurinorm
