// Command-line front end: every subcommand loads a scenario file, runs one
// operation, writes deterministic outputs, and maps failures onto stable
// exit codes:
//   0  success
//   2  validation failure (bad scenario, bad flags, I/O problems)
//   3  numeric-budget failure (integration or fit ran out of signal)
//   4  declared-invariant violation (bound audits, law checks, suites)

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "plurinorm/scenario.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;

struct CommonArgs {
    std::string scenario;
    std::string out_dir = ".";
    int threads = 0;
    std::optional<double> rel_tol;
    std::optional<int> max_depth;
    std::string format = "csv";
};

void add_common(CLI::App* sub, CommonArgs& a) {
    sub->add_option("--scenario", a.scenario, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", a.out_dir, "output directory (created if missing)");
    sub->add_option("--threads", a.threads, "worker threads (1 forces the serial path)")
        ->check(CLI::Range(0, 1024));
    sub->add_option("--rel-tol", a.rel_tol, "override quadrature relative tolerance");
    sub->add_option("--max-depth", a.max_depth, "override quadrature refinement depth")
        ->check(CLI::Range(1, 60));
    sub->add_option("--format", a.format, "sweep/table format")
        ->check(CLI::IsMember({"csv", "json"}));
}

int run(const std::string& cmd, const CommonArgs& a) {
    using namespace plurinorm;

    RunOptions opt;
    opt.out_dir = a.out_dir;
    opt.format = (a.format == "json") ? OutputFormat::Json : OutputFormat::Csv;
    opt.threads = a.threads;
    opt.rel_tol = a.rel_tol;
    opt.max_depth = a.max_depth;

    Scenario sc = load_scenario(a.scenario);
    RunOutcome out;
    if (cmd == "psi-sweep")
        out = run_psi_sweep(sc, opt);
    else if (cmd == "fit")
        out = run_fit(sc, opt);
    else if (cmd == "lct")
        out = run_lct(sc, opt);
    else if (cmd == "indicatrix")
        out = run_indicatrix(sc, opt);
    else if (cmd == "pseudonorm")
        out = run_pseudonorm(sc, opt);
    else if (cmd == "bounds")
        out = run_bounds(sc, opt);
    else if (cmd == "semigroup")
        out = run_semigroup(sc, opt);
    else if (cmd == "suite")
        out = run_suite(sc, opt);

    for (const std::string& f : out.files) std::cout << "wrote " << f << "\n";
    if (!out.violations.empty()) {
        for (const std::string& v : out.violations) std::cerr << "violation: " << v << "\n";
        return kExitInvariant;
    }
    if (out.budget_exhausted) {
        std::cerr << "numeric budget exhausted; results carry converged=false flags\n";
        return kExitBudget;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pluricanonical pseudonorm toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    const char* names[] = {"psi-sweep", "fit",    "lct",       "indicatrix",
                           "pseudonorm", "bounds", "semigroup", "suite"};
    const char* descs[] = {
        "sweep Psi(t) - Psi(0) on a geometric t-grid",
        "sweep and fit the power-log expansion model",
        "per-point log-canonical thresholds and multiplicity audits",
        "global characteristic index with its achieving set",
        "section pseudonorms with scaling and triangle checks",
        "effective degree/multiplicity bound report",
        "surface semigroup closure, conductor, and gap list",
        "property suites (charindex-order, pseudonorm-laws)",
    };
    for (int i = 0; i < 8; ++i) add_common(app.add_subcommand(names[i], descs[i]), args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the diagnostic
        return kExitValidation;
    }

    std::string cmd = app.get_subcommands().front()->get_name();
    try {
        return run(cmd, args);
    } catch (const plurinorm::ScenarioError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const plurinorm::AsymptoticFitError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitBudget;
    } catch (const plurinorm::ModelValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        // Remaining failures are input- or I/O-shaped (bad arguments to the
        // library, disk errors), so they land on the validation code.
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}
