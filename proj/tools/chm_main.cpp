#include "chm/runner.hpp"

#include <CLI11.hpp>

#include <string>

int main(int argc, char** argv) {
    CLI::App app{"Centered Hausdorff measure of self-similar attractors: coded point clouds, "
                 "per-generation inverse-density minimization, rigorous upper bounds"};

    chm::RunConfig config;
    std::string budget_help = "point budget per cloud (default " +
                              std::to_string(chm::kDefaultPointBudget) + ")";

    auto* gallery = app.add_option("--gallery", config.gallery,
                                   "named example system, e.g. cantor-1-3, sierpinski(0.2)");
    auto* system = app.add_option("--system", config.system_file, "path to a JSON system definition");
    gallery->excludes(system);
    app.add_option("--g-max", config.g_max, "deepest generation to scan (default 6)");
    app.add_option("--tie-tol", config.tie_tol, "relative tolerance grouping equal distances");
    app.add_option("--bracket-tol", config.bracket_tol,
                   "measure-oracle subdivision tolerance, scaled by the diameter bound");
    app.add_option("--budget", config.point_budget, budget_help);
    app.add_option("--workers", config.workers, "scan threads; 0 = auto (results are identical)");
    app.add_option("--report", config.report_path, "write the text report here instead of stdout");
    app.add_option("--csv", config.csv_path, "write per-generation rows here, flushed as computed");
    app.add_option("--svg", config.svg_path, "render the final cloud and minimizing ball (1D/2D)");
    app.add_flag("--certify", config.certify_final,
                 "also bracket the true measure of the final minimizing ball");
    app.add_flag("--allow-unverified-ssc", config.allow_unverified_ssc,
                 "proceed when the separation test is inconclusive");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? chm::exit_ok : chm::exit_bad_input;
    }

    return chm::run_and_report(config);
}
