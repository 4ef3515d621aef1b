#include <CLI11.hpp>
#include <iostream>

#include "growthlab/run_config.hpp"

using namespace growthlab;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--grid-rings", cfg.grid_rings, "geometric ring depth J (4..24)");
    cmd->add_option("--angular-factor", cfg.angular_factor, "angular nodes per ring ~ factor/(1-r)");
    cmd->add_option("--format", cfg.format, "csv | json | svg+json");
    cmd->add_option("--out", cfg.out_dir, "output directory");
    cmd->add_option("--threads", cfg.threads, "worker threads (GROWTHLAB_THREADS caps this)");
}

void add_equation(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--order", cfg.eq_order, "equation order N");
    cmd->add_option("--degree", cfg.eq_degree, "equation degree n");
    cmd->add_option("--coeff", cfg.coeff_rows, "coefficient row, e.g. 'k=1 j=(2) expr=\"-1\"'");
    cmd->add_option("--caps", cfg.caps_rows, "caps row, e.g. 'k=1 m=(2)'");
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // A config file provides defaults; explicit flags override them.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config_file(cfg, argv[i + 1]);
            } catch (const Error& e) {
                std::cerr << "error: " << e.what() << "\n";
                return 2;
            }
        }
    }

    CLI::App app{"growthlab: growth estimates for meromorphic solutions of algebraic differential equations"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "config file (key = value lines plus [scenario] sections)");

    CLI::App* scen = app.add_subcommand("scenarios", "run catalog scenarios");
    scen->add_flag("--all", cfg.all_scenarios, "run every scenario");
    scen->add_option("--name", cfg.scenario_names, "scenario name (repeatable)");
    add_common(scen, cfg);

    CLI::App* resid = app.add_subcommand("residual", "residual gate statistics for a candidate solution");
    resid->add_option("--f", cfg.f_expr, "candidate solution expression");
    add_equation(resid, cfg);
    add_common(resid, cfg);

    CLI::App* th1 = app.add_subcommand("theorem1", "bound ratio scan for an equation/solution pair");
    th1->add_option("--f", cfg.f_expr, "solution expression");
    th1->add_option("--M", cfg.M_text, "M tuple, e.g. (1,0); minimal when omitted");
    th1->add_option("--expect", cfg.expect_rows, "expectation 'quantity value tol [le]' (repeatable)");
    add_equation(th1, cfg);
    add_common(th1, cfg);

    CLI::App* norms = app.add_subcommand("norms", "function-class norms of a subject function");
    norms->add_option("--f", cfg.f_expr, "subject expression");
    norms->add_option("--alpha", cfg.norm_alpha, "alpha-normal norm exponent");
    norms->add_option("--phi", cfg.phi_expr, "gauge expression in r for the phi-normal norm");
    norms->add_option("--dirichlet-alpha", cfg.dirichlet_alpha, "Dirichlet weight exponent");
    norms->add_option("--omega", cfg.omega_expr, "radial weight expression in r (omega_star Dirichlet)");
    norms->add_flag("--ubc", cfg.with_ubc, "compute both UBC kernels");
    add_common(norms, cfg);

    CLI::App* th2 = app.add_subcommand("theorem2", "power map comparison suite");
    th2->add_option("--f", cfg.f_expr, "subject expression");
    th2->add_option("--m", cfg.m_power, "power m >= 2");
    th2->add_option("--expect", cfg.expect_rows, "expectation rows (repeatable)");
    add_common(th2, cfg);

    CLI::App* beta = app.add_subcommand("beta", "exponent bracket explorer in the f_p family");
    beta->add_option("--alpha", cfg.alpha, "alpha in (0,1)");
    beta->add_option("--m", cfg.m_power, "power m >= 2");
    beta->add_option("--p-grid", cfg.p_grid, "p values (repeatable or comma list)")->delimiter(',');
    add_common(beta, cfg);

    CLI::App* dce = app.add_subcommand("dirichlet-counterexample", "Dirichlet trend comparison at negative alpha");
    dce->add_option("--alpha", cfg.alpha, "alpha < 0");
    dce->add_option("--m", cfg.m_power, "power m >= 2");
    dce->add_option("--p", cfg.p_choice, "exponent p inside (-alpha/(2m), -alpha/2]");
    add_common(dce, cfg);

    CLI::App* cls = app.add_subcommand("classify", "coefficient-condition classification (first order)");
    cls->add_option("--kinds", cfg.kinds, "hinf, hinf-phi, bergman, ubc-type")->delimiter(',');
    add_equation(cls, cfg);
    add_common(cls, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return run(cfg);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
