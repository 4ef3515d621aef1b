#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "growthlab/scenario.hpp"

namespace growthlab {

/// Raw scenario section from a config file; converted lazily so parse errors
/// carry positions.
struct ScenarioSpec {
    std::string name;
    std::string f_expr;
    std::optional<int> eq_order;
    std::optional<int> eq_degree;
    std::vector<std::string> coeff_rows; // k=1 j=(2) expr="-1"
    std::vector<std::string> caps_rows;  // k=1 m=(2)
    std::optional<std::string> M_text;   // (1,0)
    std::vector<std::string> expect_rows; // quantity value tol [le]
};

struct RunConfig {
    std::string command; // scenarios|residual|theorem1|norms|theorem2|beta|dirichlet-counterexample|classify
    int grid_rings = 14;
    double angular_factor = 16.0;
    bool all_scenarios = false;
    std::vector<std::string> scenario_names;
    std::string format = "json"; // csv | json | svg+json
    std::filesystem::path out_dir = ".";
    int threads = 0; // 0 = auto; the GROWTHLAB_THREADS env var caps it either way

    std::optional<std::string> f_expr;
    std::optional<int> eq_order;
    std::optional<int> eq_degree;
    std::vector<std::string> coeff_rows;
    std::vector<std::string> caps_rows;
    std::optional<std::string> M_text;
    std::vector<std::string> expect_rows;

    int m_power = 2;
    double alpha = 0.5;
    std::optional<double> p_choice;
    std::vector<double> p_grid;
    std::vector<std::string> kinds; // classify: hinf, hinf-phi, bergman, ubc-type
    std::optional<std::string> phi_expr;
    std::optional<std::string> omega_expr;
    std::optional<double> norm_alpha;      // normal norm exponent
    std::optional<double> dirichlet_alpha; // dirichlet weight exponent
    bool with_ubc = false;

    std::vector<ScenarioSpec> config_scenarios;

    void validate() const; // throws ConfigError
};

/// key = value lines plus [scenario] sections; '#' starts a comment.
void apply_config_file(RunConfig& cfg, const std::filesystem::path& path);

/// Builds the equation declared by the coeff/caps rows.
AlgebraicODE equation_from_rows(int order, int degree, const std::vector<std::string>& coeff_rows,
                                const std::vector<std::string>& caps_rows);

Scenario scenario_from_spec(const ScenarioSpec& spec, const GridSpec& grid);

/// Executes the configured command, writes reports, and returns the exit
/// code: 0 when every expectation passed, 1 when any failed or a run aborted,
/// 2 for usage and parse errors (also signalled by ConfigError/ParseError).
int run(const RunConfig& cfg);

} // namespace growthlab
