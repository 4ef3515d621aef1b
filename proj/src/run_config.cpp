#include "growthlab/run_config.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "growthlab/expr.hpp"
#include "growthlab/grid_ops.hpp"
#include "growthlab/harness.hpp"

namespace growthlab {

void RunConfig::validate() const {
    if (grid_rings < 4 || grid_rings > 24) throw ConfigError("grid rings J must lie in [4, 24]");
    if (format != "csv" && format != "json" && format != "svg+json")
        throw ConfigError("format must be csv, json or svg+json");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string v) {
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') return v.substr(1, v.size() - 2);
    return v;
}

std::vector<int> parse_int_tuple(const std::string& text) {
    std::string t = trim(text);
    if (!t.empty() && t.front() == '(') t = t.substr(1);
    if (!t.empty() && t.back() == ')') t.pop_back();
    std::vector<int> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("malformed integer tuple '" + text + "'");
        }
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("malformed number list '" + text + "'");
        }
    }
    return out;
}

// Rows look like: k=1 j=(2) expr="-1"  /  k=1 m=(2)
std::map<std::string, std::string> parse_row(const std::string& row) {
    std::map<std::string, std::string> out;
    std::size_t i = 0;
    while (i < row.size()) {
        while (i < row.size() && std::isspace(static_cast<unsigned char>(row[i]))) ++i;
        if (i >= row.size()) break;
        std::size_t eq = row.find('=', i);
        if (eq == std::string::npos) throw ConfigError("malformed row '" + row + "'");
        const std::string key = trim(row.substr(i, eq - i));
        std::size_t j = eq + 1;
        std::string value;
        if (j < row.size() && row[j] == '"') {
            const std::size_t close = row.find('"', j + 1);
            if (close == std::string::npos) throw ConfigError("unterminated quote in row '" + row + "'");
            value = row.substr(j + 1, close - j - 1);
            i = close + 1;
        } else if (j < row.size() && row[j] == '(') {
            const std::size_t close = row.find(')', j);
            if (close == std::string::npos) throw ConfigError("unterminated tuple in row '" + row + "'");
            value = row.substr(j, close - j + 1);
            i = close + 1;
        } else {
            std::size_t end = j;
            while (end < row.size() && !std::isspace(static_cast<unsigned char>(row[end]))) ++end;
            value = row.substr(j, end - j);
            i = end;
        }
        out[key] = value;
    }
    return out;
}

void apply_key(RunConfig& cfg, ScenarioSpec* scen, const std::string& key, const std::string& value) {
    try {
        if (scen) {
            if (key == "name") scen->name = value;
            else if (key == "f") scen->f_expr = value;
            else if (key == "eq_order") scen->eq_order = std::stoi(value);
            else if (key == "eq_degree") scen->eq_degree = std::stoi(value);
            else if (key == "coeff") scen->coeff_rows.push_back(value);
            else if (key == "caps") scen->caps_rows.push_back(value);
            else if (key == "M") scen->M_text = value;
            else if (key == "expect") scen->expect_rows.push_back(value);
            else throw ConfigError("unknown scenario key '" + key + "'");
            return;
        }
        if (key == "grid_rings") cfg.grid_rings = std::stoi(value);
        else if (key == "angular_factor") cfg.angular_factor = std::stod(value);
        else if (key == "format") cfg.format = value;
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "threads") cfg.threads = std::stoi(value);
        else if (key == "f") cfg.f_expr = value;
        else if (key == "eq_order") cfg.eq_order = std::stoi(value);
        else if (key == "eq_degree") cfg.eq_degree = std::stoi(value);
        else if (key == "coeff") cfg.coeff_rows.push_back(value);
        else if (key == "caps") cfg.caps_rows.push_back(value);
        else if (key == "M") cfg.M_text = value;
        else if (key == "expect") cfg.expect_rows.push_back(value);
        else if (key == "m") cfg.m_power = std::stoi(value);
        else if (key == "alpha") cfg.alpha = std::stod(value);
        else if (key == "p") cfg.p_choice = std::stod(value);
        else if (key == "p_grid") cfg.p_grid = parse_double_list(value);
        else if (key == "kinds") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.kinds.push_back(trim(item));
        } else if (key == "phi") cfg.phi_expr = value;
        else if (key == "omega") cfg.omega_expr = value;
        else if (key == "norm_alpha") cfg.norm_alpha = std::stod(value);
        else if (key == "dirichlet_alpha") cfg.dirichlet_alpha = std::stod(value);
        else if (key == "ubc") cfg.with_ubc = value == "true" || value == "1";
        else if (key == "all") cfg.all_scenarios = value == "true" || value == "1";
        else if (key == "names") {
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.scenario_names.push_back(trim(item));
        } else throw ConfigError("unknown config key '" + key + "'");
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("malformed value for key '" + key + "': " + value);
    }
}

} // namespace

void apply_config_file(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::string line;
    ScenarioSpec* current = nullptr;
    while (std::getline(in, line)) {
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line == "[scenario]") {
            cfg.config_scenarios.emplace_back();
            current = &cfg.config_scenarios.back();
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = unquote(trim(line.substr(eq + 1)));
        apply_key(cfg, current, key, value);
    }
}

AlgebraicODE equation_from_rows(int order, int degree, const std::vector<std::string>& coeff_rows,
                                const std::vector<std::string>& caps_rows) {
    struct CoeffRow {
        int k;
        std::vector<int> j;
        std::string expr;
    };
    std::vector<CoeffRow> coeffs;
    for (const std::string& row : coeff_rows) {
        auto kv = parse_row(row);
        if (!kv.count("k") || !kv.count("j") || !kv.count("expr"))
            throw ConfigError("coeff row needs k=, j=(...), expr=: '" + row + "'");
        coeffs.push_back(CoeffRow{std::stoi(kv["k"]), parse_int_tuple(kv["j"]), kv["expr"]});
    }

    // Caps: explicit rows override; otherwise the componentwise max of the
    // declared indices.
    std::vector<std::vector<int>> caps(static_cast<std::size_t>(degree),
                                       std::vector<int>(static_cast<std::size_t>(order), 0));
    for (const CoeffRow& c : coeffs) {
        if (c.k < 1 || c.k > degree) throw ConfigError("coeff row k out of range");
        if (c.j.size() != static_cast<std::size_t>(order))
            throw ConfigError("coeff row j tuple must have N entries");
        for (int l = 0; l < order; ++l)
            caps[static_cast<std::size_t>(c.k - 1)][static_cast<std::size_t>(l)] =
                std::max(caps[static_cast<std::size_t>(c.k - 1)][static_cast<std::size_t>(l)],
                         c.j[static_cast<std::size_t>(l)]);
    }
    for (const std::string& row : caps_rows) {
        auto kv = parse_row(row);
        if (!kv.count("k") || !kv.count("m")) throw ConfigError("caps row needs k= and m=(...): '" + row + "'");
        const int k = std::stoi(kv["k"]);
        const std::vector<int> m = parse_int_tuple(kv["m"]);
        if (k < 1 || k > degree || m.size() != static_cast<std::size_t>(order))
            throw ConfigError("caps row out of range: '" + row + "'");
        caps[static_cast<std::size_t>(k - 1)] = m;
    }

    AlgebraicODE eq(order, degree, caps);
    for (const CoeffRow& c : coeffs) {
        const MeroFn a = to_merofn(parse_expr(c.expr, ExprContext::Function));
        eq.set_coefficient(ExponentMultiIndex{c.k, c.j}, a);
    }
    return eq;
}

namespace {

std::vector<Expectation> expectations_from_rows(const std::vector<std::string>& rows) {
    std::vector<Expectation> out;
    for (const std::string& row : rows) {
        std::stringstream ss(row);
        Expectation e;
        std::string kind;
        if (!(ss >> e.quantity >> e.value)) throw ConfigError("malformed expect row '" + row + "'");
        ss >> e.tol;
        if (ss >> kind && kind == "le") e.kind = Expectation::Kind::AtMost;
        e.note = "config";
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

Scenario scenario_from_spec(const ScenarioSpec& spec, const GridSpec& grid) {
    if (spec.name.empty()) throw ConfigError("config scenario needs a name");
    if (spec.f_expr.empty()) throw ConfigError("config scenario '" + spec.name + "' needs f = <expr>");
    Scenario s;
    s.name = spec.name;
    s.grid = grid;
    s.f = to_merofn(parse_expr(spec.f_expr, ExprContext::Function));
    if (spec.eq_order && spec.eq_degree)
        s.eq = equation_from_rows(*spec.eq_order, *spec.eq_degree, spec.coeff_rows, spec.caps_rows);
    else if (!spec.coeff_rows.empty())
        throw ConfigError("config scenario '" + spec.name + "' has coeff rows but no eq_order/eq_degree");
    if (spec.M_text) s.M = MVector{parse_int_tuple(*spec.M_text)};
    s.expect = expectations_from_rows(spec.expect_rows);
    return s;
}

namespace {

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
    return out;
}

void write_report(const RunConfig& cfg, const Report& rep, const std::string& stem) {
    const std::filesystem::path base = cfg.out_dir / sanitize(stem);
    if (cfg.format == "csv") {
        std::string csv = Report::csv_header();
        rep.append_csv(csv);
        atomic_write(base.string() + ".csv", csv);
    } else {
        atomic_write(base.string() + ".json", rep.to_json().dump(2) + "\n");
    }
}

void write_scan_heatmap(const RunConfig& cfg, const Scenario& s, const std::string& stem) {
    // Decimated ratio heatmap on a coarse copy of the grid.
    const DiscGrid grid = DiscGrid::standard(std::min(s.grid.rings_J, 10), 8.0, 2);
    const MVector M = s.M ? *s.M : minimal_M(*s.eq);
    std::vector<SphericalFn> sph;
    for (int l = 0; l < s.eq->order(); ++l)
        sph.emplace_back(power_fn(s.f.derivative(l), M.M[static_cast<std::size_t>(l)] + 1));
    std::vector<std::vector<double>> values(grid.rings.size());
    for (std::size_t i = 0; i < grid.rings.size(); ++i) {
        const int shown = std::min(grid.rings[i].n_theta, 256);
        values[i].assign(static_cast<std::size_t>(shown), std::nan(""));
        for (int t = 0; t < shown; ++t) {
            const Complex z = std::polar(grid.rings[i].r, 2.0 * M_PI * t / shown);
            if (std::abs(z) >= 1.0) continue;
            try {
                double lhs = 1.0;
                for (const SphericalFn& sf : sph) lhs *= sf(z);
                const double rhs = bound_rhs(*s.eq, z);
                if (rhs > 1e-9) values[i][static_cast<std::size_t>(t)] = lhs / rhs;
            } catch (const Error&) {
            }
        }
    }
    atomic_write((cfg.out_dir / (sanitize(stem) + ".svg")).string(),
                 svg_heatmap(grid, values, "bound ratio: " + s.name));
}

int finish(const RunConfig& cfg, Report rep, const std::string& stem) {
    write_report(cfg, rep, stem);
    std::cout << (rep.all_pass() ? "[pass] " : "[FAIL] ") << stem << "\n";
    return rep.all_pass() ? 0 : 1;
}

GridSpec grid_spec(const RunConfig& cfg) { return GridSpec{cfg.grid_rings, cfg.angular_factor}; }

MeroFn require_f(const RunConfig& cfg) {
    if (!cfg.f_expr) throw ConfigError("this command needs --f <expr>");
    return to_merofn(parse_expr(*cfg.f_expr, ExprContext::Function));
}

AlgebraicODE require_eq(const RunConfig& cfg) {
    if (!cfg.eq_order || !cfg.eq_degree) throw ConfigError("this command needs --order and --degree");
    if (cfg.coeff_rows.empty()) throw ConfigError("this command needs at least one --coeff row");
    return equation_from_rows(*cfg.eq_order, *cfg.eq_degree, cfg.coeff_rows, cfg.caps_rows);
}

int cmd_scenarios(const RunConfig& cfg) {
    std::vector<Scenario> chosen;
    const GridSpec gs = grid_spec(cfg);
    for (Scenario& s : builtin_scenarios()) {
        s.grid = gs;
        if (cfg.all_scenarios ||
            std::find(cfg.scenario_names.begin(), cfg.scenario_names.end(), s.name) != cfg.scenario_names.end())
            chosen.push_back(std::move(s));
    }
    for (const ScenarioSpec& spec : cfg.config_scenarios) {
        Scenario s = scenario_from_spec(spec, gs);
        if (cfg.all_scenarios ||
            std::find(cfg.scenario_names.begin(), cfg.scenario_names.end(), s.name) != cfg.scenario_names.end())
            chosen.push_back(std::move(s));
    }
    if (chosen.empty()) throw ConfigError("no scenario selected; use --all or --name");

    int exit_code = 0;
    for (const Scenario& s : chosen) {
        Report rep;
        try {
            rep = run_scenario(s, parallel_default());
        } catch (const Error& err) {
            rep.scenario = s.name;
            rep.status = "failed";
            rep.error = err.what();
        }
        if (cfg.format == "svg+json" && s.eq && rep.status == "ok") write_scan_heatmap(cfg, s, s.name);
        exit_code = std::max(exit_code, finish(cfg, std::move(rep), s.name));
    }
    return exit_code;
}

int cmd_residual(const RunConfig& cfg) {
    const AlgebraicODE eq = require_eq(cfg);
    const MeroFn f = require_f(cfg);
    const DiscGrid grid = grid_spec(cfg).build();
    const ResidualStats rs = residual_stats(eq, f, grid, parallel_default());
    Report rep;
    rep.scenario = "residual";
    rep.grid_rings = grid.rings_J;
    rep.angular_factor = grid.angular_factor;
    rep.add("residual_max_scaled", rs.max_scaled);
    rep.add("residual_mean_scaled", rs.mean_scaled);
    rep.counts["evaluated"] = static_cast<double>(rs.evaluated);
    rep.counts["skipped_pole"] = static_cast<double>(rs.skipped_pole);
    rep.check(Expectation{"residual_max_scaled", 1e-9, 0.0, Expectation::Kind::AtMost, "residual gate"},
              rs.max_scaled);
    return finish(cfg, std::move(rep), "residual");
}

int cmd_theorem1(const RunConfig& cfg) {
    Scenario s;
    s.name = "theorem1";
    s.grid = grid_spec(cfg);
    s.eq = require_eq(cfg);
    s.f = require_f(cfg);
    if (cfg.M_text) s.M = MVector{parse_int_tuple(*cfg.M_text)};
    s.expect = expectations_from_rows(cfg.expect_rows);
    Report rep;
    try {
        rep = run_theorem1(s, parallel_default());
    } catch (const Error& err) {
        rep.scenario = s.name;
        rep.status = "failed";
        rep.error = err.what();
    }
    if (cfg.format == "svg+json" && rep.status == "ok") write_scan_heatmap(cfg, s, s.name);
    return finish(cfg, std::move(rep), s.name);
}

int cmd_norms(const RunConfig& cfg) {
    const MeroFn f = require_f(cfg);
    const DiscGrid grid = grid_spec(cfg).build();
    const bool par = parallel_default();
    Report rep;
    rep.scenario = "norms";
    rep.grid_rings = grid.rings_J;
    rep.angular_factor = grid.angular_factor;
    if (cfg.norm_alpha) {
        const SupEstimate e = normal_norm(f, *cfg.norm_alpha, grid, par);
        rep.add("normal_norm", e.value, e.argmax);
        rep.labels["normal_norm.trend"] =
            e.trend == Trend::Growing ? "growing" : (e.trend == Trend::Decaying ? "decaying" : "flat");
        if (e.overflow) rep.labels["normal_norm.overflow"] = "exceeds 1e12";
    }
    if (cfg.phi_expr) {
        const SmoothIncreasing phi = SmoothIncreasing::from_function(
            [expr = parse_expr(*cfg.phi_expr, ExprContext::Weight)](double r) {
                return eval_expr(expr, Complex(r, 0.0)).real();
            },
            *cfg.phi_expr);
        const SupEstimate e = phi_normal_norm(f, phi, grid, par);
        rep.add("phi_normal_norm", e.value, e.argmax);
        rep.labels["phi_normal_norm.trend"] =
            e.trend == Trend::Growing ? "growing" : (e.trend == Trend::Decaying ? "decaying" : "flat");
    }
    if (cfg.dirichlet_alpha) {
        const IntegralEstimate e = dirichlet_norm(f, DirichletWeight::power(*cfg.dirichlet_alpha), grid, par);
        rep.add("dirichlet_norm", e.value);
        rep.add("dirichlet_refinement_change", e.refinement_change);
    }
    if (cfg.omega_expr) {
        const RadialWeight w = to_weight(parse_expr(*cfg.omega_expr, ExprContext::Weight));
        const IntegralEstimate e = dirichlet_norm(f, DirichletWeight::omega_star_of(w), grid, par);
        rep.add("dirichlet_norm_omega_star", e.value);
        rep.add("dirichlet_omega_star_refinement_change", e.refinement_change);
    }
    if (cfg.with_ubc) {
        const std::vector<Complex> centers = default_mobius_centers();
        const UbcEstimate g = ubc_norm(f, centers, grid, UbcKernel::Green, par);
        const UbcEstimate s = ubc_norm(f, centers, grid, UbcKernel::OneMinusSquare, par);
        rep.add("ubc_green", g.value, g.argmax_a);
        rep.add("ubc_green_error_bar", g.exclusion_error_bar);
        rep.add("ubc_one_minus_square", s.value, s.argmax_a);
    }
    if (rep.quantities.empty())
        throw ConfigError("norms: pick at least one of --alpha, --phi, --dirichlet-alpha, --omega, --ubc");
    return finish(cfg, std::move(rep), "norms");
}

int cmd_theorem2(const RunConfig& cfg) {
    const MeroFn f = require_f(cfg);
    const DiscGrid grid = grid_spec(cfg).build();
    Report rep = run_theorem2_suite(f, cfg.m_power, grid, parallel_default());
    for (const Expectation& e : expectations_from_rows(cfg.expect_rows))
        for (const Quantity& q : rep.quantities)
            if (q.name == e.quantity) rep.check(e, q.value);
    const std::string stem = rep.scenario;
    return finish(cfg, std::move(rep), stem);
}

int cmd_beta(const RunConfig& cfg) {
    std::vector<double> p_grid = cfg.p_grid;
    if (p_grid.empty()) {
        for (int i = 1; i <= 18; ++i) p_grid.push_back(i * 0.05);
        p_grid.push_back((1.0 - cfg.alpha) / cfg.m_power); // the bracket endpoint
    }
    Report rep = beta_explorer(cfg.alpha, cfg.m_power, p_grid);
    return finish(cfg, std::move(rep), "beta");
}

int cmd_dirichlet_counterexample(const RunConfig& cfg) {
    const DiscGrid grid = grid_spec(cfg).build();
    Report rep = dirichlet_counterexample(cfg.alpha, cfg.m_power, grid, cfg.p_choice, parallel_default());
    return finish(cfg, std::move(rep), "dirichlet-counterexample");
}

int cmd_classify(const RunConfig& cfg) {
    const AlgebraicODE eq = require_eq(cfg);
    const DiscGrid grid = grid_spec(cfg).build();
    std::vector<CoefficientKind> kinds;
    for (const std::string& k : cfg.kinds) {
        if (k == "hinf") kinds.push_back(CoefficientKind::HInf);
        else if (k == "hinf-phi") kinds.push_back(CoefficientKind::HInfPhi);
        else if (k == "bergman") kinds.push_back(CoefficientKind::Bergman);
        else if (k == "ubc-type") kinds.push_back(CoefficientKind::UbcType);
        else throw ConfigError("unknown kind '" + k + "'");
    }
    if (kinds.empty())
        kinds = {CoefficientKind::HInf, CoefficientKind::HInfPhi, CoefficientKind::Bergman,
                 CoefficientKind::UbcType};
    Report rep = classify(eq, kinds, grid, parallel_default());
    return finish(cfg, std::move(rep), "classify");
}

} // namespace

int run(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.threads > 0) {
#ifdef _OPENMP
        omp_set_num_threads(std::min(cfg.threads, effective_workers()));
#endif
    }
    std::filesystem::create_directories(cfg.out_dir);
    if (cfg.command == "scenarios") return cmd_scenarios(cfg);
    if (cfg.command == "residual") return cmd_residual(cfg);
    if (cfg.command == "theorem1") return cmd_theorem1(cfg);
    if (cfg.command == "norms") return cmd_norms(cfg);
    if (cfg.command == "theorem2") return cmd_theorem2(cfg);
    if (cfg.command == "beta") return cmd_beta(cfg);
    if (cfg.command == "dirichlet-counterexample") return cmd_dirichlet_counterexample(cfg);
    if (cfg.command == "classify") return cmd_classify(cfg);
    throw ConfigError("unknown command '" + cfg.command + "'");
}

} // namespace growthlab
