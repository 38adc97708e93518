#include "crn/harness/experiments.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "crn/errors.hpp"
#include "crn/fusion.hpp"
#include "crn/harness/log.hpp"
#include "crn/harness/scenario.hpp"
#include "crn/indicators.hpp"
#include "crn/robust.hpp"

namespace crn::harness {

namespace {

using Clock = std::chrono::steady_clock;

std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".")
        return name;
    if (dir.back() == '/')
        return dir + name;
    return dir + "/" + name;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void write_gnuplot_lines(const std::string& path, const std::string& csv_name,
                         const std::vector<std::string>& columns) {
    std::string script;
    script += "set datafile separator ','\n";
    script += "set datafile commentschars '#'\n";
    script += "set key outside\n";
    script += "set xlabel '" + columns.front() + "'\n";
    script += "plot ";
    for (std::size_t i = 1; i < columns.size(); ++i) {
        if (i > 1)
            script += ", \\\n     ";
        script += "'" + csv_name + "' using 1:" + std::to_string(i + 1) + " with lines title '" +
                  columns[i] + "'";
    }
    script += "\n";
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << script;
}

std::pair<JointPmf, JointPmf> single_node_pmfs(const NodeStats& node) {
    const SubsetIndexer idx(1);
    return {product_pmf(idx, 1, {node.beta}), product_pmf(idx, 0, {node.gamma})};
}

// Boundary polyline file: per angle, the outermost admissible radius of
// each supplied map.
void write_boundary_csv(CsvWriter& csv, const std::vector<std::string>& names,
                        const std::vector<const NeighborhoodMap*>& maps) {
    std::vector<std::string> cols{"theta"};
    cols.insert(cols.end(), names.begin(), names.end());
    csv.header(cols);
    const int n_angular = maps.front()->grid.n_angular;
    for (int ia = 0; ia < n_angular; ++ia) {
        std::vector<double> row{maps.front()->theta(ia)};
        for (const NeighborhoodMap* map : maps)
            row.push_back(map->boundary_radius(ia));
        csv.row(row);
    }
}

} // namespace

RiskCurveConfig RiskCurveConfig::from_json(const json& obj) {
    RiskCurveConfig cfg;
    if (obj.is_null())
        return cfg;
    require_keys(obj, {"w", "L", "alpha_grid", "nodes", "seed"}, "risk-curve config");
    cfg.w = get_double(obj, "w", cfg.w);
    cfg.depth = static_cast<int>(get_int(obj, "L", cfg.depth));
    if (cfg.depth < 0 || cfg.depth > 30)
        throw ConfigError("config: L must lie in [0,30]");
    if (obj.contains("alpha_grid"))
        cfg.grid = AlphaGrid::from_json(obj.at("alpha_grid"), cfg.grid);
    if (obj.contains("nodes")) {
        cfg.nodes.clear();
        for (const auto& n : obj.at("nodes")) {
            require_keys(n, {"beta", "gamma"}, "nodes[]");
            NodeStats stats{get_double(n, "beta", 0.5), get_double(n, "gamma", 0.5)};
            if (!stats.valid())
                throw ConfigError("config: node beta/gamma must lie in [0,1]");
            cfg.nodes.push_back(stats);
        }
    }
    return cfg;
}

RunReport run_risk_curve(const RiskCurveConfig& cfg, std::uint64_t seed,
                         const std::string& out_dir, const std::string& stem, bool gnuplot) {
    const auto t0 = Clock::now();
    RunReport report;
    report.experiment = stem;
    report.seed = seed;

    CsvWriter csv;
    csv.meta("experiment", stem);
    csv.meta("seed", static_cast<long long>(seed));
    csv.meta("w", cfg.w);
    csv.meta("L", static_cast<long long>(cfg.depth));
    cfg.grid.echo(csv);
    csv.meta("alpha_c_known", cfg.w / (cfg.w + 1.0));

    std::vector<std::pair<JointPmf, JointPmf>> pmfs;
    for (std::size_t i = 0; i < cfg.nodes.size(); ++i) {
        const NodeStats& node = cfg.nodes[i];
        pmfs.push_back(single_node_pmfs(node));
        const std::string tag = "node" + std::to_string(i + 1);
        csv.meta(tag + ".beta", node.beta);
        csv.meta(tag + ".gamma", node.gamma);
        csv.meta(tag + ".alpha_c", critical_alpha(cfg.w, pmfs.back().first, pmfs.back().second));
    }

    std::vector<std::string> cols{"alpha", "risk_traditional", "risk_inference", "risk_plugin"};
    for (std::size_t i = 0; i < cfg.nodes.size(); ++i)
        cols.push_back("risk_coop_" + std::to_string(i + 1));
    csv.header(cols);

    for (double alpha : cfg.grid.points()) {
        const IndicatorStats stats{alpha, cfg.w};
        std::vector<double> row{alpha, traditional_risk(stats), inference_rule(stats).risk,
                                plugin_expected_risk(alpha, cfg.w, cfg.depth)};
        for (const auto& [p1, p0] : pmfs)
            row.push_back(optimal_rule(stats, p1, p0).risk);
        csv.row(row);
    }

    const std::string csv_name = stem + ".csv";
    const std::string path = join_path(out_dir, csv_name);
    csv.write(path);
    report.files.push_back(path);
    if (gnuplot) {
        const std::string gp = join_path(out_dir, stem + ".gp");
        write_gnuplot_lines(gp, csv_name, cols);
        report.files.push_back(gp);
    }
    report.wall_seconds = seconds_since(t0);
    CRN_LOG_INFO("%s: wrote %s in %.3fs", stem.c_str(), path.c_str(), report.wall_seconds);
    return report;
}

TwoNodeSweepConfig TwoNodeSweepConfig::from_json(const json& obj) {
    TwoNodeSweepConfig cfg;
    if (obj.is_null())
        return cfg;
    require_keys(obj, {"w", "beta1", "beta2", "rho12", "alpha_grid", "seed"}, "fig6 config");
    cfg.w = get_double(obj, "w", cfg.w);
    cfg.beta1 = get_double(obj, "beta1", cfg.beta1);
    cfg.beta2 = get_double(obj, "beta2", cfg.beta2);
    if (obj.contains("rho12")) {
        cfg.rho12.clear();
        for (const auto& r : obj.at("rho12"))
            cfg.rho12.push_back(r.get<double>());
    }
    if (obj.contains("alpha_grid"))
        cfg.grid = AlphaGrid::from_json(obj.at("alpha_grid"), cfg.grid);
    return cfg;
}

RunReport run_two_node_sweep(const TwoNodeSweepConfig& cfg, std::uint64_t seed,
                             const std::string& out_dir, const std::string& stem, bool gnuplot) {
    const auto t0 = Clock::now();
    RunReport report;
    report.experiment = stem;
    report.seed = seed;

    CsvWriter csv;
    csv.meta("experiment", stem);
    csv.meta("seed", static_cast<long long>(seed));
    csv.meta("w", cfg.w);
    csv.meta("beta1", cfg.beta1);
    csv.meta("beta2", cfg.beta2);
    cfg.grid.echo(csv);

    const SubsetIndexer pair_idx(2);
    const JointPmf p1 = product_pmf(pair_idx, 1, {cfg.beta1, cfg.beta2});
    std::vector<JointPmf> p0s;
    for (double rho : cfg.rho12) {
        TwoNodeCorr tc{cfg.beta1, cfg.beta2, cfg.beta1, cfg.beta2, rho};
        p0s.push_back(correlated_pair_pmf(tc)); // throws InvalidPmf when infeasible
        csv.meta("alpha_c_rho_" + fmt_double(rho), critical_alpha(cfg.w, p1, p0s.back()));
    }
    const auto [n1_p1, n1_p0] = single_node_pmfs(NodeStats{cfg.beta1, cfg.beta1});
    csv.meta("alpha_c_node1", critical_alpha(cfg.w, n1_p1, n1_p0));
    csv.meta("alpha_c_known", cfg.w / (cfg.w + 1.0));

    std::vector<std::string> cols{"alpha", "risk_node1"};
    for (double rho : cfg.rho12)
        cols.push_back("risk_rho_" + fmt_double(rho));
    csv.header(cols);

    for (double alpha : cfg.grid.points()) {
        const IndicatorStats stats{alpha, cfg.w};
        std::vector<double> row{alpha, optimal_rule(stats, n1_p1, n1_p0).risk};
        for (const JointPmf& p0 : p0s)
            row.push_back(optimal_rule(stats, p1, p0).risk);
        csv.row(row);
    }

    const std::string csv_name = stem + ".csv";
    const std::string path = join_path(out_dir, csv_name);
    csv.write(path);
    report.files.push_back(path);
    if (gnuplot) {
        const std::string gp = join_path(out_dir, stem + ".gp");
        write_gnuplot_lines(gp, csv_name, cols);
        report.files.push_back(gp);
    }
    report.wall_seconds = seconds_since(t0);
    CRN_LOG_INFO("%s: wrote %s in %.3fs", stem.c_str(), path.c_str(), report.wall_seconds);
    return report;
}

RobustSweepConfig RobustSweepConfig::from_json(const json& obj) {
    RobustSweepConfig cfg;
    if (obj.is_null())
        return cfg;
    require_keys(obj,
                 {"w", "K", "k_known", "alpha_grid", "pmf_seed", "marginal_low", "marginal_high",
                  "seed"},
                 "robust config");
    cfg.w = get_double(obj, "w", cfg.w);
    cfg.node_count = static_cast<int>(get_int(obj, "K", cfg.node_count));
    if (cfg.node_count < 1 || cfg.node_count > 10)
        throw ConfigError("config: K must lie in [1,10]");
    if (obj.contains("k_known")) {
        cfg.k_known.clear();
        for (const auto& k : obj.at("k_known")) {
            const int v = k.get<int>();
            if (v < 0 || v > cfg.node_count)
                throw ConfigError("config: k_known entries must lie in [0,K]");
            cfg.k_known.push_back(v);
        }
    } else {
        cfg.k_known.clear();
        for (int k = 1; k <= cfg.node_count; ++k)
            cfg.k_known.push_back(k);
    }
    if (obj.contains("alpha_grid"))
        cfg.grid = AlphaGrid::from_json(obj.at("alpha_grid"), cfg.grid);
    cfg.pmf_seed = static_cast<std::uint64_t>(get_int(obj, "pmf_seed",
                                                      static_cast<long long>(cfg.pmf_seed)));
    cfg.marginal_low = get_double(obj, "marginal_low", cfg.marginal_low);
    cfg.marginal_high = get_double(obj, "marginal_high", cfg.marginal_high);
    return cfg;
}

RunReport run_robust_sweep(const RobustSweepConfig& cfg, std::uint64_t seed,
                           const std::string& out_dir, const std::string& stem, bool gnuplot) {
    const auto t0 = Clock::now();
    RunReport report;
    report.experiment = stem;
    report.seed = seed;

    const SubsetIndexer idx(cfg.node_count);
    const CorrelatedScenario sc =
        make_correlated_scenario(idx, cfg.pmf_seed, cfg.marginal_low, cfg.marginal_high);

    CsvWriter csv;
    csv.meta("experiment", stem);
    csv.meta("seed", static_cast<long long>(seed));
    csv.meta("w", cfg.w);
    csv.meta("K", static_cast<long long>(cfg.node_count));
    csv.meta("pmf_seed", static_cast<long long>(cfg.pmf_seed));
    csv.meta("marginal_low", cfg.marginal_low);
    csv.meta("marginal_high", cfg.marginal_high);
    cfg.grid.echo(csv);
    for (int i = 0; i < cfg.node_count; ++i) {
        csv.meta("beta" + std::to_string(i + 1), sc.betas[static_cast<std::size_t>(i)]);
        csv.meta("gamma" + std::to_string(i + 1), sc.gammas[static_cast<std::size_t>(i)]);
    }

    std::vector<MarginalSet> q1s;
    std::vector<MarginalSet> q0s;
    int max_k = 1;
    for (int k : cfg.k_known)
        max_k = std::max(max_k, k);
    for (int k = 0; k <= max_k; ++k) {
        q1s.push_back(joint_to_marginals(idx, sc.p1, k));
        q0s.push_back(joint_to_marginals(idx, sc.p0, k));
    }

    csv.header({"alpha", "k_known", "robust_risk", "optimal_risk", "independence_risk"});
    for (double alpha : cfg.grid.points()) {
        const IndicatorStats stats{alpha, cfg.w};
        const double optimal = optimal_rule(stats, sc.p1, sc.p0).risk;
        const DecisionRule indep = independence_assumption_rule(
            idx, stats, q1s[static_cast<std::size_t>(std::min(1, max_k))],
            q0s[static_cast<std::size_t>(std::min(1, max_k))]);
        const double indep_risk = rule_risk(indep.gamma_table, stats, sc.p1, sc.p0);
        for (int k : cfg.k_known) {
            RobustProblem prob{stats, k, cfg.node_count, q1s[static_cast<std::size_t>(k)],
                               q0s[static_cast<std::size_t>(k)]};
            const RobustSolution sol = solve_robust(prob);
            csv.row({alpha, static_cast<double>(k), sol.objective, optimal, indep_risk});
        }
    }

    const std::string csv_name = stem + ".csv";
    const std::string path = join_path(out_dir, csv_name);
    csv.write(path);
    report.files.push_back(path);
    if (gnuplot) {
        const std::string gp = join_path(out_dir, stem + ".gp");
        write_gnuplot_lines(gp, csv_name,
                            {"alpha", "robust_risk", "optimal_risk", "independence_risk"});
        report.files.push_back(gp);
    }
    report.wall_seconds = seconds_since(t0);
    CRN_LOG_INFO("%s: wrote %s in %.3fs", stem.c_str(), path.c_str(), report.wall_seconds);
    return report;
}

NeighborhoodStudyConfig NeighborhoodStudyConfig::from_json(const json& obj) {
    NeighborhoodStudyConfig cfg;
    if (obj.is_null())
        return cfg;
    require_keys(obj,
                 {"w", "model", "ps_near", "ps_far", "coop_candidates", "cr", "coop_restore",
                  "grid", "seed"},
                 "fig4 config");
    cfg.w = get_double(obj, "w", cfg.w);
    if (obj.contains("model"))
        cfg.model = parse_power_model(obj.at("model"), cfg.model);
    if (obj.contains("ps_near"))
        cfg.ps_near = parse_point(obj.at("ps_near"), "ps_near");
    if (obj.contains("ps_far"))
        cfg.ps_far = parse_point(obj.at("ps_far"), "ps_far");
    if (obj.contains("coop_candidates")) {
        cfg.coop_candidates.clear();
        for (const auto& p : obj.at("coop_candidates"))
            cfg.coop_candidates.push_back(parse_point(p, "coop_candidates[]"));
    }
    if (obj.contains("cr"))
        cfg.cr = parse_point(obj.at("cr"), "cr");
    if (obj.contains("coop_restore"))
        cfg.coop_restore = parse_point(obj.at("coop_restore"), "coop_restore");
    if (obj.contains("grid"))
        cfg.grid = parse_grid(obj.at("grid"), cfg.grid);
    return cfg;
}

RunReport run_neighborhood_study(const NeighborhoodStudyConfig& cfg, std::uint64_t seed,
                                 const std::string& out_dir, bool gnuplot) {
    (void)gnuplot;
    const auto t0 = Clock::now();
    RunReport report;
    report.experiment = "fig4";
    report.seed = seed;

    Scene near_scene;
    near_scene.ps = cfg.ps_near;
    const NeighborhoodMap cov = coverage_map(near_scene, cfg.model, cfg.w, cfg.grid);

    {
        const NeighborhoodMap map = neighborhood(near_scene, cfg.model, cfg.w, cfg.grid);
        CsvWriter csv;
        csv.meta("experiment", "fig4a");
        csv.meta("seed", static_cast<long long>(seed));
        csv.meta("w", cfg.w);
        echo_power_model(csv, cfg.model);
        echo_scene(csv, near_scene);
        echo_grid(csv, map.grid);
        csv.meta("area", map.area);
        csv.meta("coverage_area", cov.area);
        csv.meta("ratio", map.area / cov.area);
        write_boundary_csv(csv, {"r_coverage", "r_neighborhood"}, {&cov, &map});
        const std::string path = join_path(out_dir, "fig4a.csv");
        csv.write(path);
        report.files.push_back(path);
        report.summary.emplace_back("fig4a_ratio", map.area / cov.area);
    }

    Scene far_scene;
    far_scene.ps = cfg.ps_far;
    const NeighborhoodMap far_nocoop = neighborhood(far_scene, cfg.model, cfg.w, cfg.grid);
    const char* panels = "bcd";
    std::vector<double> candidate_areas;
    for (std::size_t c = 0; c < cfg.coop_candidates.size(); ++c) {
        Scene coop_scene = far_scene;
        coop_scene.nodes = {cfg.coop_candidates[c]};
        const NeighborhoodMap map = neighborhood(coop_scene, cfg.model, cfg.w, cfg.grid);
        candidate_areas.push_back(map.area);
        CsvWriter csv;
        const std::string panel =
            c < 3 ? std::string("fig4") + panels[c] : "fig4_candidate" + std::to_string(c + 1);
        csv.meta("experiment", panel);
        csv.meta("seed", static_cast<long long>(seed));
        csv.meta("w", cfg.w);
        echo_power_model(csv, cfg.model);
        echo_scene(csv, coop_scene);
        echo_grid(csv, map.grid);
        csv.meta("area_nocoop", far_nocoop.area);
        csv.meta("area_coop", map.area);
        csv.meta("coverage_area", cov.area);
        write_boundary_csv(csv, {"r_coverage", "r_nocoop", "r_coop"},
                           {&cov, &far_nocoop, &map});
        const std::string path = join_path(out_dir, panel + ".csv");
        csv.write(path);
        report.files.push_back(path);
        report.summary.emplace_back(panel + "_area", map.area);
    }

    {
        CsvWriter csv;
        csv.meta("experiment", "fig4_selection");
        csv.meta("seed", static_cast<long long>(seed));
        csv.meta("w", cfg.w);
        const int chosen = select_cooperative_node(cfg.coop_candidates, far_scene, cfg.model,
                                                   1.0 / (cfg.w + 1.0), cfg.grid);
        csv.meta("selected", static_cast<long long>(chosen));
        csv.header({"candidate", "x", "y", "area"});
        for (std::size_t c = 0; c < cfg.coop_candidates.size(); ++c)
            csv.row({static_cast<double>(c), cfg.coop_candidates[c].x, cfg.coop_candidates[c].y,
                     candidate_areas[c]});
        const std::string path = join_path(out_dir, "fig4_selection.csv");
        csv.write(path);
        report.files.push_back(path);
        report.summary.emplace_back("fig4_selected", static_cast<double>(chosen));
    }

    {
        CsvWriter csv;
        csv.meta("experiment", "fig4_connectivity");
        csv.meta("seed", static_cast<long long>(seed));
        csv.meta("w", cfg.w);
        echo_power_model(csv, cfg.model);
        csv.meta("cr",
                 fmt_double(cfg.cr.x) + " " + fmt_double(cfg.cr.y));
        csv.meta("coop_restore",
                 fmt_double(cfg.coop_restore.x) + " " + fmt_double(cfg.coop_restore.y));
        csv.header({"scenario", "i", "j", "alpha", "alpha_c", "edge"});
        const std::vector<CrNode> crs{{Point{0.0, 0.0}, 0.0}, {cfg.cr, 0.0}};
        const auto emit = [&](const char* tag, const std::vector<Point>& coop) {
            const ConnectivityResult con =
                connectivity(crs, coop, cfg.ps_far, cfg.model, cfg.w, 1.0);
            for (int i = 0; i < con.n; ++i)
                for (int j = 0; j < con.n; ++j) {
                    if (i == j)
                        continue;
                    csv.row_text({tag, std::to_string(i), std::to_string(j),
                                  fmt_double(con.alpha(i, j)), fmt_double(con.alpha_c(i, j)),
                                  con.edge(i, j) ? "1" : "0"});
                }
        };
        emit("nocoop", {});
        emit("coop", {cfg.coop_restore});
        const std::string path = join_path(out_dir, "fig4_connectivity.csv");
        csv.write(path);
        report.files.push_back(path);
    }

    report.wall_seconds = seconds_since(t0);
    CRN_LOG_INFO("fig4: wrote %zu files in %.3fs", report.files.size(), report.wall_seconds);
    return report;
}

ObstacleStudyConfig ObstacleStudyConfig::from_json(const json& obj) {
    ObstacleStudyConfig cfg;
    if (obj.is_null())
        return cfg;
    require_keys(obj, {"w", "model", "ps", "b_tx", "kappas", "coop", "grid", "seed"},
                 "fig5 config");
    cfg.w = get_double(obj, "w", cfg.w);
    if (obj.contains("model"))
        cfg.model = parse_power_model(obj.at("model"), cfg.model);
    if (obj.contains("ps"))
        cfg.ps = parse_point(obj.at("ps"), "ps");
    cfg.b_tx = get_double(obj, "b_tx", cfg.b_tx);
    if (obj.contains("kappas")) {
        cfg.kappas.clear();
        for (const auto& k : obj.at("kappas"))
            cfg.kappas.push_back(k.get<double>());
    }
    if (obj.contains("coop"))
        cfg.coop = parse_point(obj.at("coop"), "coop");
    if (obj.contains("grid"))
        cfg.grid = parse_grid(obj.at("grid"), cfg.grid);
    return cfg;
}

RunReport run_obstacle_study(const ObstacleStudyConfig& cfg, std::uint64_t seed,
                             const std::string& out_dir, bool gnuplot) {
    (void)gnuplot;
    const auto t0 = Clock::now();
    RunReport report;
    report.experiment = "fig5";
    report.seed = seed;

    for (std::size_t i = 0; i < cfg.kappas.size(); ++i) {
        Scene scene;
        scene.ps = cfg.ps;
        scene.b_tx = cfg.b_tx;
        scene.kappa = cfg.kappas[i];
        const NeighborhoodMap cov = coverage_map(scene, cfg.model, cfg.w, cfg.grid);
        const NeighborhoodMap nocoop = neighborhood(scene, cfg.model, cfg.w, cfg.grid);
        Scene coop_scene = scene;
        coop_scene.nodes = {cfg.coop};
        const NeighborhoodMap coop = neighborhood(coop_scene, cfg.model, cfg.w, cfg.grid);

        CsvWriter csv;
        const std::string panel = "fig5" + std::string(1, static_cast<char>('a' + i));
        csv.meta("experiment", panel);
        csv.meta("seed", static_cast<long long>(seed));
        csv.meta("w", cfg.w);
        echo_power_model(csv, cfg.model);
        echo_scene(csv, coop_scene);
        echo_grid(csv, nocoop.grid);
        csv.meta("kappa", cfg.kappas[i]);
        csv.meta("b_tx", cfg.b_tx);
        csv.meta("coverage_area", cov.area);
        csv.meta("area_nocoop", nocoop.area);
        csv.meta("area_coop", coop.area);
        write_boundary_csv(csv, {"r_coverage", "r_nocoop", "r_coop"}, {&cov, &nocoop, &coop});
        const std::string path = join_path(out_dir, panel + ".csv");
        csv.write(path);
        report.files.push_back(path);
        report.summary.emplace_back(panel + "_area_nocoop", nocoop.area);
        report.summary.emplace_back(panel + "_area_coop", coop.area);
    }

    report.wall_seconds = seconds_since(t0);
    CRN_LOG_INFO("fig5: wrote %zu files in %.3fs", report.files.size(), report.wall_seconds);
    return report;
}

NeighborhoodCliConfig NeighborhoodCliConfig::from_json(const json& obj) {
    NeighborhoodCliConfig cfg;
    if (obj.is_null())
        return cfg;
    require_keys(obj, {"w", "model", "scene", "grid", "seed"}, "neighborhood config");
    cfg.w = get_double(obj, "w", cfg.w);
    if (obj.contains("model"))
        cfg.model = parse_power_model(obj.at("model"), cfg.model);
    if (obj.contains("scene"))
        cfg.scene = parse_scene(obj.at("scene"), cfg.scene);
    if (obj.contains("grid"))
        cfg.grid = parse_grid(obj.at("grid"), cfg.grid);
    return cfg;
}

RunReport run_neighborhood_cli(const NeighborhoodCliConfig& cfg, const std::string& out_dir,
                               bool gnuplot) {
    (void)gnuplot;
    const auto t0 = Clock::now();
    RunReport report;
    report.experiment = "neighborhood";

    const NeighborhoodMap map = neighborhood(cfg.scene, cfg.model, cfg.w, cfg.grid);
    const NeighborhoodMap cov = coverage_map(cfg.scene, cfg.model, cfg.w, cfg.grid);

    CsvWriter csv;
    csv.meta("experiment", "neighborhood");
    csv.meta("w", cfg.w);
    echo_power_model(csv, cfg.model);
    echo_scene(csv, cfg.scene);
    echo_grid(csv, map.grid);
    csv.meta("area", map.area);
    csv.meta("coverage_area", cov.area);
    csv.meta("ratio", cov.area > 0.0 ? map.area / cov.area : 0.0);
    csv.header({"r", "theta", "alpha", "admissible"});
    for (int ir = 0; ir < map.grid.n_radial; ++ir)
        for (int ia = 0; ia < map.grid.n_angular; ++ia) {
            const NeighborhoodCell& cell = map.cell(ir, ia);
            csv.row({map.r(ir), map.theta(ia), cell.alpha,
                     static_cast<double>(cell.admissible)});
        }

    const std::string path = join_path(out_dir, "neighborhood.csv");
    csv.write(path);
    report.files.push_back(path);
    report.summary.emplace_back("area", map.area);
    report.summary.emplace_back("coverage_area", cov.area);
    report.wall_seconds = seconds_since(t0);
    CRN_LOG_INFO("neighborhood: wrote %s in %.3fs", path.c_str(), report.wall_seconds);
    return report;
}

ConnectivityCliConfig ConnectivityCliConfig::from_json(const json& obj) {
    ConnectivityCliConfig cfg;
    if (obj.is_null())
        throw ConfigError("config: connectivity requires a config with 'crs'");
    require_keys(obj, {"w", "model", "crs", "coop", "ps", "kappa", "seed"},
                 "connectivity config");
    cfg.w = get_double(obj, "w", cfg.w);
    if (obj.contains("model"))
        cfg.model = parse_power_model(obj.at("model"), cfg.model);
    if (!obj.contains("crs"))
        throw ConfigError("config: connectivity requires 'crs'");
    for (const auto& node : obj.at("crs")) {
        require_keys(node, {"pos", "b_tx"}, "crs[]");
        CrNode cr;
        cr.pos = parse_point(node.at("pos"), "crs[].pos");
        cr.b_tx = get_double(node, "b_tx", 0.0);
        cfg.crs.push_back(cr);
    }
    if (obj.contains("coop"))
        for (const auto& p : obj.at("coop"))
            cfg.coop.push_back(parse_point(p, "coop[]"));
    if (obj.contains("ps") && !obj.at("ps").is_null())
        cfg.ps = parse_point(obj.at("ps"), "ps");
    cfg.kappa = get_double(obj, "kappa", cfg.kappa);
    return cfg;
}

RunReport run_connectivity_cli(const ConnectivityCliConfig& cfg, const std::string& out_dir) {
    const auto t0 = Clock::now();
    RunReport report;
    report.experiment = "connectivity";

    const ConnectivityResult con =
        connectivity(cfg.crs, cfg.coop, cfg.ps, cfg.model, cfg.w, cfg.kappa);

    CsvWriter csv;
    csv.meta("experiment", "connectivity");
    csv.meta("w", cfg.w);
    echo_power_model(csv, cfg.model);
    for (std::size_t i = 0; i < cfg.crs.size(); ++i)
        csv.meta("cr." + std::to_string(i),
                 fmt_double(cfg.crs[i].pos.x) + " " + fmt_double(cfg.crs[i].pos.y) + " b_tx=" +
                     fmt_double(cfg.crs[i].b_tx));
    csv.header({"i", "j", "alpha", "alpha_c", "edge"});
    for (int i = 0; i < con.n; ++i)
        for (int j = 0; j < con.n; ++j) {
            if (i == j)
                continue;
            csv.row({static_cast<double>(i), static_cast<double>(j), con.alpha(i, j),
                     con.alpha_c(i, j), con.edge(i, j) ? 1.0 : 0.0});
        }

    const std::string path = join_path(out_dir, "connectivity.csv");
    csv.write(path);
    report.files.push_back(path);
    report.wall_seconds = seconds_since(t0);
    CRN_LOG_INFO("connectivity: wrote %s in %.3fs", path.c_str(), report.wall_seconds);
    return report;
}

RunReport reproduce(const std::string& id, const json& overrides,
                    std::optional<std::uint64_t> seed_override, const std::string& out_dir,
                    bool gnuplot) {
    const json& cfg = overrides;
    const std::uint64_t cfg_seed =
        cfg.is_null() ? 1 : static_cast<std::uint64_t>(get_int(cfg, "seed", 1));
    const std::uint64_t seed = seed_override.value_or(cfg_seed);

    if (id == "fig3") {
        RiskCurveConfig rc = RiskCurveConfig::from_json(cfg);
        return run_risk_curve(rc, seed, out_dir, "fig3", gnuplot);
    }
    if (id == "fig6") {
        TwoNodeSweepConfig tc = TwoNodeSweepConfig::from_json(cfg);
        return run_two_node_sweep(tc, seed, out_dir, "fig6", gnuplot);
    }
    if (id == "fig7") {
        RobustSweepConfig rc = RobustSweepConfig::from_json(cfg);
        if (seed_override)
            rc.pmf_seed = *seed_override;
        return run_robust_sweep(rc, seed, out_dir, "fig7", gnuplot);
    }
    if (id == "fig4") {
        NeighborhoodStudyConfig nc = NeighborhoodStudyConfig::from_json(cfg);
        return run_neighborhood_study(nc, seed, out_dir, gnuplot);
    }
    if (id == "fig5") {
        ObstacleStudyConfig oc = ObstacleStudyConfig::from_json(cfg);
        return run_obstacle_study(oc, seed, out_dir, gnuplot);
    }
    throw ConfigError("reproduce: unknown experiment '" + id + "'");
}

} // namespace crn::harness
