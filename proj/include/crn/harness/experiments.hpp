#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crn/coop_single.hpp"
#include "crn/harness/config.hpp"
#include "crn/neighborhood.hpp"

namespace crn::harness {

/// Outcome of one experiment run. Wall time is reported on the log stream
/// only; the CSV payloads depend on nothing but (config, seed).
struct RunReport {
    std::string experiment;
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::vector<std::string> files;
    std::vector<std::pair<std::string, double>> summary;
};

/// Risk-versus-alpha sweep: traditional sensing, inference with known
/// alpha, the plug-in estimate at the configured observation depth, and
/// one single-node cooperative curve per configured node.
struct RiskCurveConfig {
    double w = 9.0;
    int depth = 15;
    AlphaGrid grid{0.0, 1.0, 0.001};
    std::vector<NodeStats> nodes{{0.9, 0.8}, {0.75, 0.75}, {0.8, 0.2}};

    static RiskCurveConfig from_json(const json& obj);
};

/// Two symmetric-error nodes under varying report correlation.
struct TwoNodeSweepConfig {
    double w = 9.0;
    double beta1 = 0.75;
    double beta2 = 0.7;
    std::vector<double> rho12{0.0, 0.4, 0.8};
    AlphaGrid grid{0.0, 1.0, 0.002};

    static TwoNodeSweepConfig from_json(const json& obj);
};

/// Robust sensing on a seeded correlated scenario: risk of the minimax
/// rule per known marginal order, against the full-information optimum and
/// the independence-assuming baseline.
struct RobustSweepConfig {
    double w = 9.0;
    int node_count = 6;
    std::vector<int> k_known{1, 2, 3, 4, 5, 6};
    AlphaGrid grid{0.0, 1.0, 0.02};
    std::uint64_t pmf_seed = 427;
    double marginal_low = 0.65;
    double marginal_high = 0.85;

    static RobustSweepConfig from_json(const json& obj);
};

/// Neighborhood maps without obstacles: PS near or far from the
/// transmitter, candidate cooperative placements, and the directed-link
/// example with its cooperative repair.
struct NeighborhoodStudyConfig {
    double w = 9.0;
    PowerModel model;
    Point ps_near{0.7, 0.0};
    Point ps_far{1.7, 0.0};
    std::vector<Point> coop_candidates{{1.2, 0.2}, {0.4, 0.3}, {0.0, 0.9}};
    Point cr{1.0, 0.0};
    Point coop_restore{0.4, 0.3};
    GridSpec grid;

    static NeighborhoodStudyConfig from_json(const json& obj);
};

/// Neighborhood maps under transmitter-side shadowing for a set of
/// obstacle sizes, with and without one cooperative node.
struct ObstacleStudyConfig {
    double w = 9.0;
    PowerModel model;
    Point ps{0.7, 0.0};
    double b_tx = 25.0;
    std::vector<double> kappas{0.3, 0.7};
    Point coop{-0.5, 0.0};
    GridSpec grid;

    static ObstacleStudyConfig from_json(const json& obj);
};

struct NeighborhoodCliConfig {
    double w = 9.0;
    PowerModel model;
    Scene scene;
    GridSpec grid;

    static NeighborhoodCliConfig from_json(const json& obj);
};

struct ConnectivityCliConfig {
    double w = 9.0;
    PowerModel model;
    std::vector<CrNode> crs;
    std::vector<Point> coop;
    std::optional<Point> ps;
    double kappa = 1.0;

    static ConnectivityCliConfig from_json(const json& obj);
};

RunReport run_risk_curve(const RiskCurveConfig& cfg, std::uint64_t seed,
                         const std::string& out_dir, const std::string& stem, bool gnuplot);
RunReport run_two_node_sweep(const TwoNodeSweepConfig& cfg, std::uint64_t seed,
                             const std::string& out_dir, const std::string& stem, bool gnuplot);
RunReport run_robust_sweep(const RobustSweepConfig& cfg, std::uint64_t seed,
                           const std::string& out_dir, const std::string& stem, bool gnuplot);
RunReport run_neighborhood_study(const NeighborhoodStudyConfig& cfg, std::uint64_t seed,
                                 const std::string& out_dir, bool gnuplot);
RunReport run_obstacle_study(const ObstacleStudyConfig& cfg, std::uint64_t seed,
                             const std::string& out_dir, bool gnuplot);
RunReport run_neighborhood_cli(const NeighborhoodCliConfig& cfg, const std::string& out_dir,
                               bool gnuplot);
RunReport run_connectivity_cli(const ConnectivityCliConfig& cfg, const std::string& out_dir);

/// Dispatcher for the reproduce subcommand; id is one of fig3, fig4,
/// fig5, fig6, fig7. overrides may be null.
RunReport reproduce(const std::string& id, const json& overrides,
                    std::optional<std::uint64_t> seed_override, const std::string& out_dir,
                    bool gnuplot);

} // namespace crn::harness
