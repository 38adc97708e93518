#include <cstdio>
#include <exception>
#include <optional>
#include <string>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "crn/errors.hpp"
#include "crn/fusion.hpp"
#include "crn/harness/config.hpp"
#include "crn/harness/experiments.hpp"
#include "crn/harness/log.hpp"
#include "crn/harness/pmf_io.hpp"
#include "crn/harness/scenario.hpp"
#include "crn/neighborhood.hpp"
#include "crn/qfunc.hpp"
#include "crn/simplex.hpp"

namespace {

using crn::harness::json;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    int threads = 0;
    bool gnuplot = false;
};

json load_config(const GlobalOpts& opts) {
    if (opts.config_path.empty())
        return json(nullptr);
    return crn::harness::load_json_file(opts.config_path);
}

void apply_threads(const GlobalOpts& opts) {
#ifdef _OPENMP
    if (opts.threads > 0)
        omp_set_num_threads(opts.threads);
#else
    (void)opts;
#endif
}

void add_common(CLI::App* cmd, GlobalOpts& opts) {
    cmd->add_option("--config", opts.config_path, "JSON configuration file");
    cmd->add_option("--seed", opts.seed, "Seed override");
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--threads", opts.threads, "OpenMP thread count (0 = runtime default)");
    cmd->add_flag("--gnuplot", opts.gnuplot, "Also emit a gnuplot script per CSV");
}

void print_report(const crn::harness::RunReport& report) {
    for (const std::string& f : report.files)
        std::printf("%s\n", f.c_str());
    CRN_LOG_INFO("%s finished in %.3fs", report.experiment.c_str(), report.wall_seconds);
}

int run_selftest() {
    int failures = 0;
    const auto check = [&](bool ok, const char* what) {
        std::printf("%s %s\n", ok ? "PASS" : "FAIL", what);
        if (!ok)
            ++failures;
    };

    {
        crn::JointPmf one;
        one.s = 1;
        one.k = 0;
        one.values = Eigen::VectorXd::Ones(1);
        crn::JointPmf zero = one;
        zero.s = 0;
        check(std::abs(crn::critical_alpha(9.0, one, zero) - 0.9) < 1e-15,
              "critical boundary without cooperation");
    }
    {
        const crn::SubsetIndexer idx(4);
        const crn::GMatrix g = crn::build_g(idx, 1, 4);
        const Eigen::MatrixXi sq = g.square_block();
        const Eigen::MatrixXi inv = crn::invert_square_block(idx, g);
        check((inv * sq).isIdentity(), "marginal-operator inverse");
    }
    {
        crn::LpProblem lp;
        lp.c = Eigen::VectorXd::Zero(4);
        lp.c(0) = 1.0;
        lp.a_eq = Eigen::MatrixXd::Zero(3, 4);
        lp.b_eq = Eigen::VectorXd::Zero(3);
        // t - x - s1 = 0, t + x - s2 = 0, x = 0.3
        lp.a_eq(0, 0) = 1.0;
        lp.a_eq(0, 1) = -1.0;
        lp.a_eq(0, 2) = -1.0;
        lp.a_eq(1, 0) = 1.0;
        lp.a_eq(1, 1) = 1.0;
        lp.a_eq(1, 3) = -1.0;
        lp.b_eq(2) = 0.3;
        lp.a_eq(2, 1) = 1.0;
        lp.lower = Eigen::VectorXd::Zero(4);
        lp.upper = Eigen::VectorXd::Constant(4, std::numeric_limits<double>::infinity());
        const crn::LpSolution sol = crn::lp_solve(lp);
        check(std::abs(sol.objective - 0.3) < 1e-9, "absolute-value epigraph program");
    }
    {
        crn::PowerModel model;
        const double rc = crn::coverage_radius(model, 9.0);
        check(std::abs(rc - 1.1409) < 1e-3, "coverage radius closed form");
    }
    {
        const double x = crn::qfunc_inv(0.975);
        check(std::abs(crn::qfunc(x) - 0.975) < 1e-12, "tail probability inverse");
    }
    return failures == 0 ? 0 : 1;
}

int run_convert_pmf(const std::string& in_path, const std::string& to, int order, double tail,
                    const std::string& out_file) {
    const crn::harness::PmfDocument doc = crn::harness::read_pmf_csv(in_path);
    if (to == "marginals") {
        const auto* joint = std::get_if<crn::JointPmf>(&doc);
        if (joint == nullptr)
            throw crn::ConfigError("convert-pmf: input must be a joint pmf");
        const crn::SubsetIndexer idx(joint->k);
        if (order < 0 || order > joint->k)
            throw crn::ConfigError("convert-pmf: --order must lie in [0,k]");
        crn::harness::write_marginals_csv(out_file, idx,
                                          crn::joint_to_marginals(idx, *joint, order));
    } else if (to == "joint") {
        const auto* q = std::get_if<crn::MarginalSet>(&doc);
        if (q == nullptr)
            throw crn::ConfigError("convert-pmf: input must be a marginal stack");
        const crn::SubsetIndexer idx(q->k);
        crn::harness::write_joint_csv(out_file, idx, crn::complete_joint(idx, *q, tail));
    } else {
        throw crn::ConfigError("convert-pmf: --to must be joint or marginals");
    }
    std::printf("%s\n", out_file.c_str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectrum sensing toolkit for cognitive radio networks"};
    app.require_subcommand(1);

    GlobalOpts opts;

    auto* risk = app.add_subcommand("risk-curve", "Bayesian risk versus availability prior");
    add_common(risk, opts);
    auto* robust = app.add_subcommand("robust", "Minimax sensing under partial marginals");
    add_common(robust, opts);
    auto* neigh = app.add_subcommand("neighborhood", "Admissibility map around a transmitter");
    add_common(neigh, opts);
    auto* conn = app.add_subcommand("connectivity", "Directed link graph between CRs");
    add_common(conn, opts);

    auto* conv = app.add_subcommand("convert-pmf", "Convert between joint and marginal CSV");
    std::string conv_in;
    std::string conv_to;
    std::string conv_out = "converted.csv";
    int conv_order = 1;
    double conv_tail = 0.0;
    conv->add_option("--in", conv_in, "Input pmf CSV")->required();
    conv->add_option("--to", conv_to, "Target kind: joint | marginals")->required();
    conv->add_option("--order", conv_order, "Marginal order (for --to marginals)");
    conv->add_option("--tail", conv_tail, "Full-agreement probability (for --to joint)");
    conv->add_option("--out-file", conv_out, "Output CSV path");

    auto* repro = app.add_subcommand("reproduce", "Re-run a bundled experiment");
    std::string fig_id;
    repro->add_option("figure", fig_id, "One of fig3 fig4 fig5 fig6 fig7")->required();
    add_common(repro, opts);

    auto* self = app.add_subcommand("selftest", "Quick internal consistency checks");
    (void)self;

    CLI11_PARSE(app, argc, argv);
    apply_threads(opts);

    try {
        if (risk->parsed()) {
            const json cfg = load_config(opts);
            auto rc = crn::harness::RiskCurveConfig::from_json(cfg);
            const std::uint64_t seed = opts.seed.value_or(
                cfg.is_null() ? 1 : static_cast<std::uint64_t>(
                                        crn::harness::get_int(cfg, "seed", 1)));
            print_report(
                crn::harness::run_risk_curve(rc, seed, opts.out_dir, "risk_curve", opts.gnuplot));
        } else if (robust->parsed()) {
            const json cfg = load_config(opts);
            auto rc = crn::harness::RobustSweepConfig::from_json(cfg);
            if (opts.seed)
                rc.pmf_seed = *opts.seed;
            print_report(crn::harness::run_robust_sweep(rc, rc.pmf_seed, opts.out_dir, "robust",
                                                        opts.gnuplot));
        } else if (neigh->parsed()) {
            const json cfg = load_config(opts);
            auto nc = crn::harness::NeighborhoodCliConfig::from_json(cfg);
            print_report(crn::harness::run_neighborhood_cli(nc, opts.out_dir, opts.gnuplot));
        } else if (conn->parsed()) {
            const json cfg = load_config(opts);
            auto cc = crn::harness::ConnectivityCliConfig::from_json(cfg);
            print_report(crn::harness::run_connectivity_cli(cc, opts.out_dir));
        } else if (conv->parsed()) {
            return run_convert_pmf(conv_in, conv_to, conv_order, conv_tail, conv_out);
        } else if (repro->parsed()) {
            const json cfg = load_config(opts);
            print_report(crn::harness::reproduce(fig_id, cfg, opts.seed, opts.out_dir,
                                                 opts.gnuplot));
        } else if (self->parsed()) {
            return run_selftest();
        }
    } catch (const crn::ConfigError& e) {
        CRN_LOG_ERROR("%s", e.what());
        return 2;
    } catch (const crn::InvalidPmf& e) {
        CRN_LOG_ERROR("%s", e.what());
        return 3;
    } catch (const crn::Infeasible& e) {
        CRN_LOG_ERROR("%s", e.what());
        return 3;
    } catch (const std::exception& e) {
        CRN_LOG_ERROR("%s", e.what());
        return 4;
    }
    return 0;
}
