#include "crn/mc.hpp"

#include <cmath>
#include <vector>

#include "crn/fusion.hpp"
#include "crn/rng.hpp"

namespace crn {

namespace {

struct PosParams {
    double mu_idle = 0.0;
    double sig_idle = 1.0;
    double mu_busy = 0.0;
    double sig_busy = 1.0;
    double tau = 0.0;
};

double dist(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

PosParams pos_params(const PolarPos& at, double tau, const Scene& scene,
                     const PowerModel& model) {
    PosParams p;
    p.mu_idle = model.mu0;
    p.sig_idle = std::sqrt(model.sigma0_sq);
    p.tau = tau;
    if (scene.ps) {
        const Point pt = to_point(at, scene);
        const double d = dist(pt, *scene.ps);
        const double mu_s =
            model.k0 - 10.0 * model.path_exp * std::log10(d) - shadowing_at(at, scene);
        const LogNormalParams eff = effective_lognormal(mu_s, model);
        p.mu_busy = eff.mu;
        p.sig_busy = std::sqrt(eff.sigma_sq);
    } else {
        p.mu_busy = p.mu_idle;
        p.sig_busy = p.sig_idle;
    }
    return p;
}

bool sample_clear(const PosParams& p, bool idle, SplitMix64& rng) {
    const double z = rng.normal();
    const double power = idle ? p.mu_idle + p.sig_idle * z : p.mu_busy + p.sig_busy * z;
    return power <= p.tau;
}

McEstimate conditioned(long long hits, long long conditioned_n, long long trials) {
    McEstimate e;
    e.n_conditioned = conditioned_n;
    e.n_trials = trials;
    if (conditioned_n > 0) {
        e.mean = static_cast<double>(hits) / static_cast<double>(conditioned_n);
        e.se = std::sqrt(std::max(e.mean * (1.0 - e.mean), 0.0) /
                         static_cast<double>(conditioned_n));
    }
    return e;
}

} // namespace

McEstimate mc_alpha_estimate(const PolarPos& rx, const Scene& scene, const PowerModel& model,
                             long long trials, std::uint64_t seed) {
    const PosParams tx_p = pos_params(PolarPos{0.0, 0.0}, model.tau_tx, scene, model);
    const PosParams rx_p = pos_params(rx, tau_rx(rx.r, model), scene, model);
    const double pi = scene.ps ? model.ps_idle_prob : 1.0;

    long long tx_clear = 0;
    long long both_clear = 0;
#pragma omp parallel for schedule(static) reduction(+ : tx_clear, both_clear)
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(seed, static_cast<std::uint64_t>(t));
        const bool idle = rng.uniform01() <= pi;
        const bool tx_bit = sample_clear(tx_p, idle, rng);
        const bool rx_bit = sample_clear(rx_p, idle, rng);
        if (tx_bit) {
            ++tx_clear;
            if (rx_bit)
                ++both_clear;
        }
    }
    return conditioned(both_clear, tx_clear, trials);
}

McEstimate mc_outage_estimate(const PolarPos& rx, const Scene& scene, const PowerModel& model,
                              double w, long long trials, std::uint64_t seed) {
    const PosParams tx_p = pos_params(PolarPos{0.0, 0.0}, model.tau_tx, scene, model);
    const PosParams rx_p = pos_params(rx, tau_rx(rx.r, model), scene, model);
    const double pi = scene.ps ? model.ps_idle_prob : 1.0;
    const double alpha = alpha_from_geometry(rx, scene, model);

    const int k = static_cast<int>(scene.nodes.size());
    std::vector<PosParams> co_p;
    co_p.reserve(scene.nodes.size());
    for (const Point& node : scene.nodes)
        co_p.push_back(pos_params(to_polar(node, scene), model.tau_co, scene, model));

    // Fusion table for this position; with no nodes the rule is the
    // threshold test alpha >= w/(w+1) applied to the transmitter verdict.
    std::vector<std::uint8_t> table;
    std::vector<int> index_of_mask;
    if (k > 0) {
        const SubsetIndexer idx(k);
        const auto [p1, p0] = coop_joint_pmfs(rx, scene, model);
        table = optimal_rule(IndicatorStats{alpha, w}, p1, p0).gamma_table;
        index_of_mask.resize(static_cast<std::size_t>(idx.size()));
        for (std::uint32_t m = 0; m < static_cast<std::uint32_t>(idx.size()); ++m)
            index_of_mask[m] = idx.index_of(m);
    } else {
        table.push_back(alpha * (w + 1.0) >= w ? 1 : 0);
        index_of_mask.push_back(0);
    }

    long long declared = 0;
    long long linked = 0;
#pragma omp parallel for schedule(static) reduction(+ : declared, linked)
    for (long long t = 0; t < trials; ++t) {
        SplitMix64 rng = trial_rng(seed, static_cast<std::uint64_t>(t));
        const bool idle = rng.uniform01() <= pi;
        const bool tx_bit = sample_clear(tx_p, idle, rng);
        const bool rx_bit = sample_clear(rx_p, idle, rng);
        std::uint32_t mask = 0;
        for (int i = 0; i < k; ++i)
            if (sample_clear(co_p[static_cast<std::size_t>(i)], idle, rng))
                mask |= 1u << i;
        const bool declare =
            tx_bit && table[static_cast<std::size_t>(index_of_mask[mask])] != 0;
        if (declare) {
            ++declared;
            if (tx_bit && rx_bit)
                ++linked;
        }
    }
    return conditioned(linked, declared, trials);
}

} // namespace crn
