#include "crn/geo.hpp"

#include <cmath>
#include <limits>

#include "crn/qfunc.hpp"

namespace crn {

namespace {

double distance(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

double ps_distance(const Scene& scene) {
    return scene.ps ? distance(*scene.ps, scene.tx) : std::numeric_limits<double>::infinity();
}

// Distance from a polar position (around tx, angle from the PS direction)
// to the PS, by the law of cosines.
double dist_to_ps(const PolarPos& p, const Scene& scene) {
    const double d = ps_distance(scene);
    if (!std::isfinite(d))
        return d;
    return std::sqrt(std::max(0.0, p.r * p.r + d * d - 2.0 * p.r * d * std::cos(p.theta)));
}

} // namespace

PolarPos to_polar(const Point& p, const Scene& scene) {
    const double dx = p.x - scene.tx.x;
    const double dy = p.y - scene.tx.y;
    PolarPos out;
    out.r = std::hypot(dx, dy);
    double base = 0.0;
    if (scene.ps)
        base = std::atan2(scene.ps->y - scene.tx.y, scene.ps->x - scene.tx.x);
    out.theta = std::atan2(dy, dx) - base;
    if (out.theta > M_PI)
        out.theta -= 2.0 * M_PI;
    if (out.theta <= -M_PI)
        out.theta += 2.0 * M_PI;
    return out;
}

Point to_point(const PolarPos& p, const Scene& scene) {
    double base = 0.0;
    if (scene.ps)
        base = std::atan2(scene.ps->y - scene.tx.y, scene.ps->x - scene.tx.x);
    return Point{scene.tx.x + p.r * std::cos(base + p.theta),
                 scene.tx.y + p.r * std::sin(base + p.theta)};
}

LogNormalParams effective_lognormal(double mu_s, const PowerModel& model) {
    const double sigma_s = std::sqrt(model.sigma_s_sq);
    LogNormalParams out;
    if (mu_s <= model.mu0 - sigma_s)
        out.mu = model.mu0;
    else if (mu_s >= model.mu0 + sigma_s)
        out.mu = mu_s;
    else
        out.mu = (mu_s + model.mu0 + sigma_s) / 2.0;

    if (mu_s <= model.mu0 - sigma_s)
        out.sigma_sq = model.sigma0_sq;
    else if (mu_s >= model.mu0 + 2.0 * sigma_s)
        out.sigma_sq = model.sigma_s_sq;
    else
        out.sigma_sq = (model.sigma_s_sq - model.sigma0_sq) / (3.0 * sigma_s) *
                           (mu_s - model.mu0) +
                       (model.sigma_s_sq + 2.0 * model.sigma0_sq) / 3.0;
    return out;
}

double shadowing_at(const PolarPos& rx, const Scene& scene) {
    if (!scene.ps)
        return 0.0;
    const double d_tx = ps_distance(scene);
    if (rx.r * std::cos(rx.theta) > d_tx)
        return 0.0;
    return std::max(scene.b_tx * (1.0 - rx.r / (2.0 * scene.kappa)), 0.0);
}

SenseProbs sense_probs(double dist_ps, double shadow_db, double tau, const Scene& scene,
                       const PowerModel& model) {
    SenseProbs p;
    const double sigma0 = std::sqrt(model.sigma0_sq);
    p.idle = qfunc((model.mu0 - tau) / sigma0);
    if (!scene.ps) {
        p.busy = p.idle;
        return p;
    }
    const double mu_s = model.k0 - 10.0 * model.path_exp * std::log10(dist_ps) - shadow_db;
    const LogNormalParams eff = effective_lognormal(mu_s, model);
    p.busy = qfunc((eff.mu - tau) / std::sqrt(eff.sigma_sq));
    return p;
}

double tau_rx(double r, const PowerModel& model) {
    return model.l0 - 10.0 * model.path_exp * std::log10(r);
}

double alpha_from_geometry(const PolarPos& rx, const Scene& scene, const PowerModel& model) {
    const SenseProbs p_rx =
        sense_probs(dist_to_ps(rx, scene), shadowing_at(rx, scene), tau_rx(rx.r, model), scene,
                    model);
    if (!scene.ps)
        return p_rx.idle;
    const SenseProbs p_tx =
        sense_probs(ps_distance(scene), scene.b_tx, model.tau_tx, scene, model);
    const double pi = model.ps_idle_prob;
    const double num = pi * p_tx.idle * p_rx.idle + (1.0 - pi) * p_tx.busy * p_rx.busy;
    const double den = pi * p_tx.idle + (1.0 - pi) * p_tx.busy;
    return den > 0.0 ? num / den : 0.0;
}

NodeStats beta_gamma_from_geometry(const PolarPos& co, const PolarPos& rx, const Scene& scene,
                                   const PowerModel& model) {
    const SenseProbs p_co =
        sense_probs(dist_to_ps(co, scene), shadowing_at(co, scene), model.tau_co, scene, model);
    if (!scene.ps)
        return NodeStats{p_co.idle, 1.0 - p_co.idle};

    const SenseProbs p_tx =
        sense_probs(ps_distance(scene), scene.b_tx, model.tau_tx, scene, model);
    const SenseProbs p_rx =
        sense_probs(dist_to_ps(rx, scene), shadowing_at(rx, scene), tau_rx(rx.r, model), scene,
                    model);
    const double pi = model.ps_idle_prob;

    const double den_b = pi * p_tx.idle * p_rx.idle + (1.0 - pi) * p_tx.busy * p_rx.busy;
    const double num_b = pi * p_tx.idle * p_rx.idle * p_co.idle +
                         (1.0 - pi) * p_tx.busy * p_rx.busy * p_co.busy;
    const double den_g =
        pi * p_tx.idle * (1.0 - p_rx.idle) + (1.0 - pi) * p_tx.busy * (1.0 - p_rx.busy);
    const double num_g = pi * p_tx.idle * (1.0 - p_rx.idle) * (1.0 - p_co.idle) +
                         (1.0 - pi) * p_tx.busy * (1.0 - p_rx.busy) * (1.0 - p_co.busy);

    NodeStats out;
    out.beta = den_b > 0.0 ? num_b / den_b : 0.5;
    out.gamma = den_g > 0.0 ? num_g / den_g : 0.5;
    return out;
}

std::pair<JointPmf, JointPmf> coop_joint_pmfs(const PolarPos& rx, const Scene& scene,
                                              const PowerModel& model) {
    const int k = static_cast<int>(scene.nodes.size());
    const SubsetIndexer idx(k);

    std::vector<SenseProbs> p_co;
    p_co.reserve(scene.nodes.size());
    for (const Point& node : scene.nodes) {
        const PolarPos co = to_polar(node, scene);
        p_co.push_back(sense_probs(dist_to_ps(co, scene), shadowing_at(co, scene), model.tau_co,
                                   scene, model));
    }

    const SenseProbs p_tx =
        sense_probs(ps_distance(scene), scene.b_tx, model.tau_tx, scene, model);
    const SenseProbs p_rx =
        sense_probs(dist_to_ps(rx, scene), shadowing_at(rx, scene), tau_rx(rx.r, model), scene,
                    model);
    const double pi = scene.ps ? model.ps_idle_prob : 1.0;

    auto build = [&](int s) {
        // Weight of each PS state conditioned on (tx clear, rx state s).
        const double rx_idle = s == 1 ? p_rx.idle : 1.0 - p_rx.idle;
        const double rx_busy = s == 1 ? p_rx.busy : 1.0 - p_rx.busy;
        double w_idle = pi * p_tx.idle * rx_idle;
        double w_busy = (1.0 - pi) * p_tx.busy * rx_busy;
        const double den = w_idle + w_busy;
        if (den > 0.0) {
            w_idle /= den;
            w_busy /= den;
        } else {
            w_idle = 1.0;
            w_busy = 0.0;
        }
        JointPmf p;
        p.s = s;
        p.k = k;
        p.values.resize(idx.size());
        for (int j = 0; j < idx.size(); ++j) {
            const std::uint32_t mask = idx.mask(j);
            double prod_idle = 1.0;
            double prod_busy = 1.0;
            for (int i = 0; i < k; ++i) {
                const bool one = (mask >> i) & 1u;
                const SenseProbs& pc = p_co[static_cast<std::size_t>(i)];
                prod_idle *= one ? pc.idle : 1.0 - pc.idle;
                prod_busy *= one ? pc.busy : 1.0 - pc.busy;
            }
            p.values(j) = w_idle * prod_idle + w_busy * prod_busy;
        }
        return p;
    };

    return {build(1), build(0)};
}

double coverage_radius(const PowerModel& model, double w) {
    const double target = w / (w + 1.0);
    if (target <= 0.0)
        return std::numeric_limits<double>::infinity();
    const double sigma0 = std::sqrt(model.sigma0_sq);
    const double exponent =
        (model.l0 - model.mu0 + sigma0 * qfunc_inv(target)) / (10.0 * model.path_exp);
    return std::pow(10.0, exponent);
}

} // namespace crn
