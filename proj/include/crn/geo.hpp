#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "crn/coop_single.hpp"
#include "crn/pmf_algebra.hpp"

namespace crn {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Log-normal received-power model in dB. Powers are compared against
/// fixed detection thresholds; the receiver threshold tau_rx is distance
/// dependent: tau_rx(r) = l0 - 10*a*log10(r), with the transmit power and
/// outage SINR folded into the constant l0.
struct PowerModel {
    double mu0 = 0.0;          ///< dB mean of the noise power
    double sigma0_sq = 1.0;    ///< dB^2 noise variance
    double sigma_s_sq = 8.0;   ///< dB^2 variance of the received PS signal
    double k0 = 10.0;          ///< dB constant of the PS path-loss law
    double path_exp = 3.0;     ///< path-loss exponent
    double l0 = 3.0;           ///< dB constant defining tau_rx(r)
    double tau_tx = 3.0;       ///< dB detection threshold at the transmitter
    double tau_co = 3.0;       ///< dB detection threshold at cooperative nodes
    double ps_idle_prob = 0.6; ///< Pr(PS absent or inactive)

    [[nodiscard]] bool valid() const {
        return sigma_s_sq > sigma0_sq && sigma0_sq > 0.0 && ps_idle_prob >= 0.0 &&
               ps_idle_prob <= 1.0 && path_exp > 0.0;
    }
};

/// Geometric placement. Positions are Cartesian; the polar helpers below
/// use the frame centered at tx with angle zero pointing at the PS (or
/// along +x when the scene has no PS, in which case nothing depends on
/// the angle).
struct Scene {
    std::optional<Point> ps;
    Point tx;
    std::vector<Point> nodes; ///< cooperative node positions
    double b_tx = 0.0;        ///< dB shadowing at the transmitter
    double kappa = 1.0;       ///< obstacle size parameter (length units)

    [[nodiscard]] bool valid() const { return kappa > 0.0 && b_tx >= 0.0; }
    [[nodiscard]] Scene without_ps() const {
        Scene s = *this;
        s.ps.reset();
        return s;
    }
};

/// Position relative to the transmitter: radius and angle measured from
/// the transmitter-to-PS direction.
struct PolarPos {
    double r = 0.0;
    double theta = 0.0;
};

struct LogNormalParams {
    double mu = 0.0;
    double sigma_sq = 1.0;
};

PolarPos to_polar(const Point& p, const Scene& scene);
Point to_point(const PolarPos& p, const Scene& scene);

/// Single log-normal stand-in for the superposition of the PS signal
/// (dB mean mu_s) and noise. Piecewise in mu_s: noise-dominated,
/// signal-dominated, and a linear blend in between.
LogNormalParams effective_lognormal(double mu_s, const PowerModel& model);

/// Shadowing at a receiver position: decays linearly from b_tx over the
/// obstacle scale 2*kappa, and vanishes when the PS lies between the
/// endpoints (projection of the receiver beyond the PS distance).
double shadowing_at(const PolarPos& rx, const Scene& scene);

/// Availability prior alpha at a receiver position: probability that the
/// receiver-side power test passes, conditioned on the transmitter-side
/// test passing, mixing over the PS state.
double alpha_from_geometry(const PolarPos& rx, const Scene& scene, const PowerModel& model);

/// Detection statistics (beta, gamma) of a cooperative node for a given
/// receiver position. Per-position power tests are conditionally
/// independent given the PS state; the node's shadowing follows the same
/// transmitter-anchored obstacle model, evaluated at the node's own
/// position.
NodeStats beta_gamma_from_geometry(const PolarPos& co, const PolarPos& rx, const Scene& scene,
                                   const PowerModel& model);

/// Conditional joint pmfs of all scene cooperative-node reports given the
/// receiver-side state (s=1 first). Exact PS-state mixture of per-node
/// product distributions; for one node this reduces to the (beta, gamma)
/// pair above.
std::pair<JointPmf, JointPmf> coop_joint_pmfs(const PolarPos& rx, const Scene& scene,
                                              const PowerModel& model);

/// Probability that a position's power test passes, per PS state.
struct SenseProbs {
    double idle = 1.0;
    double busy = 1.0;
};

SenseProbs sense_probs(double dist_ps, double shadow_db, double tau, const Scene& scene,
                       const PowerModel& model);

/// Receiver-side detection threshold at distance r.
double tau_rx(double r, const PowerModel& model);

/// Radius of the admissible disc when no PS is present:
/// largest r with Q((mu0 - tau_rx(r))/sigma0) >= w/(w+1).
double coverage_radius(const PowerModel& model, double w);

} // namespace crn
