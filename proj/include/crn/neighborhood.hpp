#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "crn/geo.hpp"

namespace crn {

/// Polar grid resolution around the transmitter. r_max = 0 resolves to
/// twice the coverage radius.
struct GridSpec {
    int n_radial = 200;
    int n_angular = 360;
    double r_max = 0.0;
};

enum class Exec : std::uint8_t {
    Serial,   ///< reference single-thread kernel
    Parallel, ///< OpenMP kernel; bitwise-identical to Serial
};

struct NeighborhoodCell {
    double alpha = 0.0;
    double alpha_c = 1.0;
    std::uint8_t admissible = 0;
};

/// Admissibility map over a polar grid: cell (ir, ia) covers radius
/// r(ir) and angle theta(ia), cells stored row-major by radius.
struct NeighborhoodMap {
    GridSpec grid;
    double dr = 0.0;
    double dtheta = 0.0;
    std::vector<NeighborhoodCell> cells;
    double area = 0.0;

    [[nodiscard]] double r(int ir) const { return (ir + 0.5) * dr; }
    [[nodiscard]] double theta(int ia) const { return -M_PI + (ia + 0.5) * dtheta; }
    [[nodiscard]] const NeighborhoodCell& cell(int ir, int ia) const {
        return cells[static_cast<std::size_t>(ir) * static_cast<std::size_t>(grid.n_angular) +
                     static_cast<std::size_t>(ia)];
    }
    /// Outermost admissible radius at angle index ia (0 when none).
    [[nodiscard]] double boundary_radius(int ia) const;
    /// Area restricted to angles within epsilon of theta_center.
    [[nodiscard]] double masked_area(double theta_center, double epsilon) const;
};

/// Computes the admissibility map: per cell, alpha from the received-power
/// model, the critical boundary of the configured fusion rule (cooperative
/// nodes taken from the scene), and the admissible flag alpha >= alpha_c.
NeighborhoodMap neighborhood(const Scene& scene, const PowerModel& model, double w,
                             const GridSpec& grid = {}, Exec exec = Exec::Parallel);

/// Neighborhood of the same scene with the PS removed.
NeighborhoodMap coverage_map(const Scene& scene, const PowerModel& model, double w,
                             const GridSpec& grid = {}, Exec exec = Exec::Parallel);

/// One CR endpoint for connectivity evaluation; b_tx applies when this CR
/// transmits (obstacle anchored at the transmitter).
struct CrNode {
    Point pos;
    double b_tx = 0.0;
};

/// Directed link matrix: edge(i,j) iff CR j lies in CR i's neighborhood.
struct ConnectivityResult {
    int n = 0;
    std::vector<std::uint8_t> edges;
    std::vector<double> alphas;
    std::vector<double> alpha_cs;

    [[nodiscard]] bool edge(int i, int j) const {
        return edges[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                     static_cast<std::size_t>(j)] != 0;
    }
    [[nodiscard]] double alpha(int i, int j) const {
        return alphas[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                      static_cast<std::size_t>(j)];
    }
    [[nodiscard]] double alpha_c(int i, int j) const {
        return alpha_cs[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                        static_cast<std::size_t>(j)];
    }
};

ConnectivityResult connectivity(const std::vector<CrNode>& crs, const std::vector<Point>& coop,
                                const std::optional<Point>& ps, const PowerModel& model, double w,
                                double kappa);

struct AngularMask {
    double theta_center = 0.0;
    double epsilon = M_PI;
};

/// Index of the candidate cooperative node that maximizes the (optionally
/// angle-masked) neighborhood area at outage budget zeta; ties go to the
/// lowest index.
int select_cooperative_node(const std::vector<Point>& candidates, const Scene& scene,
                            const PowerModel& model, double zeta, const GridSpec& grid = {},
                            const std::optional<AngularMask>& mask = std::nullopt);

} // namespace crn
