#include "crn/neighborhood.hpp"

#include <cmath>
#include <stdexcept>

#include "crn/fusion.hpp"

namespace crn {

namespace {

NeighborhoodCell evaluate_cell(const PolarPos& rx, const Scene& scene, const PowerModel& model,
                               double w) {
    NeighborhoodCell cell;
    cell.alpha = alpha_from_geometry(rx, scene, model);
    if (scene.nodes.empty()) {
        cell.alpha_c = w / (w + 1.0);
    } else {
        const auto [p1, p0] = coop_joint_pmfs(rx, scene, model);
        cell.alpha_c = critical_alpha(w, p1, p0);
    }
    cell.admissible = cell.alpha >= cell.alpha_c ? 1 : 0;
    return cell;
}

} // namespace

double NeighborhoodMap::boundary_radius(int ia) const {
    for (int ir = grid.n_radial - 1; ir >= 0; --ir)
        if (cell(ir, ia).admissible)
            return r(ir);
    return 0.0;
}

double NeighborhoodMap::masked_area(double theta_center, double epsilon) const {
    double total = 0.0;
    for (int ia = 0; ia < grid.n_angular; ++ia) {
        double offset = std::fabs(theta(ia) - theta_center);
        offset = std::fmod(offset, 2.0 * M_PI);
        if (offset > M_PI)
            offset = 2.0 * M_PI - offset;
        if (offset > epsilon)
            continue;
        for (int ir = 0; ir < grid.n_radial; ++ir)
            if (cell(ir, ia).admissible)
                total += r(ir) * dr * dtheta;
    }
    return total;
}

NeighborhoodMap neighborhood(const Scene& scene, const PowerModel& model, double w,
                             const GridSpec& grid, Exec exec) {
    if (grid.n_radial <= 0 || grid.n_angular <= 0)
        throw std::invalid_argument("neighborhood: grid must be nonempty");
    NeighborhoodMap map;
    map.grid = grid;
    if (map.grid.r_max <= 0.0) {
        const double rc = coverage_radius(model, w);
        if (!std::isfinite(rc))
            throw std::invalid_argument("neighborhood: unbounded coverage, set r_max");
        map.grid.r_max = 2.0 * rc;
    }
    map.dr = map.grid.r_max / map.grid.n_radial;
    map.dtheta = 2.0 * M_PI / map.grid.n_angular;
    const int n_cells = map.grid.n_radial * map.grid.n_angular;
    map.cells.resize(static_cast<std::size_t>(n_cells));

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < n_cells; ++i) {
            const int ir = i / map.grid.n_angular;
            const int ia = i % map.grid.n_angular;
            map.cells[static_cast<std::size_t>(i)] =
                evaluate_cell(PolarPos{map.r(ir), map.theta(ia)}, scene, model, w);
        }
    } else {
        for (int i = 0; i < n_cells; ++i) {
            const int ir = i / map.grid.n_angular;
            const int ia = i % map.grid.n_angular;
            map.cells[static_cast<std::size_t>(i)] =
                evaluate_cell(PolarPos{map.r(ir), map.theta(ia)}, scene, model, w);
        }
    }

    double area = 0.0;
    for (int ir = 0; ir < map.grid.n_radial; ++ir) {
        const double cell_area = map.r(ir) * map.dr * map.dtheta;
        for (int ia = 0; ia < map.grid.n_angular; ++ia)
            if (map.cell(ir, ia).admissible)
                area += cell_area;
    }
    map.area = area;
    return map;
}

NeighborhoodMap coverage_map(const Scene& scene, const PowerModel& model, double w,
                             const GridSpec& grid, Exec exec) {
    Scene bare = scene.without_ps();
    bare.nodes.clear(); // cooperative nodes cannot extend coverage
    return neighborhood(bare, model, w, grid, exec);
}

ConnectivityResult connectivity(const std::vector<CrNode>& crs, const std::vector<Point>& coop,
                                const std::optional<Point>& ps, const PowerModel& model, double w,
                                double kappa) {
    const int n = static_cast<int>(crs.size());
    if (n < 2)
        throw std::invalid_argument("connectivity: need at least two CRs");
    ConnectivityResult out;
    out.n = n;
    out.edges.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    out.alphas.assign(out.edges.size(), 0.0);
    out.alpha_cs.assign(out.edges.size(), 1.0);

    for (int i = 0; i < n; ++i) {
        Scene scene;
        scene.ps = ps;
        scene.tx = crs[static_cast<std::size_t>(i)].pos;
        scene.nodes = coop;
        scene.b_tx = crs[static_cast<std::size_t>(i)].b_tx;
        scene.kappa = kappa;
        for (int j = 0; j < n; ++j) {
            if (j == i)
                continue;
            const PolarPos rx = to_polar(crs[static_cast<std::size_t>(j)].pos, scene);
            const NeighborhoodCell cell = evaluate_cell(rx, scene, model, w);
            const std::size_t at =
                static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
                static_cast<std::size_t>(j);
            out.alphas[at] = cell.alpha;
            out.alpha_cs[at] = cell.alpha_c;
            out.edges[at] = cell.admissible;
        }
    }
    return out;
}

int select_cooperative_node(const std::vector<Point>& candidates, const Scene& scene,
                            const PowerModel& model, double zeta, const GridSpec& grid,
                            const std::optional<AngularMask>& mask) {
    if (candidates.empty())
        throw std::invalid_argument("select_cooperative_node: no candidates");
    const double w = w_from_outage(zeta);
    int best = 0;
    double best_area = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        Scene trial = scene;
        trial.nodes = {candidates[c]};
        const NeighborhoodMap map = neighborhood(trial, model, w, grid);
        const double area =
            mask ? map.masked_area(mask->theta_center, mask->epsilon) : map.area;
        if (area > best_area) {
            best_area = area;
            best = static_cast<int>(c);
        }
    }
    return best;
}

} // namespace crn
