// Times the neighborhood kernel in its serial and OpenMP variants and
// checks they agree cell for cell.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "crn/mc.hpp"
#include "crn/neighborhood.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double time_once(crn::Exec exec, const crn::Scene& scene, const crn::PowerModel& model,
                 const crn::GridSpec& grid, double* checksum) {
    const auto t0 = Clock::now();
    const crn::NeighborhoodMap map = crn::neighborhood(scene, model, 9.0, grid, exec);
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    double sum = 0.0;
    for (const crn::NeighborhoodCell& c : map.cells)
        sum += c.alpha + c.alpha_c + c.admissible;
    *checksum = sum;
    return dt;
}

} // namespace

int main(int argc, char** argv) {
    int n_radial = 200;
    int n_angular = 360;
    int reps = 3;
    long long mc_trials = 200000;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--radial") == 0 && i + 1 < argc)
            n_radial = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--angular") == 0 && i + 1 < argc)
            n_angular = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--reps") == 0 && i + 1 < argc)
            reps = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--mc-trials") == 0 && i + 1 < argc)
            mc_trials = std::atoll(argv[++i]);
        else {
            std::fprintf(stderr,
                         "usage: %s [--radial n] [--angular n] [--reps n] [--mc-trials n]\n",
                         argv[0]);
            return 2;
        }
    }

    crn::PowerModel model;
    crn::Scene scene;
    scene.ps = crn::Point{1.7, 0.0};
    scene.nodes = {crn::Point{1.2, 0.2}};
    crn::GridSpec grid{n_radial, n_angular, 0.0};

#ifdef _OPENMP
    std::printf("omp_max_threads = %d\n", omp_get_max_threads());
#else
    std::printf("omp_max_threads = 1 (compiled without OpenMP)\n");
#endif
    std::printf("neighborhood grid = %d x %d, one cooperative node\n", n_radial, n_angular);

    double best_serial = 1e300;
    double best_parallel = 1e300;
    double sum_serial = 0.0;
    double sum_parallel = 0.0;
    for (int r = 0; r < reps; ++r) {
        best_serial = std::min(best_serial, time_once(crn::Exec::Serial, scene, model, grid,
                                                      &sum_serial));
        best_parallel = std::min(best_parallel, time_once(crn::Exec::Parallel, scene, model,
                                                          grid, &sum_parallel));
    }
    std::printf("serial   : %8.3f ms\n", best_serial * 1e3);
    std::printf("parallel : %8.3f ms  (speedup %.2fx)\n", best_parallel * 1e3,
                best_serial / best_parallel);
    if (sum_serial != sum_parallel) {
        std::printf("MISMATCH: serial and parallel kernels disagree (%.17g vs %.17g)\n",
                    sum_serial, sum_parallel);
        return 1;
    }
    std::printf("kernels agree bitwise (checksum %.17g)\n", sum_serial);

    const crn::PolarPos rx{0.9, 0.5};
    const auto t0 = Clock::now();
    const crn::McEstimate est = crn::mc_alpha_estimate(rx, scene, model, mc_trials, 7);
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    std::printf("mc_alpha (%lld trials): %.3f ms, alpha_hat = %.5f +- %.5f\n", mc_trials,
                dt * 1e3, est.mean, est.se);
    return 0;
}
