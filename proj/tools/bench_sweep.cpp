// Benchmark: frequency-sweep throughput of the parallel kernel against
// the serial reference, verifying that both produce identical output.
#include "eprnet/network.hpp"
#include "eprnet/spectra.hpp"
#include "eprnet/state_space.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

using namespace eprnet;

namespace {

template <typename F>
double best_of(F&& fn, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        const double s =
            std::chrono::duration<double>(t1 - t0).count();
        if (s < best) {
            best = s;
        }
    }
    return best;
}

} // namespace

int main(int argc, char** argv) {
    int points = 20000;
    int reps = 3;
    if (argc > 1) {
        points = std::atoi(argv[1]);
    }
    if (argc > 2) {
        reps = std::atoi(argv[2]);
    }
    if (points < 2 || reps < 1) {
        std::fprintf(stderr, "usage: bench_sweep [points>=2] [reps>=1]\n");
        return 1;
    }

    const NopaParams params; // gamma = gamma_ref, epsilon = 0.4 gamma_ref
    const StateSpace ss = build_state_space(cfb_network(), params);
    const double omega_max = 0.5 * params.gamma_ref;

    std::vector<SqueezingReport> serial, parallel;
    const double t_serial = best_of(
        [&] { serial = sweep_spectrum_serial(ss, omega_max, points); },
        reps);
    const double t_parallel = best_of(
        [&] { parallel = sweep_spectrum(ss, omega_max, points); }, reps);

    bool identical = serial.size() == parallel.size();
    if (identical) {
        for (std::size_t i = 0; i < serial.size(); ++i) {
            if (serial[i].omega != parallel[i].omega ||
                serial[i].v_plus != parallel[i].v_plus ||
                serial[i].v_minus != parallel[i].v_minus ||
                serial[i].v_total != parallel[i].v_total) {
                identical = false;
                break;
            }
        }
    }

    std::printf("sweep points        : %d (best of %d reps)\n", points,
                reps);
    std::printf("serial reference    : %.6f s  (%.0f pts/s)\n", t_serial,
                points / t_serial);
    std::printf("parallel kernel     : %.6f s  (%.0f pts/s)\n", t_parallel,
                points / t_parallel);
    std::printf("speedup             : %.2fx\n", t_serial / t_parallel);
    std::printf("outputs identical   : %s\n", identical ? "yes" : "NO");
    return identical ? 0 : 1;
}
