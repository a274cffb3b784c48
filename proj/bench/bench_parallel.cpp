// Compares the serial reference paths with the OpenMP kernels:
//   - the Monte-Carlo BER trial loop (run_ber with threads = 1 vs default)
//   - round-parallel PGR execution against the sequential-by-round reference
// Results must be bit-identical; only the wall time may differ.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qrmimo/channel.hpp"
#include "qrmimo/schedule.hpp"

using namespace qrmimo;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool curves_equal(const std::vector<BerCurve>& a, const std::vector<BerCurve>& b) {
    for (std::size_t d = 0; d < a.size(); ++d)
        for (std::size_t s = 0; s < a[d].points.size(); ++s)
            if (a[d].points[s].bit_errors != b[d].points[s].bit_errors) return false;
    return true;
}

void bench_ber() {
    SimConfig cfg;
    cfg.n_t = 4;
    cfg.n_r = 4;
    cfg.snr_db_points = {0, 4, 8, 12, 16, 20};
    cfg.trials = 20000;
    cfg.seed = 1;
    cfg.detectors = {DetectorSpec::parse("zf"), DetectorSpec::parse("mmse"),
                     DetectorSpec::parse("sic"), DetectorSpec::parse("qrdm4"),
                     DetectorSpec::parse("ml")};

    std::printf("BER sweep, %zu trials x %zu SNR points, 5 detectors\n", cfg.trials,
                cfg.snr_db_points.size());

    cfg.threads = 1;
    auto t0 = Clock::now();
    const auto serial = run_ber(cfg);
    const double t_serial = seconds_since(t0);
    std::printf("  serial reference: %7.2f s\n", t_serial);

#ifdef _OPENMP
    for (int threads : {2, 0}) {
        cfg.threads = threads;
        t0 = Clock::now();
        const auto parallel = run_ber(cfg);
        const double t_par = seconds_since(t0);
        std::printf("  openmp %-9s : %7.2f s  speedup %.2fx  identical=%s\n",
                    threads == 0 ? "(default)" : "(2)", t_par, t_serial / t_par,
                    curves_equal(serial, parallel) ? "yes" : "NO");
    }
#else
    std::printf("  (built without OpenMP; no parallel variant)\n");
#endif
}

void bench_pgr() {
    std::printf("PGR factorization, serial rounds vs parallel rounds\n");
    for (std::size_t n : {64, 128, 192}) {
        Rng rng(n);
        const ComplexMatrix h = gen_channel(n, n, rng);
        const std::vector<Complex> y = gen_noise(n, 1.0, rng);

        auto t0 = Clock::now();
        const QRFactorization serial = qrd_pgr(h, y);
        const double t_serial = seconds_since(t0);

        t0 = Clock::now();
        const QRFactorization parallel = qrd_pgr_parallel(h, y);
        const double t_par = seconds_since(t0);

        bool identical = serial.ledger == parallel.ledger;
        for (std::size_t i = 0; identical && i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                identical &= serial.r(i, j) == parallel.r(i, j);

        std::printf("  %3zux%-3zu  serial %7.3f s  parallel %7.3f s  speedup %.2fx  identical=%s\n",
                    n, n, t_serial, t_par, t_serial / t_par, identical ? "yes" : "NO");
    }
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available\n");
#endif
    bench_ber();
    bench_pgr();
    return 0;
}
