// Serial reference against the OpenMP kernels. Usage: bench_kernels [paths]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "persist/simulate.hpp"
#include "persist/stats.hpp"

using namespace persist;

namespace {

double seconds(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-18s serial %8.3fs  openmp %8.3fs  speedup %5.2fx  identical %s\n", name, serial, parallel,
                serial / parallel, same ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
    std::printf("threads %d, paths %zu\n", omp_get_max_threads(), n);

    PathConfig cfg;
    cfg.params = validate_params(1.5, 0.5);
    cfg.seed = 1;
    cfg.t_max = 1e3;
    cfg.rel_step = 0.01;
    HittingBatch a, b;
    const double s1 = seconds([&] { a = sample_hitting_batch_serial(cfg, n); });
    const double p1 = seconds([&] { b = sample_hitting_batch(cfg, n); });
    bool same = a.censored == b.censored;
    for (std::size_t i = 0; same && i < n; ++i) same = a.samples[i].t0 == b.samples[i].t0;
    report("hitting batch", s1, p1, same);

    const TailFitOptions opt{40, 500, 2};
    TailFit fa, fb;
    const double s2 = seconds([&] { fa = fit_tail_exponent_serial(a.samples, 1e3, {10.0, 1e3}, opt); });
    const double p2 = seconds([&] { fb = fit_tail_exponent(a.samples, 1e3, {10.0, 1e3}, opt); });
    report("bootstrap fit", s2, p2, fa.std_error == fb.std_error);

    std::vector<double> xa, xb;
    const double s3 = seconds([&] { xa = simulate_X_serial(cfg.params, 0.0, -1.0, 1.0, 1e-3, n, 3); });
    const double p3 = seconds([&] { xb = simulate_X(cfg.params, 0.0, -1.0, 1.0, 1e-3, n, 3); });
    report("simulate X", s3, p3, xa == xb);
    return 0;
}
