// Serial vs OpenMP timing of the sampling and residual kernels.
// Usage: bench_kernels [resolution] [threads]
#include "curlwave/kernels.hpp"
#include "curlwave/synthesis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>

using namespace curlwave;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::isfinite(a[i]) || std::isfinite(b[i])) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// A fresh field per run keeps level caches cold so both modes do the same work.
void bench(const char* name, const std::function<WaveField()>& make, const Grid& grid) {
    const auto pts = grid.points();
    const auto ts = grid.times();
    std::vector<double> r_serial, r_parallel;
    const double ts_serial = seconds([&] { r_serial = residual_kernel(make(), pts, ts, 1e-3, ExecMode::Serial); });
    const double ts_parallel =
        seconds([&] { r_parallel = residual_kernel(make(), pts, ts, 1e-3, ExecMode::Parallel); });
    const auto field = make();
    sample_field(field, pts, ts, ExecMode::Serial);  // warm the caches
    const double s_serial = seconds([&] { sample_field(field, pts, ts, ExecMode::Serial); });
    const double s_parallel = seconds([&] { sample_field(field, pts, ts, ExecMode::Parallel); });
    std::printf("%-12s residual  serial %8.3f s  parallel %8.3f s  speedup %5.2f  max|diff| %.1e\n", name,
                ts_serial, ts_parallel, ts_serial / ts_parallel, max_diff(r_serial, r_parallel));
    std::printf("%-12s sample    serial %8.3f s  parallel %8.3f s  speedup %5.2f\n", name, s_serial, s_parallel,
                s_serial / s_parallel);
}

}  // namespace

int main(int argc, char** argv) {
    Grid grid;
    grid.extent = 3.0;
    grid.resolution = argc > 1 ? std::atoi(argv[1]) : 11;
    grid.t_min = -2.0;
    grid.t_max = 2.0;
    grid.t_samples = 9;
    if (argc > 2) set_threads(std::atoi(argv[2]));
    std::printf("grid %d^3 x %d, threads %d\n", grid.resolution, grid.t_samples, max_threads());

    const auto torus = GeometryProfile::torus(0.0);
    const auto coeffs = CoefficientProfiles::constant(1.0, 1.0, 1.0);
    bench("rogue", [&] { return synth_rogue(3.0, torus, coeffs); }, grid);

    const std::vector<Var> zeta{Var::Zeta};
    auto breather = CoefficientProfiles::from_expressions(Expression::parse("1", zeta),
                                                          Expression::parse("1-0.5*exp(-zeta^2)", zeta),
                                                          Expression::parse("1", zeta));
    breather.sigma_inf = 1.0;
    breather.delta = 1.0;
    SynthesisOptions so;
    so.sample = default_sample(torus, 6.0, 32);
    bench("breather+", [&] { return synth_breather(1, 3.0, torus, breather, so); }, grid);
    return 0;
}
