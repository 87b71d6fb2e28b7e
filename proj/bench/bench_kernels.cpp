#include <chrono>
#include <cstdio>
#include <functional>

#include <omp.h>

#include "mahler/convergence.hpp"
#include "mahler/lattice.hpp"
#include "mahler/parse.hpp"
#include "mahler/quadrature.hpp"
#include "mahler/sublevel.hpp"

using namespace mahler;

namespace {

double time_it(const std::function<double()>& body, double& result) {
    const auto start = std::chrono::steady_clock::now();
    result = body();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void compare(const char* name, const std::function<double(Execution)>& kernel) {
    double serial_value = 0.0, parallel_value = 0.0;
    const double ts = time_it([&] { return kernel(Execution::serial); }, serial_value);
    const double tp = time_it([&] { return kernel(Execution::parallel); }, parallel_value);
    std::printf("%-22s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", name, ts, tp, ts / tp,
                serial_value == parallel_value ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
    const Polynomial p = parse_poly("1 + x + y");
    const TorusEvaluator eval(p);

    compare("torus QMC (2^20 x 16)", [&](Execution exec) {
        QuadConfig cfg;
        cfg.qmc_samples = std::uint64_t{1} << 20;
        return integrate_torus_qmc([&](std::span<const double> t) { return eval.log_abs(t); }, 2, cfg, exec).value;
    });
    compare("sublevel MC (4e6)", [&](Execution exec) {
        return sublevel_measure(p, 0.2, 4'000'000, 42, exec).measure_est;
    });
    compare("singular integral", [&](Execution exec) {
        const std::vector<Polynomial> ps{parse_poly("x - 1"), parse_poly("x + 1")};
        return singular_log_integral(ps, 0.1, SetMode::union_of, Combine::product, 4'000'000, 42, exec).value;
    });
    compare("q(r) n=4", [&](Execution exec) {
        double total = 0.0;
        for (std::int64_t m = 2; m <= 30; ++m) {
            const std::vector<std::int64_t> r{m * m * m + 1, 3 * m * m + 7, 5 * m + 11, 13};
            total += static_cast<double>(*q_of_r(r, exec).q);
        }
        return total;
    });
    compare("convergence rows", [&](Execution exec) {
        std::vector<std::int64_t> ms;
        for (std::int64_t m = 10; m <= 200; m += 10) ms.push_back(m);
        QuadConfig cfg;
        cfg.qmc_samples = 1 << 12;
        const ConvergenceTable t = higher_table(p, 2, ms, cfg, exec);
        double total = 0.0;
        for (const auto& row : t.rows) total += row.value->value;
        return total;
    });
}
