// Timing comparison of the serial reference loops against the OpenMP
// kernels. The outputs must agree bit-exactly; the table reports both the
// speedup and that agreement.

#include <chrono>
#include <cstdio>
#include <string>

#include "hlrs/exec.hpp"
#include "hlrs/hfbm.hpp"
#include "hlrs/leroy.hpp"
#include "hlrs/simulate.hpp"

using namespace hlrs;

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

void row(const char* name, double serial_ms, double parallel_ms, bool identical) {
    std::printf("%-34s %10.1f %10.1f %8.2fx   %s\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms, identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
    std::printf("threads available: %d\n", max_threads());
    std::printf("%-34s %10s %10s %9s\n", "kernel", "serial/ms", "omp/ms", "speedup");

    {
        const specfun::Alpha alpha(0.5);
        const hfbm::TimeGrid grid = hfbm::TimeGrid::parse("0.1:8:256:geo");
        hfbm::CovarianceMatrix a{grid, {}}, b{grid, {}};
        const double ts = time_ms([&] { a = hfbm::covariance_matrix(alpha, grid, Exec::serial); });
        const double tp = time_ms([&] { b = hfbm::covariance_matrix(alpha, grid, Exec::parallel); });
        row("covariance_matrix n=256", ts, tp, a.entries == b.entries);
    }
    {
        const specfun::Alpha alpha(1.5);
        const hfbm::TimeGrid grid = hfbm::TimeGrid::parse("0.25:4:64");
        sim::PathEnsemble a = sim::paths_factorization(alpha, grid, 1, 7);
        sim::PathEnsemble b = a;
        const double ts =
            time_ms([&] { a = sim::paths_factorization(alpha, grid, 20000, 7, Exec::serial); });
        const double tp =
            time_ms([&] { b = sim::paths_factorization(alpha, grid, 20000, 7, Exec::parallel); });
        row("paths_factorization 2e4 x 64", ts, tp, a.values == b.values);
    }
    {
        const specfun::Alpha alpha(0.75);
        const hfbm::TimeGrid grid = hfbm::TimeGrid::parse("0.5:2:3");
        sim::PathEnsemble a = sim::paths_kernel_quadrature(alpha, grid, 512, 1, 7);
        sim::PathEnsemble b = a;
        const double ts = time_ms(
            [&] { a = sim::paths_kernel_quadrature(alpha, grid, 512, 20000, 7, Exec::serial); });
        const double tp = time_ms(
            [&] { b = sim::paths_kernel_quadrature(alpha, grid, 512, 20000, 7, Exec::parallel); });
        row("paths_kernel_quadrature 2e4x512", ts, tp, a.values == b.values);
    }
    {
        const specfun::Beta beta(0.5);
        leroy::MixingLaw a, b;
        const double ts = time_ms([&] { a = leroy::build_mixing_law(beta, {}, Exec::serial); });
        const double tp = time_ms([&] { b = leroy::build_mixing_law(beta, {}, Exec::parallel); });
        row("build_mixing_law beta=0.5", ts, tp,
            a.density() == b.density() && a.cdf() == b.cdf());
    }
    return 0;
}
