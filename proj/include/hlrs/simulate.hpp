#pragma once

// Sample-path generation. Two routes to the H-fBm law: the exact Gaussian
// factorization of the covariance matrix, and the log-kernel quadrature
// scheme driven by Brownian increments on a uniform partition. Le Roy
// mixing (sqrt(Y_beta) scaling) turns either into LHm paths; the
// LH-Ornstein-Uhlenbeck process integrates an LHm path against an
// exponential kernel on a refined internal grid.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hlrs/exec.hpp"
#include "hlrs/hfbm.hpp"
#include "hlrs/leroy.hpp"
#include "hlrs/specfun.hpp"

namespace hlrs::sim {

struct OUParams {
    double theta = 1.0;  // > 0
    double sigma = 1.0;
    double y0 = 0.0;
};

enum class Generator { factorization, kernel_quadrature, lhm, ou };

const char* generator_name(Generator g);

struct PathEnsemble {
    hfbm::TimeGrid grid;
    std::size_t n_paths = 0;
    std::vector<double> values;  // path-major: values[p * grid.size() + j]
    Generator generator = Generator::factorization;
    std::uint64_t seed = 0;
    double alpha = 1.0;
    double beta = 1.0;
    std::size_t n_steps = 0;  // kernel-quadrature partition size (0 otherwise)
    OUParams ou{};
    bool has_ou = false;

    double at(std::size_t path, std::size_t j) const { return values[path * grid.size() + j]; }
    double& at(std::size_t path, std::size_t j) { return values[path * grid.size() + j]; }
};

// Lower-triangular factor stored row-major, applied to blocks of path
// vectors: each row of L is read once per block instead of once per path
// (the matvec is bandwidth-bound for large factors). Bit-identical results
// for any block decomposition since the per-path summation order is fixed.
struct TriangularFactor {
    static constexpr std::size_t kBlock = 64;
    std::size_t n = 0;
    std::vector<double> rows;
    explicit TriangularFactor(const Eigen::MatrixXd& L) : n(L.rows()), rows(n * n, 0.0) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) rows[i * n + j] = L(i, j);
    }
    // z and y hold `width` paths interleaved: z[j * width + w], y[i * width + w]
    void apply_block(const double* z, double* y, std::size_t width) const {
        for (std::size_t i = 0; i < n; ++i) {
            const double* row = rows.data() + i * n;
            double* yi = y + i * width;
            for (std::size_t w = 0; w < width; ++w) yi[w] = 0.0;
            for (std::size_t j = 0; j <= i; ++j) {
                const double lij = row[j];
                const double* zj = z + j * width;
                for (std::size_t w = 0; w < width; ++w) yi[w] += lij * zj[w];
            }
        }
    }
};

// run `body(block_start, width)` over path blocks; outputs must be disjoint
// per path so the parallel version stays bit-identical to the serial one
template <class Body>
void run_blocks(std::size_t n_paths, Exec exec, Body&& body) {
    const std::size_t nb = (n_paths + TriangularFactor::kBlock - 1) / TriangularFactor::kBlock;
    if (exec == Exec::parallel) {
#if defined(_OPENMP)
#pragma omp parallel for schedule(static)
#endif
        for (long b = 0; b < (long)nb; ++b) {
            const std::size_t start = (std::size_t)b * TriangularFactor::kBlock;
            body(start, std::min(TriangularFactor::kBlock, n_paths - start));
        }
    } else {
        for (std::size_t b = 0; b < nb; ++b) {
            const std::size_t start = b * TriangularFactor::kBlock;
            body(start, std::min(TriangularFactor::kBlock, n_paths - start));
        }
    }
}

PathEnsemble paths_factorization(const specfun::Alpha& alpha, const hfbm::TimeGrid& grid,
                                 std::size_t n_paths, std::uint64_t seed,
                                 Exec exec = Exec::parallel);

// Kernel weights of one output time over the uniform partition of [0,T]:
// w_i = (n/T) int_{s_i}^{min(s_{i+1},t)} (log(t/s))^{(alpha-1)/2} ds / sqrt(Gamma(alpha)).
// Panels away from s = t use a fixed 8-point Gauss rule; the panel ending at
// the singular point s = t is integrated in closed form (lower incomplete
// gamma after w = log(t/s)).
std::vector<double> kernel_weights(const specfun::Alpha& alpha, double t, double T,
                                   std::size_t n_steps);

PathEnsemble paths_kernel_quadrature(const specfun::Alpha& alpha, const hfbm::TimeGrid& grid,
                                     std::size_t n_steps, std::size_t n_paths, std::uint64_t seed,
                                     Exec exec = Exec::parallel);

// Exact covariance of the kernel-quadrature estimator at two output times
// (deterministic; used to measure the discretization bias).
double kernel_quadrature_cov(const specfun::Alpha& alpha, double s, double t, double T,
                             std::size_t n_steps);

PathEnsemble paths_lhm(const specfun::Alpha& alpha, const specfun::Beta& beta,
                       const leroy::MixingLaw* law, const hfbm::TimeGrid& grid,
                       std::size_t n_paths, std::uint64_t seed, Exec exec = Exec::parallel);

PathEnsemble paths_ou(const specfun::Alpha& alpha, const specfun::Beta& beta,
                      const leroy::MixingLaw* law, const OUParams& ou,
                      const hfbm::TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                      Exec exec = Exec::parallel, int refine = 8);

// h_t(x) = (1/sqrt(Gamma(a))) [ (log(t/x))_+^{(a-1)/2}
//         - int_x^t e^{theta(s-t)} (log(s/x))^{(a-1)/2} ds ] for x < t, else 0.
double ou_kernel(const specfun::Alpha& alpha, const OUParams& ou, double t, double x);

// --- serialization ---

std::uint64_t fnv1a64(const std::string& bytes);

// CSV: one manifest comment line with the generating configuration, then
// "path_id,t,value" rows. Byte-identical for identical configurations.
void write_paths_csv(const PathEnsemble& ens, std::ostream& os);
// JSON manifest with parameters, seed, grid and the CSV checksum.
void write_manifest_json(const PathEnsemble& ens, std::uint64_t csv_checksum, std::ostream& os);

}  // namespace hlrs::sim
