#pragma once

// Closed-form second-order structure of the Hadamard fractional Brownian
// motion: variance/covariance through Tricomi's Psi, Gram matrices with a
// jitter-guarded Cholesky, increment variances, and the block-variance
// memory ratio Delta_t^(m).

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hlrs/exec.hpp"
#include "hlrs/specfun.hpp"

namespace hlrs::hfbm {

// Strictly increasing sample times, all positive except an optional leading
// zero (which carries the a.s. zero value of the process).
class TimeGrid {
  public:
    explicit TimeGrid(std::vector<double> times);

    // "start:stop:count[:geo]", inclusive endpoints
    static TimeGrid parse(const std::string& spec);

    const std::vector<double>& times() const { return times_; }
    std::size_t size() const { return times_.size(); }
    double operator[](std::size_t i) const { return times_[i]; }
    bool has_zero() const { return !times_.empty() && times_.front() == 0.0; }
    // times with the optional leading zero dropped
    std::span<const double> positive() const {
        return std::span<const double>(times_).subspan(has_zero() ? 1 : 0);
    }
    const std::string& spec() const { return spec_; }

  private:
    std::vector<double> times_;
    std::string spec_;  // set by parse(), empty for programmatic grids
};

struct CovarianceMatrix {
    TimeGrid grid;
    Eigen::MatrixXd entries;  // indexed like grid.times(), zero row/col for t=0
};

struct psd_error : std::runtime_error {
    double min_eigenvalue;
    explicit psd_error(double me)
        : std::runtime_error("covariance factorization failed; min eigenvalue estimate " +
                             std::to_string(me)),
          min_eigenvalue(me) {}
};

struct PsdFactor {
    Eigen::MatrixXd lower;  // L with L L^T = A + jitter I
    double jitter = 0.0;
};

double covariance(const specfun::Alpha& alpha, double s, double t);
CovarianceMatrix covariance_matrix(const specfun::Alpha& alpha, const TimeGrid& grid,
                                   Exec exec = Exec::parallel);

// Cholesky with the doubling jitter policy (1e-14 .. 1e-10 of the max
// diagonal); throws psd_error with a minimum-eigenvalue estimate beyond that.
PsdFactor factor_psd(const Eigen::MatrixXd& a);

double increment_variance(const specfun::Alpha& alpha, double s, double t);
double increment_cross_covariance(const specfun::Alpha& alpha, double u, double v, double s,
                                  double t);

struct MemoryRatioReport {
    double alpha;
    long t;
    std::vector<long> m;
    std::vector<double> ratios;
    double numerator_constant;  // C_{alpha,t}
};

double memory_ratio(const specfun::Alpha& alpha, long t, long m);
MemoryRatioReport memory_ratios(const specfun::Alpha& alpha, long t, const std::vector<long>& ms);

// Q = sum_{j,l} k_j k_l sigma_{j,l}; the Gaussian n-point characteristic
// function is exp(-Q/2).
double joint_charfn_exponent(const specfun::Alpha& alpha, const TimeGrid& grid,
                             std::span<const double> k);

}  // namespace hlrs::hfbm
