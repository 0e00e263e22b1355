#pragma once

// Scalar special functions shared by every other module: real/complex gamma,
// the Tricomi confluent function Psi(a,b;z) on z > 0, the Le Roy function
// R_beta and its derivative, incomplete gammas, and the model constants
// C_alpha, K_alpha.

#include <complex>
#include <stdexcept>

namespace hlrs::specfun {

// Hadamard order, restricted to (0,2). regime() tells which branch of the
// M-operator applies.
class Alpha {
  public:
    enum class Regime { derivative, brownian, integral };

    explicit Alpha(double v) : value_(v) {
        if (!(v > 0.0) || !(v < 2.0))
            throw std::domain_error("alpha must lie in the open interval (0,2)");
        regime_ = v < 1.0 ? Regime::derivative : (v == 1.0 ? Regime::brownian : Regime::integral);
    }
    double value() const { return value_; }
    Regime regime() const { return regime_; }

  private:
    double value_;
    Regime regime_;
};

// Le Roy order, restricted to (0,1].
class Beta {
  public:
    explicit Beta(double v) : value_(v) {
        if (!(v > 0.0) || !(v <= 1.0))
            throw std::domain_error("beta must lie in the half-open interval (0,1]");
    }
    double value() const { return value_; }

  private:
    double value_;
};

struct PsiArgs {
    double a;
    double b;
    double z;  // must be > 0
};

struct ModelConstants {
    double C;  // 2^{1-alpha} sqrt(pi) / Gamma(alpha/2)
    double K;  // Gamma((alpha+1)/2) / sqrt(Gamma(alpha))
};

// Gamma(x); throws std::domain_error at the poles x = 0, -1, -2, ...
double gamma_real(double x);

// Complex Gamma via Lanczos; poles throw std::domain_error.
std::complex<double> gamma_complex(std::complex<double> z);

// log Gamma, continuous along vertical lines in Re z >= 0.5 (no branch
// jumps as |Im z| grows). Only that half-plane is supported.
std::complex<double> log_gamma_complex(std::complex<double> z);

// Tricomi Psi(a,b;z) for real parameters and z > 0, evaluated through the
// Laplace-type integral representation when a > 0 and through the shift
// Psi(a,b;z) = z^{1-b} Psi(a+1-b, 2-b; z) when a < 0 (the shifted first
// parameter must be positive, otherwise std::invalid_argument).
double tricomi_psi(const PsiArgs& args);

// d/dz Psi(a,b;z) = -a Psi(a+1, b+1; z)
double tricomi_psi_dz(const PsiArgs& args);

// Le Roy function R_beta(x) = sum_j x^j / (j!)^beta and its derivative.
// |x| beyond the configured cap throws std::range_error.
inline constexpr double kLeroyXMax = 500.0;
double leroy(const Beta& beta, double x);
double leroy_dx(const Beta& beta, double x);

ModelConstants model_constants(const Alpha& alpha);

// Non-regularized incomplete gammas (a > 0, x >= 0).
double igamma_lower(double a, double x);
double igamma_upper(double a, double x);

// Inverse standard normal CDF (Wichura AS241, double precision).
double inverse_normal_cdf(double p);

}  // namespace hlrs::specfun
