#pragma once

// Hadamard-type fractional integrals and derivatives. All operators are
// evaluated in the log-substituted form, so every quadrature lives on a
// half-line with weight e^{-mu u} u^{gamma-1}:
//
//   left  integral:  (1/Gamma(g)) int_0^inf e^{-mu u} u^{g-1} f(t e^{-u}) du
//   right integral:  (1/Gamma(g)) int_0^inf e^{-mu u} u^{g-1} f(t e^{+u}) du
//   Caputo (left):   (1/Gamma(1-b)) int_0^inf u^{-b} f'(t e^{-u}) t e^{-u} du
//   Marchaud (left): (g/Gamma(1-g)) int_0^inf e^{-mu z} [f(x)-f(x e^{-z})]/z^{1+g} dz
//                    + mu^g f(x)
//
// Indicator arguments always take the exact closed form of the right-sided
// operators (the quadrature would see the jump).

#include <functional>

#include "hlrs/specfun.hpp"

namespace hlrs::hadamard {

enum class Smoothness { smooth_decaying, indicator, generic };

struct ScalarFunction {
    std::function<double(double)> value;
    std::function<double(double)> derivative;  // optional; null -> central differences
    Smoothness tag = Smoothness::generic;
    double ind_a = 0.0, ind_b = 0.0;  // [a,b) carried by the indicator tag

    double operator()(double x) const { return value(x); }
    bool has_derivative() const { return static_cast<bool>(derivative); }

    static ScalarFunction indicator_fn(double a, double b);
};

struct OpSpec {
    enum class Side { left_zero, right_inf };
    enum class Flavor { integral, derivative, caputo, marchaud };
    double order;
    double mu;
    Side side;
    Flavor flavor;

    void validate() const;
};

double had_integral_left(const ScalarFunction& f, double gamma, double mu, double t);
double had_integral_right(const ScalarFunction& f, double gamma, double mu, double t);

// Closed-form right-sided action on 1_{[a,b)}:
//   [ (log(b/x))_+^{(alpha-1)/2} - (log(a/x))_+^{(alpha-1)/2} ] / Gamma((alpha+1)/2)
double indicator_lemma_right(const specfun::Alpha& alpha, double a, double b, double x);

// K_alpha times the above; for alpha = 1 it is the indicator itself.
double indicator_M_right(const specfun::Alpha& alpha, double a, double b, double x);

// Caputo-type left derivative of order beta in (0,1).
double caputo_had_left(const ScalarFunction& f, const specfun::Beta& beta, double t);
// Fixed-resolution variant used by convergence-order studies.
double caputo_had_left_leveled(const ScalarFunction& f, const specfun::Beta& beta, double t,
                               int level);

// Marchaud-Hadamard left derivative, order gamma in (0,1), parameter mu >= 0.
double marchaud_had_left(const ScalarFunction& f, double gamma, double mu, double x);

// The mu=1 left-sided M operator: K_a * Marchaud^{(1-a)/2} for a in (0,1),
// K_a * I^{(a-1)/2} for a in (1,2); alpha = 1 is not dispatched here.
double M_left_mu1(const ScalarFunction& xi, const specfun::Alpha& alpha, double t);

}  // namespace hlrs::hadamard
