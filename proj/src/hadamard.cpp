#include "hlrs/hadamard.hpp"

#include <cmath>

#include "hlrs/quadrature.hpp"

namespace hlrs::hadamard {

using specfun::gamma_real;

ScalarFunction ScalarFunction::indicator_fn(double a, double b) {
    if (!(a >= 0.0) || !(b > a))
        throw std::domain_error("indicator_fn: need 0 <= a < b");
    ScalarFunction f;
    f.value = [a, b](double x) { return (x >= a && x < b) ? 1.0 : 0.0; };
    f.tag = Smoothness::indicator;
    f.ind_a = a;
    f.ind_b = b;
    return f;
}

void OpSpec::validate() const {
    const bool is_integral = flavor == Flavor::integral;
    if (is_integral) {
        if (!(order > 0.0)) throw std::domain_error("OpSpec: integral order must be > 0");
    } else {
        if (!(order > 0.0) || !(order < 1.0))
            throw std::domain_error("OpSpec: derivative-type order must lie in (0,1)");
    }
    if (mu < 0.0) throw std::domain_error("OpSpec: mu must be >= 0");
}

namespace {

double fd_derivative(const ScalarFunction& f, double x) {
    if (f.has_derivative()) return f.derivative(x);
    const double h = std::max(1e-6, 1e-6 * std::abs(x));
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Exact indicator action of the right-sided integral with mu = 0:
//   (1/Gamma(g+1)) [ (log(b/t))_+^g - (log(a/t))_+^g ]
double indicator_integral_right(double a, double b, double gamma, double t) {
    auto plus_pow = [gamma](double r) { return r > 1.0 ? std::pow(std::log(r), gamma) : 0.0; };
    const double hi = plus_pow(b / t);
    const double lo = a > 0.0 ? plus_pow(a / t) : 0.0;
    return (hi - lo) / gamma_real(gamma + 1.0);
}

}  // namespace

double had_integral_left(const ScalarFunction& f, double gamma, double mu, double t) {
    if (!(t > 0.0)) throw std::domain_error("had_integral_left: t must be > 0");
    if (!(gamma > 0.0)) throw std::domain_error("had_integral_left: gamma must be > 0");
    auto g = [&](double u) { return f(t * std::exp(-u)); };
    quad::Result r = quad::weighted_halfline(g, gamma, mu, 1e-11);
    if (!r.converged)
        throw std::runtime_error("had_integral_left: integral not convergent under refinement");
    return r.value / gamma_real(gamma);
}

double had_integral_right(const ScalarFunction& f, double gamma, double mu, double t) {
    if (!(t > 0.0)) throw std::domain_error("had_integral_right: t must be > 0");
    if (!(gamma > 0.0)) throw std::domain_error("had_integral_right: gamma must be > 0");
    if (f.tag == Smoothness::indicator && mu == 0.0)
        return indicator_integral_right(f.ind_a, f.ind_b, gamma, t);
    auto g = [&](double u) { return f(t * std::exp(u)); };
    quad::Result r = quad::weighted_halfline(g, gamma, mu, 1e-11);
    if (!r.converged)
        throw std::runtime_error("had_integral_right: integral not convergent under refinement");
    return r.value / gamma_real(gamma);
}

double indicator_lemma_right(const specfun::Alpha& alpha, double a, double b, double x) {
    if (!(a >= 0.0) || !(b > a)) throw std::domain_error("indicator_lemma_right: need 0 <= a < b");
    if (!(x > 0.0)) throw std::domain_error("indicator_lemma_right: x must be > 0");
    const double p = 0.5 * (alpha.value() - 1.0);
    auto plus_pow = [p](double r) { return r > 1.0 ? std::pow(std::log(r), p) : 0.0; };
    const double hi = plus_pow(b / x);
    const double lo = a > 0.0 ? plus_pow(a / x) : 0.0;
    return (hi - lo) / gamma_real(0.5 * (alpha.value() + 1.0));
}

double indicator_M_right(const specfun::Alpha& alpha, double a, double b, double x) {
    if (alpha.regime() == specfun::Alpha::Regime::brownian)
        return (x >= a && x < b) ? 1.0 : 0.0;
    return specfun::model_constants(alpha).K * indicator_lemma_right(alpha, a, b, x);
}

double caputo_had_left(const ScalarFunction& f, const specfun::Beta& beta, double t) {
    if (!(t > 0.0)) throw std::domain_error("caputo_had_left: t must be > 0");
    const double b = beta.value();
    if (!(b < 1.0)) throw std::domain_error("caputo_had_left: beta must be < 1");
    auto g = [&](double u) {
        const double z = t * std::exp(-u);
        return fd_derivative(f, z) * z;
    };
    quad::Result r = quad::weighted_halfline(g, 1.0 - b, 0.0, 1e-11);
    if (!r.converged) throw std::runtime_error("caputo_had_left: quadrature did not converge");
    return r.value / gamma_real(1.0 - b);
}

double caputo_had_left_leveled(const ScalarFunction& f, const specfun::Beta& beta, double t,
                               int level) {
    const double b = beta.value();
    auto g = [&](double u) {
        const double z = t * std::exp(-u);
        return fd_derivative(f, z) * z;
    };
    return quad::weighted_halfline_fixed(g, 1.0 - b, 0.0, level) / gamma_real(1.0 - b);
}

double marchaud_had_left(const ScalarFunction& f, double gamma, double mu, double x) {
    if (!(x > 0.0)) throw std::domain_error("marchaud_had_left: x must be > 0");
    if (!(gamma > 0.0) || !(gamma < 1.0))
        throw std::domain_error("marchaud_had_left: gamma must lie in (0,1)");
    if (mu < 0.0) throw std::domain_error("marchaud_had_left: mu must be >= 0");
    const double fx = f(x);
    // Below delta the difference quotient is replaced by its first-order
    // term A z with A = x f'(x); the subtraction would otherwise drown in
    // rounding noise.
    const double delta = 1e-6;
    const double A = x * fd_derivative(f, x);
    const double head = A * std::pow(delta, 1.0 - gamma) / (1.0 - gamma);
    auto integrand = [&](double z) {
        return std::exp(-mu * z) * (fx - f(x * std::exp(-z))) / std::pow(z, 1.0 + gamma);
    };
    // geometric panels out to where either e^{-mu z} has died or x e^{-z}
    // has fully collapsed onto 0+; past that point the bracket is constant
    // and the mu = 0 power tail closes in closed form
    double body = 0.0, lo = delta;
    int quiet = 0;
    bool done = false;
    for (int k = 0; k < 96; ++k) {
        quad::Result p = quad::adaptive(integrand, lo, 2.0 * lo, 1e-11, 1e-300, 128);
        body += p.value;
        lo *= 2.0;
        if (std::abs(p.value) <= 1e-16 * std::abs(body) + 1e-300) {
            if (++quiet >= 2) {
                done = true;
                break;
            }
        } else {
            quiet = 0;
        }
        if (mu > 0.0 && lo * mu > 745.0) {
            done = true;
            break;
        }
        if (mu == 0.0 && lo >= 745.0) {
            body += (fx - f(x * std::exp(-lo))) * std::pow(lo, -gamma) / gamma;
            done = true;
            break;
        }
    }
    if (!done) throw std::runtime_error("marchaud_had_left: quadrature did not converge");
    const double scale = gamma / gamma_real(1.0 - gamma);
    return scale * (head + body) + std::pow(mu, gamma) * fx;
}

double M_left_mu1(const ScalarFunction& xi, const specfun::Alpha& alpha, double t) {
    const double K = specfun::model_constants(alpha).K;
    switch (alpha.regime()) {
        case specfun::Alpha::Regime::derivative:
            return K * marchaud_had_left(xi, 0.5 * (1.0 - alpha.value()), 1.0, t);
        case specfun::Alpha::Regime::integral:
            return K * had_integral_left(xi, 0.5 * (alpha.value() - 1.0), 1.0, t);
        case specfun::Alpha::Regime::brownian:
            throw std::invalid_argument("M_left_mu1: alpha = 1 is the identity; handle in caller");
    }
    return 0.0;  // unreachable
}

}  // namespace hlrs::hadamard
