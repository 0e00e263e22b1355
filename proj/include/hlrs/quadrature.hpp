#pragma once

// Deterministic quadrature kit used by the special functions and the
// fractional operators:
//   * adaptive Gauss-Kronrod 7/15 on a finite interval,
//   * geometric "octave" panels for tails on [start, inf),
//   * weighted half-line integrals  int_0^inf e^{-mu u} u^{gamma-1} g(u) du
//     with the endpoint power singularity removed analytically (u = v^{1/gamma}),
//   * low-order fixed composite rules with a resolution level, for
//     convergence-order studies.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace hlrs::quad {

// 15-point Kronrod nodes (positive half) and weights; the embedded 7-point
// Gauss rule sits on the odd-index nodes.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
};

template <class F>
Panel gk15(F&& f, double a, double b) {
    const double hc = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const double fc = f(mid);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = hc * kXgk[i];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        resk += kWgk[i] * (f1 + f2);
        if (i & 1) resg += kWg[i / 2] * (f1 + f2);
    }
    Panel p{a, b, resk * hc, std::abs(resk - resg) * std::abs(hc), };
    return p;
}

struct Result {
    double value = 0.0;
    double error = 0.0;
    int evals = 0;
    bool converged = false;
};

// Adaptive bisection driven by the Kronrod-Gauss discrepancy. The worst
// panel is split until the summed error estimate meets max(atol, rtol*|I|).
template <class F>
Result adaptive(F&& f, double a, double b, double rtol = 1e-10, double atol = 0.0,
                int max_panels = 512) {
    Result res;
    if (a == b) {
        res.converged = true;
        return res;
    }
    std::vector<Panel> segs;
    segs.reserve(64);
    // forced first split, asymmetric so a feature hiding from the Kronrod
    // error estimate cannot stay hidden in both children
    const double m0 = a + 0.46153846153846156 * (b - a);
    segs.push_back(gk15(f, a, m0));
    segs.push_back(gk15(f, m0, b));
    res.evals = 30;
    for (;;) {
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            total += segs[i].value;
            err += segs[i].error;
            if (segs[i].error > segs[worst].error) worst = i;
        }
        res.value = total;
        res.error = err;
        if (err <= std::max(atol, rtol * std::abs(total))) {
            res.converged = true;
            return res;
        }
        if ((int)segs.size() >= max_panels) return res;  // converged stays false
        const Panel w = segs[worst];
        const double m = 0.5 * (w.a + w.b);
        if (m <= w.a || m >= w.b) {  // interval exhausted at double precision
            res.converged = err <= std::max(atol * 10, 100 * rtol * std::abs(total));
            return res;
        }
        segs[worst] = gk15(f, w.a, m);
        segs.push_back(gk15(f, m, w.b));
        res.evals += 30;
    }
}

namespace detail {

// allocation-free bisection: one Kronrod application per smooth stretch
template <class F>
double panel_recursive(F&& f, double a, double b, double tol_abs, int depth, Result& res) {
    const Panel p = gk15(f, a, b);
    res.evals += 15;
    if (p.error <= tol_abs || depth >= 12) {
        res.error += p.error;
        return p.value;
    }
    const double m = 0.5 * (a + b);
    return panel_recursive(f, a, m, 0.5 * tol_abs, depth + 1, res) +
           panel_recursive(f, m, b, 0.5 * tol_abs, depth + 1, res);
}

}  // namespace detail

// Tail sum over geometric panels [start*2^k, start*2^{k+1}). Stops once two
// consecutive panels contribute below rel_stop of the accumulated value.
// converged=false signals a tail that refuses to die down (non-integrable or
// too slowly decaying for the panel cap).
template <class F>
Result octave_tail(F&& f, double start, double rtol = 1e-11, int max_octaves = 64,
                   double rel_stop = 1e-16) {
    Result res;
    double lo = start;
    int quiet = 0;
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int k = 0; k < max_octaves; ++k) {
        const double hi = lo * 2.0;
        const Panel probe = gk15(f, lo, hi);
        res.evals += 15;
        double v;
        const double scale = std::max(std::abs(res.value), std::abs(probe.value));
        if (probe.error <= rtol * scale) {
            v = probe.value;
            res.error += probe.error;
        } else {
            const double m = 0.5 * (lo + hi);
            v = detail::panel_recursive(f, lo, m, 0.5 * rtol * scale, 0, res) +
                detail::panel_recursive(f, m, hi, 0.5 * rtol * scale, 0, res);
        }
        res.value += v;
        const double mag = std::abs(v);
        if (mag <= rel_stop * std::abs(res.value) + 1e-300) {
            if (++quiet >= 2) {
                res.converged = true;
                return res;
            }
        } else {
            quiet = 0;
        }
        // divergence guard: contributions must eventually decay
        if (k == max_octaves - 1 && mag > 1e-3 * std::abs(res.value) && mag >= prev_mag)
            return res;
        prev_mag = mag;
        lo = hi;
    }
    // Ran out of octaves; accept only if the last panels were already tiny.
    res.converged = prev_mag <= 1e-10 * std::abs(res.value) + 1e-300;
    return res;
}

// int_0^inf e^{-mu u} u^{gamma-1} g(u) du, gamma > 0, mu >= 0.
// On [0,1] the substitution u = v^{1/gamma} turns the weight into dv/gamma;
// beyond 1 geometric panels ride the e^{-mu u} (or the decay of g).
template <class G>
Result weighted_halfline(G&& g, double gamma, double mu, double rtol = 1e-10) {
    if (!(gamma > 0.0)) throw std::domain_error("weighted_halfline: gamma must be > 0");
    if (mu < 0.0) throw std::domain_error("weighted_halfline: mu must be >= 0");
    const double inv_gamma = 1.0 / gamma;
    auto head = [&](double v) {
        const double u = std::pow(v, inv_gamma);
        return std::exp(-mu * u) * g(u);
    };
    Result r0 = adaptive(head, 0.0, 1.0, rtol, 1e-300, 512);
    r0.value *= inv_gamma;
    r0.error *= inv_gamma;
    auto tail = [&](double u) { return std::exp(-mu * u) * std::pow(u, gamma - 1.0) * g(u); };
    Result r1 = octave_tail(tail, 1.0, rtol);
    Result out;
    out.value = r0.value + r1.value;
    out.error = r0.error + r1.error;
    out.evals = r0.evals + r1.evals;
    out.converged = r0.converged && r1.converged;
    return out;
}

// --- fixed-resolution composite rules (for convergence-order checks) ---

inline constexpr double kXg2 = 0.577350269189625764509148780502;  // 2-point Gauss

template <class F>
double fixed_gl2(F&& f, double a, double b, int panels) {
    const double h = (b - a) / panels;
    double sum = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double mid = a + (i + 0.5) * h;
        const double dx = 0.5 * h * kXg2;
        sum += f(mid - dx) + f(mid + dx);
    }
    return sum * 0.5 * h;
}

// Same weighted half-line integral at a fixed resolution level: GL2 panels,
// 2*2^level on the de-singularized head and 2^level per octave out to u = 64.
// Error decays like h^4, so one level up shrinks the труncation error ~16x.
template <class G>
double weighted_halfline_fixed(G&& g, double gamma, double mu, int level) {
    const double inv_gamma = 1.0 / gamma;
    auto head = [&](double v) {
        const double u = std::pow(v, inv_gamma);
        return std::exp(-mu * u) * g(u);
    };
    const int m = 2 << level;
    double sum = fixed_gl2(head, 0.0, 1.0, m) * inv_gamma;
    auto tail = [&](double u) { return std::exp(-mu * u) * std::pow(u, gamma - 1.0) * g(u); };
    double lo = 1.0;
    for (int k = 0; k < 6; ++k) {
        sum += fixed_gl2(tail, lo, 2.0 * lo, 1 << level);
        lo *= 2.0;
    }
    return sum;
}

}  // namespace hlrs::quad
