#include "hlrs/simulate.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <ostream>

#include <nlohmann/json.hpp>

#include "hlrs/quadrature.hpp"
#include "hlrs/rng.hpp"

namespace hlrs::sim {

using specfun::Alpha;
using specfun::Beta;

const char* generator_name(Generator g) {
    switch (g) {
        case Generator::factorization: return "factorization";
        case Generator::kernel_quadrature: return "kernel-quadrature";
        case Generator::lhm: return "lhm";
        case Generator::ou: return "ou";
    }
    return "?";
}

namespace {

TriangularFactor factor_for(const Alpha& alpha, std::span<const double> times) {
    hfbm::TimeGrid g(std::vector<double>(times.begin(), times.end()));
    hfbm::CovarianceMatrix cm = hfbm::covariance_matrix(alpha, g);
    return TriangularFactor(hfbm::factor_psd(cm.entries).lower);
}

template <class PerPath>
void run_paths(std::size_t n_paths, Exec exec, PerPath&& body) {
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (long p = 0; p < (long)n_paths; ++p) body((std::size_t)p);
    } else {
        for (std::size_t p = 0; p < n_paths; ++p) body(p);
    }
}

}  // namespace

PathEnsemble paths_factorization(const Alpha& alpha, const hfbm::TimeGrid& grid,
                                 std::size_t n_paths, std::uint64_t seed, Exec exec) {
    const auto pos = grid.positive();
    const std::size_t n = pos.size();
    const std::size_t off = grid.has_zero() ? 1 : 0;
    const TriangularFactor L = factor_for(alpha, pos);

    PathEnsemble ens{grid, n_paths, std::vector<double>(n_paths * grid.size(), 0.0),
                     Generator::factorization, seed, alpha.value()};
    run_blocks(n_paths, exec, [&](std::size_t start, std::size_t width) {
        std::vector<double> z(n * width), y(n * width);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t w = 0; w < width; ++w)
                z[j * width + w] = rng::normal(seed, rng::Stream::gaussian, start + w, j);
        L.apply_block(z.data(), y.data(), width);
        for (std::size_t w = 0; w < width; ++w) {
            double* row = ens.values.data() + (start + w) * grid.size();
            for (std::size_t j = 0; j < n; ++j) row[off + j] = y[j * width + w];
        }
    });
    return ens;
}

namespace {

// 8-point Gauss-Legendre on [-1,1]
constexpr double kXg8[4] = {0.183434642495649804939476142360, 0.525532409916328985817739049189,
                            0.796666477413626739591553936476, 0.960289856497536231683560868569};
constexpr double kWg8[4] = {0.362683783378361982965150449277, 0.313706645877887287337962201987,
                            0.222381034453374470544355994426, 0.101228536290376259152531354310};

double gl8(double (*f)(double, double, double), double lo, double hi, double t, double p) {
    const double mid = 0.5 * (lo + hi), hc = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int k = 0; k < 4; ++k) {
        const double dx = hc * kXg8[k];
        acc += kWg8[k] * (f(mid - dx, t, p) + f(mid + dx, t, p));
    }
    return acc * hc;
}

double log_kernel(double s, double t, double p) { return std::pow(std::log(t / s), p); }

}  // namespace

std::vector<double> kernel_weights(const Alpha& alpha, double t, double T, std::size_t n_steps) {
    if (!(t > 0.0) || !(t <= T)) throw std::domain_error("kernel_weights: need 0 < t <= T");
    if (n_steps == 0) throw std::domain_error("kernel_weights: n_steps must be >= 1");
    const double p = 0.5 * (alpha.value() - 1.0);
    const double h = T / double(n_steps);
    const double scale = (double(n_steps) / T) / std::sqrt(specfun::gamma_real(alpha.value()));
    std::vector<double> w(n_steps, 0.0);
    for (std::size_t i = 0; i < n_steps; ++i) {
        const double lo = h * double(i);
        if (lo >= t) break;
        const double hi = std::min(h * double(i + 1), t);
        double panel;
        if (hi == t) {
            // panel touching the singular endpoint: w = log(t/s) turns it
            // into t * int_0^W w^p e^{-w} dw
            panel = lo > 0.0 ? t * specfun::igamma_lower(p + 1.0, std::log(t / lo))
                             : t * specfun::gamma_real(p + 1.0);
        } else {
            panel = gl8(log_kernel, lo, hi, t, p);
        }
        w[i] = scale * panel;
    }
    return w;
}

double kernel_quadrature_cov(const Alpha& alpha, double s, double t, double T,
                             std::size_t n_steps) {
    const std::vector<double> ws = kernel_weights(alpha, s, T, n_steps);
    const std::vector<double> wt = kernel_weights(alpha, t, T, n_steps);
    const double var_step = T / double(n_steps);
    double acc = 0.0;
    for (std::size_t i = 0; i < n_steps; ++i) acc += ws[i] * wt[i];
    return acc * var_step;
}

PathEnsemble paths_kernel_quadrature(const Alpha& alpha, const hfbm::TimeGrid& grid,
                                     std::size_t n_steps, std::size_t n_paths, std::uint64_t seed,
                                     Exec exec) {
    if (grid.has_zero() ? grid.size() - 1 > n_steps : grid.size() > n_steps)
        throw std::domain_error("paths_kernel_quadrature: n_steps must be >= |grid|");
    const auto pos = grid.positive();
    const std::size_t m = pos.size();
    const std::size_t off = grid.has_zero() ? 1 : 0;
    const double T = pos.back();
    std::vector<std::vector<double>> w(m);
    for (std::size_t j = 0; j < m; ++j) w[j] = kernel_weights(alpha, pos[j], T, n_steps);
    const double step_sd = std::sqrt(T / double(n_steps));

    PathEnsemble ens{grid, n_paths, std::vector<double>(n_paths * grid.size(), 0.0),
                     Generator::kernel_quadrature, seed, alpha.value()};
    ens.n_steps = n_steps;
    run_paths(n_paths, exec, [&](std::size_t p) {
        std::vector<double> db(n_steps);
        for (std::size_t i = 0; i < n_steps; ++i)
            db[i] = step_sd * rng::normal(seed, rng::Stream::gaussian, p, i);
        double* row = ens.values.data() + p * grid.size();
        for (std::size_t j = 0; j < m; ++j) {
            const std::vector<double>& wj = w[j];
            double acc = 0.0;
            for (std::size_t i = 0; i < n_steps; ++i) acc += wj[i] * db[i];
            row[off + j] = acc;
        }
    });
    return ens;
}

PathEnsemble paths_lhm(const Alpha& alpha, const Beta& beta, const leroy::MixingLaw* law,
                       const hfbm::TimeGrid& grid, std::size_t n_paths, std::uint64_t seed,
                       Exec exec) {
    PathEnsemble ens = paths_factorization(alpha, grid, n_paths, seed, exec);
    ens.generator = Generator::lhm;
    ens.beta = beta.value();
    const std::vector<double> y = leroy::sample_mixing(beta, n_paths, seed, law);
    const std::size_t nt = grid.size();
    run_paths(n_paths, exec, [&](std::size_t p) {
        const double s = std::sqrt(y[p]);
        double* row = ens.values.data() + p * nt;
        for (std::size_t j = 0; j < nt; ++j) row[j] *= s;
    });
    return ens;
}

PathEnsemble paths_ou(const Alpha& alpha, const Beta& beta, const leroy::MixingLaw* law,
                      const OUParams& ou, const hfbm::TimeGrid& grid, std::size_t n_paths,
                      std::uint64_t seed, Exec exec, int refine) {
    if (!(ou.theta > 0.0)) throw std::domain_error("paths_ou: theta must be > 0");
    if (refine < 1) throw std::domain_error("paths_ou: refine must be >= 1");
    // internal grid: every output interval (and the run-up from 0) split
    // into `refine` uniform pieces; outputs land exactly on internal nodes
    const auto& out_ts = grid.times();
    std::vector<double> internal;
    std::vector<std::size_t> out_idx(out_ts.size());
    double prev = 0.0;
    for (std::size_t j = 0; j < out_ts.size(); ++j) {
        const double tj = out_ts[j];
        if (tj == 0.0) {
            out_idx[j] = 0;  // maps to time 0, handled separately
            continue;
        }
        for (int k = 1; k <= refine; ++k) {
            const double s = prev + (tj - prev) * double(k) / double(refine);
            internal.push_back(s);
        }
        out_idx[j] = internal.size();  // 1-based into [0, internal...]
        prev = tj;
    }
    hfbm::TimeGrid igrid(internal);
    PathEnsemble b = paths_lhm(alpha, beta, law, igrid, n_paths, seed, exec);

    PathEnsemble ens{grid, n_paths, std::vector<double>(n_paths * grid.size(), 0.0),
                     Generator::ou, seed, alpha.value(), beta.value()};
    ens.ou = ou;
    ens.has_ou = true;
    const std::size_t ni = internal.size();
    run_paths(n_paths, exec, [&](std::size_t p) {
        const double* bp = b.values.data() + p * ni;
        // cumulative trapezoid of e^{theta s} B(s); B(0) = 0
        std::vector<double> J(ni + 1, 0.0);
        double s_prev = 0.0, f_prev = 0.0;
        for (std::size_t i = 0; i < ni; ++i) {
            const double si = internal[i];
            const double fi = std::exp(ou.theta * si) * bp[i];
            J[i + 1] = J[i] + 0.5 * (si - s_prev) * (f_prev + fi);
            s_prev = si;
            f_prev = fi;
        }
        double* row = ens.values.data() + p * out_ts.size();
        for (std::size_t j = 0; j < out_ts.size(); ++j) {
            const double tj = out_ts[j];
            if (tj == 0.0) {
                row[j] = ou.y0;
                continue;
            }
            const std::size_t k = out_idx[j];  // internal index + 1
            const double bt = bp[k - 1];
            const double decay = std::exp(-ou.theta * tj);
            row[j] = ou.y0 * decay + ou.sigma * bt - ou.theta * ou.sigma * decay * J[k];
        }
    });
    return ens;
}

double ou_kernel(const Alpha& alpha, const OUParams& ou, double t, double x) {
    if (!(t > 0.0) || !(x > 0.0)) throw std::domain_error("ou_kernel: need t > 0, x > 0");
    if (x >= t) return 0.0;
    const double p = 0.5 * (alpha.value() - 1.0);
    const double W = std::log(t / x);
    // inner integral int_x^t e^{theta(s-t)} (log(s/x))^p ds with s = x e^w,
    // then v = w^{p+1} to absorb the endpoint power
    const double q = p + 1.0;
    auto f = [&](double v) {
        const double w = std::pow(v, 1.0 / q);
        const double s = x * std::exp(w);
        return std::exp(ou.theta * (s - t)) * s;
    };
    quad::Result r = quad::adaptive(f, 0.0, std::pow(W, q), 1e-11, 1e-300, 512);
    if (!r.converged) throw std::runtime_error("ou_kernel: quadrature did not converge");
    const double inner = r.value / q;
    return (std::pow(W, p) - inner) / std::sqrt(specfun::gamma_real(alpha.value()));
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace {

std::string grid_string(const hfbm::TimeGrid& grid) {
    if (!grid.spec().empty()) return grid.spec();
    std::string s;
    char buf[40];
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", grid[i]);
        if (i) s += ';';
        s += buf;
    }
    return s;
}

std::string config_line(const PathEnsemble& ens) {
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "# generator=%s,alpha=%.17g,beta=%.17g,seed=%llu,n_paths=%zu,n_steps=%zu",
                  generator_name(ens.generator), ens.alpha, ens.beta,
                  (unsigned long long)ens.seed, ens.n_paths, ens.n_steps);
    std::string line = buf;
    if (ens.has_ou) {
        std::snprintf(buf, sizeof buf, ",theta=%.17g,sigma=%.17g,y0=%.17g", ens.ou.theta,
                      ens.ou.sigma, ens.ou.y0);
        line += buf;
    }
    line += ",grid=" + grid_string(ens.grid);
    return line;
}

}  // namespace

void write_paths_csv(const PathEnsemble& ens, std::ostream& os) {
    os << config_line(ens) << "\npath_id,t,value\n";
    char buf[96];
    for (std::size_t p = 0; p < ens.n_paths; ++p)
        for (std::size_t j = 0; j < ens.grid.size(); ++j) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", p, ens.grid[j], ens.at(p, j));
            os << buf;
        }
}

void write_manifest_json(const PathEnsemble& ens, std::uint64_t csv_checksum, std::ostream& os) {
    nlohmann::json j;
    j["generator"] = generator_name(ens.generator);
    j["alpha"] = ens.alpha;
    j["beta"] = ens.beta;
    j["seed"] = ens.seed;
    j["n_paths"] = ens.n_paths;
    j["n_steps"] = ens.n_steps;
    j["grid"] = ens.grid.times();
    if (!ens.grid.spec().empty()) j["grid_spec"] = ens.grid.spec();
    if (ens.has_ou) j["ou"] = {{"theta", ens.ou.theta}, {"sigma", ens.ou.sigma}, {"y0", ens.ou.y0}};
    char cs[32];
    std::snprintf(cs, sizeof cs, "fnv1a64:%016llx", (unsigned long long)csv_checksum);
    j["csv_checksum"] = cs;
    std::time_t now = std::time(nullptr);
    char ts[32];
    std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["created_utc"] = ts;  // the only non-reproducible field, confined here
    os << j.dump(2) << "\n";
}

}  // namespace hlrs::sim
