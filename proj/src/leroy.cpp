#include "hlrs/leroy.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "hlrs/quadrature.hpp"
#include "hlrs/rng.hpp"

namespace hlrs::leroy {

using specfun::Beta;

namespace {

// Fixed 15-point rule per panel of width 0.25 along the contour. The
// integrand oscillates at frequency |log t| + (1-beta) d(arg Gamma)/dx,
// a couple of radians per panel at most on the supported range.
constexpr double kPanelWidth = 0.25;
constexpr double kTruncationCap = 400.0;

struct MellinNodes {
    double beta;
    double X;
    std::vector<double> x;    // contour abscissae on [-X, X]
    std::vector<double> amp;  // weight * |Gamma(1+ix)|^(1-beta)
    std::vector<double> phase;  // (1-beta) * Im log Gamma(1+ix)

    explicit MellinNodes(double b) : beta(b) {
        // |Gamma(1+ix)|^(1-beta) ~ e^{-(1-beta) pi x / 2}: choose X so the
        // truncated tail is below 1e-12.
        X = 2.0 * 12.0 * std::log(10.0) / ((1.0 - b) * M_PI);
        if (X > kTruncationCap)
            throw std::runtime_error(
                "m_beta_density: contour tail does not decay fast enough to truncate "
                "(beta too close to 1)");
        const int panels = (int)std::ceil(2.0 * X / kPanelWidth);
        const double h = 2.0 * X / panels;
        x.reserve(panels * 15);
        amp.reserve(panels * 15);
        phase.reserve(panels * 15);
        const double one_m_b = 1.0 - b;
        for (int p = 0; p < panels; ++p) {
            const double a = -X + p * h;
            const double mid = a + 0.5 * h;
            const double hc = 0.5 * h;
            for (int i = 0; i < 15; ++i) {
                double xi, wi;
                if (i == 14) {
                    xi = mid;
                    wi = quad::kWgk[7];
                } else {
                    const int j = i / 2;
                    const double dx = hc * quad::kXgk[j];
                    xi = (i & 1) ? mid + dx : mid - dx;
                    wi = quad::kWgk[j];
                }
                const std::complex<double> lg =
                    specfun::log_gamma_complex(std::complex<double>(1.0, xi));
                x.push_back(xi);
                amp.push_back(wi * hc * std::exp(one_m_b * lg.real()));
                phase.push_back(one_m_b * lg.imag());
            }
        }
    }

    double density(double t) const {
        if (!(t > 0.0)) throw std::domain_error("m_beta_density: t must be > 0");
        const double L = std::log(t);
        double re = 0.0, im = 0.0;
        const std::size_t n = x.size();
        for (std::size_t k = 0; k < n; ++k) {
            const double ph = phase[k] - x[k] * L;
            re += amp[k] * std::cos(ph);
            im += amp[k] * std::sin(ph);
        }
        const double scale = 1.0 / (2.0 * M_PI * t);
        re *= scale;
        im *= scale;
        if (std::abs(im) > 1e-8 * std::max(1.0, std::abs(re)))
            throw std::runtime_error("m_beta_density: imaginary residue above tolerance");
        return re;
    }
};

double require_below_one(const Beta& beta, const char* who) {
    if (beta.value() >= 1.0)
        throw std::domain_error(std::string(who) + ": requires beta strictly below 1");
    return beta.value();
}

}  // namespace

double m_beta_density(const Beta& beta, double t) {
    MellinNodes nodes(require_below_one(beta, "m_beta_density"));
    return nodes.density(t);
}

void MixingLaw::build_slopes() {
    // Fritsch-Carlson monotone slopes of cdf as a function of y = log t
    const std::size_t n = t_.size();
    slopes_.assign(n, 0.0);
    std::vector<double> y(n), d(n - 1);
    for (std::size_t i = 0; i < n; ++i) y[i] = std::log(t_[i]);
    for (std::size_t i = 0; i + 1 < n; ++i)
        d[i] = (cdf_[i + 1] - cdf_[i]) / (y[i + 1] - y[i]);
    slopes_[0] = d[0];
    slopes_[n - 1] = d[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (d[i - 1] * d[i] <= 0.0)
            slopes_[i] = 0.0;
        else
            slopes_[i] = 2.0 * d[i - 1] * d[i] / (d[i - 1] + d[i]);  // harmonic mean
    }
}

double MixingLaw::sample_quantile(double u) const {
    if (t_.empty()) throw std::logic_error("MixingLaw: table not built");
    if (!(u > 0.0) || !(u < 1.0)) throw std::domain_error("sample_quantile: u must be in (0,1)");
    const double target = u * cdf_.back();
    // bracketing segment
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    std::size_t hi = std::min<std::size_t>(cdf_.size() - 1, (std::size_t)(it - cdf_.begin()));
    if (hi == 0) hi = 1;
    const std::size_t lo = hi - 1;
    const double y0 = std::log(t_[lo]), y1 = std::log(t_[hi]);
    const double h = y1 - y0;
    const double c0 = cdf_[lo], c1 = cdf_[hi];
    const double m0 = slopes_[lo] * h, m1 = slopes_[hi] * h;
    auto hermite = [&](double s) {
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * c0 + (s3 - 2 * s2 + s) * m0 +
               (-2 * s3 + 3 * s2) * c1 + (s3 - s2) * m1;
    };
    double a = 0.0, b = 1.0;
    for (int it2 = 0; it2 < 60; ++it2) {
        const double mid = 0.5 * (a + b);
        (hermite(mid) < target ? a : b) = mid;
    }
    return std::exp(y0 + 0.5 * (a + b) * h);
}

double MixingLaw::laplace(double s) const {
    if (t_.empty()) throw std::logic_error("MixingLaw: table not built");
    // composite Simpson over the log-uniform node grid
    const std::size_t n = t_.size();
    const double h = std::log(t_[1] / t_[0]);
    auto g = [&](std::size_t i) {
        return std::exp(-s * t_[i]) * std::max(density_[i], 0.0) * t_[i];
    };
    double sum = g(0) + g(n - 1);
    for (std::size_t i = 1; i + 1 < n; ++i) sum += (i & 1 ? 4.0 : 2.0) * g(i);
    return sum * h / 3.0;
}

MixingLaw build_mixing_law(const Beta& beta, const MixingLawOptions& opt, Exec exec) {
    MellinNodes nodes(require_below_one(beta, "build_mixing_law"));
    // pick t_max where the (super-exponentially decaying) density has died
    double t_max = 0.0;
    for (double cand : {6.0, 8.0, 12.0, 16.0, 24.0, 32.0, 48.0, 64.0}) {
        if (std::abs(nodes.density(cand)) * cand < opt.tail_density) {
            t_max = cand;
            break;
        }
    }
    if (t_max == 0.0)
        throw std::runtime_error("build_mixing_law: tail mass target not reachable by t=64");

    const int n = opt.n_nodes;
    if (n < 5 || n % 2 == 0)
        throw std::domain_error("build_mixing_law: n_nodes must be odd and >= 5");
    const double y0 = std::log(opt.t_min), y1 = std::log(t_max);
    const double h = (y1 - y0) / (n - 1);
    // density at nodes and at interval midpoints (for the cumulative Simpson)
    const int total = 2 * n - 1;
    std::vector<double> dens_fine(total);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int i = 0; i < total; ++i) dens_fine[i] = nodes.density(std::exp(y0 + 0.5 * h * i));
    } else {
        for (int i = 0; i < total; ++i) dens_fine[i] = nodes.density(std::exp(y0 + 0.5 * h * i));
    }

    MixingLaw law;
    law.beta_ = beta;
    law.truncation_x_ = nodes.X;
    law.t_.resize(n);
    law.density_.resize(n);
    law.cdf_.resize(n);
    for (int i = 0; i < n; ++i) {
        law.t_[i] = std::exp(y0 + h * i);
        law.density_[i] = dens_fine[2 * i];
    }
    // cumulative Simpson of t*m(t) in y (clipped at zero: tiny negative
    // oscillation residue must not produce a decreasing cdf)
    auto gfine = [&](int i) {
        const double yi = y0 + 0.5 * h * i;
        return std::max(dens_fine[i], 0.0) * std::exp(yi);
    };
    law.cdf_[0] = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        const double seg = h / 6.0 * (gfine(2 * i) + 4.0 * gfine(2 * i + 1) + gfine(2 * i + 2));
        law.cdf_[i + 1] = law.cdf_[i] + std::max(seg, 0.0);
    }
    // moment certificates r = 0..4 by Simpson on the refined grid
    for (int r = 0; r <= 4; ++r) {
        double sum = 0.0;
        auto f = [&](int i) {
            const double yi = y0 + 0.5 * h * i;
            return std::exp(double(r + 1) * yi) * dens_fine[i];
        };
        sum = f(0) + f(total - 1);
        for (int i = 1; i + 1 < total; ++i) sum += (i & 1 ? 4.0 : 2.0) * f(i);
        law.moments_[r] = sum * (0.5 * h) / 3.0;
    }
    law.build_slopes();
    return law;
}

std::vector<double> sample_mixing(const Beta& beta, std::size_t n, std::uint64_t seed,
                                  const MixingLaw* law) {
    std::vector<double> out(n);
    if (beta.value() == 1.0) {
        std::fill(out.begin(), out.end(), 1.0);  // the mixing law degenerates to delta_1
        return out;
    }
    if (law == nullptr || law->t().empty())
        throw std::logic_error("sample_mixing: mixing law not built for beta < 1");
    for (std::size_t k = 0; k < n; ++k) {
        const double u = rng::uniform01(seed, rng::Stream::mixing, k, 0);
        out[k] = law->sample_quantile(u);
    }
    return out;
}

double mixed_moments(const Beta& beta, std::span<const int> orders) {
    if (orders.empty()) throw std::invalid_argument("mixed_moments: need at least one order");
    long m = 0;
    double prod = 1.0;
    for (int r : orders) {
        if (r < 0) throw std::domain_error("mixed_moments: orders must be >= 0");
        if (r % 2 == 1) return 0.0;
        const long mj = r / 2;
        m += mj;
        // (2 m_j)! / m_j!
        for (long k = mj + 1; k <= 2 * mj; ++k) prod *= double(k);
    }
    double mfact = 1.0;
    for (long k = 2; k <= m; ++k) mfact *= double(k);
    return std::exp2(double(-m)) * std::pow(mfact, 1.0 - beta.value()) * prod;
}

LeRoyHermite hermite_poly(const Beta& beta, int j) {
    if (j < 0 || j > 4)
        throw std::invalid_argument("hermite_poly: only degrees 0..4 are supported");
    const double b = beta.value();
    LeRoyHermite h;
    h.degree = j;
    switch (j) {
        case 0: h.coeff = {1, 0, 0, 0, 0}; break;
        case 1: h.coeff = {0, 1, 0, 0, 0}; break;
        case 2: h.coeff = {-1, 0, 1, 0, 0}; break;
        case 3: h.coeff = {0, -6.0 / std::exp2(b), 0, 1, 0}; break;
        case 4: {
            const double a2 = (6.0 - 90.0 * std::pow(3.0, -b)) / (6.0 - std::exp2(b));
            const double a0 = -6.0 / std::exp2(b) - a2;
            h.coeff = {a0, 0, a2, 0, 1};
            break;
        }
    }
    return h;
}

double product_defect(const Beta& beta) {
    const double b = beta.value();
    const double p2 = std::exp2(b), p3 = std::pow(3.0, b), p6 = std::pow(6.0, b);
    return ((18.0 - 6.0 * p3) * (6.0 - p2) + (2.0 * p3 - p6) * (6.0 - 90.0 / p3)) /
           (p6 * (6.0 - p2));
}

double grey_moment(const Beta& beta, double norm_sq, int order) {
    if (norm_sq < 0.0) throw std::domain_error("grey_moment: norm_sq must be >= 0");
    if (order < 0) throw std::domain_error("grey_moment: order must be >= 0");
    if (order % 2 == 1) return 0.0;
    const int m = order / 2;
    double fact2m = 1.0, factm = 1.0;
    for (int k = 2; k <= order; ++k) fact2m *= double(k);
    for (int k = 2; k <= m; ++k) factm *= double(k);
    return fact2m / (std::exp2(double(m)) * std::pow(factm, beta.value())) *
           std::pow(norm_sq, double(m));
}

// --- serialization -------------------------------------------------------

void MixingLaw::save_csv(std::ostream& os) const {
    if (t_.empty()) throw std::logic_error("MixingLaw: table not built");
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "# hlrs-mixing-law v1,beta=%.17g,n=%zu,truncation_X=%.17g,"
                  "m0=%.17g,m1=%.17g,m2=%.17g,m3=%.17g,m4=%.17g\n",
                  beta_.value(), t_.size(), truncation_x_, moments_[0], moments_[1], moments_[2],
                  moments_[3], moments_[4]);
    os << buf << "t,density,cdf\n";
    for (std::size_t i = 0; i < t_.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t_[i], density_[i], cdf_[i]);
        os << buf;
    }
}

MixingLaw MixingLaw::load_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# hlrs-mixing-law v1,", 0) != 0)
        throw std::runtime_error("MixingLaw::load_csv: unrecognized header");
    MixingLaw law;
    double beta_v = 0.0;
    std::size_t n = 0;
    {
        std::istringstream hs(line.substr(line.find("v1,") + 3));
        std::string kv;
        while (std::getline(hs, kv, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = kv.substr(0, eq);
            const double val = std::stod(kv.substr(eq + 1));
            if (key == "beta") beta_v = val;
            else if (key == "n") n = (std::size_t)val;
            else if (key == "truncation_X") law.truncation_x_ = val;
            else if (key.size() == 2 && key[0] == 'm') law.moments_[key[1] - '0'] = val;
        }
    }
    if (!std::getline(is, line) || line != "t,density,cdf")
        throw std::runtime_error("MixingLaw::load_csv: missing column header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string f1, f2, f3;
        if (!std::getline(ls, f1, ',') || !std::getline(ls, f2, ',') || !std::getline(ls, f3))
            throw std::runtime_error("MixingLaw::load_csv: malformed row");
        law.t_.push_back(std::stod(f1));
        law.density_.push_back(std::stod(f2));
        law.cdf_.push_back(std::stod(f3));
    }
    if (n != law.t_.size() || law.t_.empty())
        throw std::runtime_error("MixingLaw::load_csv: row count mismatch");
    law.beta_ = specfun::Beta(beta_v);
    law.build_slopes();
    return law;
}

std::string MixingLaw::cache_key(const Beta& beta, const MixingLawOptions& opt) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "mixing_beta%.6f_n%d_tmin%.1e_tail%.1e", beta.value(),
                  opt.n_nodes, opt.t_min, opt.tail_density);
    return buf;
}

}  // namespace hlrs::leroy
