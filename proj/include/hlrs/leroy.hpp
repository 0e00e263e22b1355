#pragma once

// The Le Roy mixing law mu_beta and its n-dimensional moment structure.
// The density comes from a numerical inverse Mellin transform along the
// vertical line Re z = 1,
//     m_beta(t) = (1/2pi) int_{-X}^{X} t^{-ix-1} Gamma(1+ix)^{1-beta} dx,
// with the complex power taken on the branch that is continuous along the
// contour (built from log Gamma, which never jumps there). Moment
// certificates int t^r m_beta dt = (r!)^{1-beta}, r = 0..4, gate every
// tabulated law.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hlrs/exec.hpp"
#include "hlrs/specfun.hpp"

namespace hlrs::leroy {

struct MixingLawOptions {
    double t_min = 1e-4;
    int n_nodes = 1537;        // log-uniform support nodes (odd, for Simpson)
    double tail_density = 1e-8;  // t_max grows until density*t drops below this
};

class MixingLaw {
  public:
    MixingLaw() = default;

    const specfun::Beta& beta() const { return beta_; }
    const std::vector<double>& t() const { return t_; }
    const std::vector<double>& density() const { return density_; }
    const std::vector<double>& cdf() const { return cdf_; }
    const std::array<double, 5>& moments() const { return moments_; }
    double truncation_x() const { return truncation_x_; }
    double total_mass() const { return cdf_.back(); }

    // inverse CDF by monotone piecewise-cubic interpolation of the table
    double sample_quantile(double u) const;

    // int_0^tmax e^{-s t} m(t) dt from the tabulated density
    double laplace(double s) const;

    void save_csv(std::ostream& os) const;
    static MixingLaw load_csv(std::istream& is);
    static std::string cache_key(const specfun::Beta& beta, const MixingLawOptions& opt);

    friend MixingLaw build_mixing_law(const specfun::Beta&, const MixingLawOptions&, Exec);

  private:
    specfun::Beta beta_{1.0};
    std::vector<double> t_, density_, cdf_;
    std::vector<double> slopes_;  // Fritsch-Carlson slopes of cdf over log t
    std::array<double, 5> moments_{};
    double truncation_x_ = 0.0;
    void build_slopes();
};

// Scalar density evaluation (beta strictly below 1).
double m_beta_density(const specfun::Beta& beta, double t);

MixingLaw build_mixing_law(const specfun::Beta& beta, const MixingLawOptions& opt = {},
                           Exec exec = Exec::parallel);

// Y_beta draws, deterministic in (seed, index). beta = 1 returns ones; for
// beta < 1 a built MixingLaw is required (std::logic_error otherwise).
std::vector<double> sample_mixing(const specfun::Beta& beta, std::size_t n, std::uint64_t seed,
                                  const MixingLaw* law = nullptr);

// E[X_1^{r_1} ... X_n^{r_n}] under the n-dimensional Le Roy measure:
// zero for any odd order, else 2^{-m} (m!)^{1-beta} prod (2m_j)!/m_j!.
double mixed_moments(const specfun::Beta& beta, std::span<const int> orders);

struct LeRoyHermite {
    int degree = 0;
    std::array<double, 5> coeff{};  // coeff[k] multiplies x^k
    double operator()(double x) const {
        double r = 0.0;
        for (int k = 4; k >= 0; --k) r = r * x + coeff[k];
        return r;
    }
};

LeRoyHermite hermite_poly(const specfun::Beta& beta, int j);

// int H_4(x1) H_2(x2) d nu_beta^2 — vanishes iff beta = 1.
double product_defect(const specfun::Beta& beta);

// Even moments of the grey noise measure: (2m)!/(2^m (m!)^beta) * norm_sq^m.
double grey_moment(const specfun::Beta& beta, double norm_sq, int order);

}  // namespace hlrs::leroy
