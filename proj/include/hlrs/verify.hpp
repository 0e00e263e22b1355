#pragma once

// Machine-checkable residual reports for the analytical structure: the
// fractional heat equation satisfied by the LHm characteristic function,
// the Le Roy eigenfunction relation, the S-transform/noise operator
// identity, Monte Carlo sup-ordering, and the memory-ratio dichotomy.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hlrs/hadamard.hpp"
#include "hlrs/specfun.hpp"

namespace hlrs::verify {

struct CheckReport {
    std::string name;
    nlohmann::json params;
    double residual = 0.0;  // residual or worst statistic, per check
    double tolerance = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    double runtime_ms = 0.0;
    nlohmann::json details;

    nlohmann::json to_json() const;
};

// residual of ^H D^beta u + (theta^2 t / 2) u with u(t) = R_beta(-theta^2 t/2),
// plus the >=4x shrink of the residual when the quadrature level doubles
CheckReport check_pde_charfn(const specfun::Alpha& alpha, const specfun::Beta& beta, double theta,
                             const std::vector<double>& t_grid, int level = 3);

// residual of ^H D^beta R_beta(s t) - s t R_beta(s t)
CheckReport check_eigenfunction(const specfun::Beta& beta, double s,
                                const std::vector<double>& t_grid, int level = 4);

// K_a d/dt [ t (I^{(1+a)/2}_{0+,1} xi)(t) ]  vs  (M^{a/2}_{0+,1} xi)(t)
CheckReport check_stransform_identity(const specfun::Alpha& alpha,
                                      const hadamard::ScalarFunction& xi,
                                      const std::vector<double>& t_grid);

// Monte Carlo tail ordering of sup_{[0,t]} against a Brownian baseline on
// the same discrete grid (common random numbers)
CheckReport check_sup_inequality(const specfun::Alpha& alpha, double t,
                                 const std::vector<double>& x_grid, std::size_t n_paths,
                                 std::size_t n_steps, std::uint64_t seed);

// Delta_t^(m) trend over m_list: decreasing below half for alpha < 1,
// increasing beyond double for alpha > 1, exactly one at alpha = 1
CheckReport check_memory_trend(const specfun::Alpha& alpha, long t,
                               const std::vector<long>& m_list);

}  // namespace hlrs::verify
