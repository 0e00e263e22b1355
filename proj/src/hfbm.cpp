#include "hlrs/hfbm.hpp"

#include <cmath>
#include <sstream>

namespace hlrs::hfbm {

using specfun::Alpha;
using specfun::model_constants;
using specfun::tricomi_psi;

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times)) {
    if (times_.empty()) throw std::domain_error("TimeGrid: empty grid");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (i == 0) {
            if (times_[0] < 0.0) throw std::domain_error("TimeGrid: negative time");
        } else {
            if (!(times_[i] > times_[i - 1]))
                throw std::domain_error("TimeGrid: times must be strictly increasing");
        }
    }
    if (!times_.empty() && times_[0] == 0.0 && times_.size() == 1)
        throw std::domain_error("TimeGrid: grid needs at least one positive time");
    if (times_[0] != 0.0 && !(times_[0] > 0.0))
        throw std::domain_error("TimeGrid: times must be positive (optional leading 0)");
}

TimeGrid TimeGrid::parse(const std::string& spec) {
    std::istringstream in(spec);
    std::string tok;
    std::vector<std::string> parts;
    while (std::getline(in, tok, ':')) parts.push_back(tok);
    if (parts.size() < 3 || parts.size() > 4)
        throw std::domain_error("grid spec must be start:stop:count[:geo]");
    const double start = std::stod(parts[0]);
    const double stop = std::stod(parts[1]);
    const long count = std::stol(parts[2]);
    const bool geo = parts.size() == 4;
    if (geo && parts[3] != "geo") throw std::domain_error("grid spec: unknown spacing tag");
    if (count < 1) throw std::domain_error("grid spec: count must be >= 1");
    if (!(stop > start) && count > 1) throw std::domain_error("grid spec: need stop > start");
    if (geo && !(start > 0.0)) throw std::domain_error("grid spec: geometric grid needs start > 0");
    std::vector<double> ts(count);
    if (count == 1) {
        ts[0] = start;
    } else if (geo) {
        const double q = std::pow(stop / start, 1.0 / double(count - 1));
        for (long i = 0; i < count; ++i) ts[i] = start * std::pow(q, double(i));
        ts.back() = stop;
    } else {
        const double h = (stop - start) / double(count - 1);
        for (long i = 0; i < count; ++i) ts[i] = start + h * double(i);
        ts.back() = stop;
    }
    TimeGrid g(std::move(ts));
    g.spec_ = spec;
    return g;
}

double covariance(const Alpha& alpha, double s, double t) {
    if (s < 0.0 || t < 0.0) throw std::domain_error("covariance: times must be >= 0");
    const double lo = std::min(s, t), hi = std::max(s, t);
    if (lo == 0.0) return 0.0;
    if (lo == hi) return lo;  // var(B(t)) = t, any alpha
    const double a = alpha.value();
    if (alpha.regime() == Alpha::Regime::brownian) return lo;
    const double psi = tricomi_psi({0.5 * (1.0 - a), 1.0 - a, std::log(hi / lo)});
    return model_constants(alpha).C * lo * psi;
}

CovarianceMatrix covariance_matrix(const Alpha& alpha, const TimeGrid& grid, Exec exec) {
    const auto& ts = grid.times();
    const long n = (long)ts.size();
    Eigen::MatrixXd m(n, n);
    // rows are independent work items; both exec modes compute entries
    // identically, the parallel loop only changes who computes them
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (long j = 0; j < n; ++j)
            for (long l = j; l < n; ++l) m(j, l) = covariance(alpha, ts[j], ts[l]);
    } else {
        for (long j = 0; j < n; ++j)
            for (long l = j; l < n; ++l) m(j, l) = covariance(alpha, ts[j], ts[l]);
    }
    for (long j = 0; j < n; ++j)
        for (long l = 0; l < j; ++l) m(j, l) = m(l, j);
    return CovarianceMatrix{grid, std::move(m)};
}

PsdFactor factor_psd(const Eigen::MatrixXd& a) {
    const double max_diag = a.diagonal().maxCoeff();
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success) return PsdFactor{llt.matrixL(), 0.0};
    for (double jitter = 1e-14 * max_diag; jitter <= 1e-10 * max_diag; jitter *= 2.0) {
        Eigen::MatrixXd aj = a;
        aj.diagonal().array() += jitter;
        llt.compute(aj);
        if (llt.info() == Eigen::Success) return PsdFactor{llt.matrixL(), jitter};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
    throw psd_error(es.eigenvalues().minCoeff());
}

double increment_variance(const Alpha& alpha, double s, double t) {
    if (!(s >= 0.0) || !(t > s)) throw std::domain_error("increment_variance: need 0 <= s < t");
    return t + s - 2.0 * covariance(alpha, s, t);
}

double increment_cross_covariance(const Alpha& alpha, double u, double v, double s, double t) {
    if (!(0.0 < u && u < v && v <= s && s < t))
        throw std::domain_error("increment_cross_covariance: need 0 < u < v <= s < t");
    return covariance(alpha, t, v) - covariance(alpha, t, u) - covariance(alpha, s, v) +
           covariance(alpha, s, u);
}

namespace {

// variance of the unit increment B(j) - B(j-1)
double unit_increment_variance(const Alpha& alpha, long j) {
    if (j == 1) return 1.0;
    const double a = alpha.value();
    const double c = model_constants(alpha).C;
    const double psi =
        tricomi_psi({0.5 * (1.0 - a), 1.0 - a, std::log(double(j) / double(j - 1))});
    return double(2 * j - 1) - 2.0 * double(j - 1) * c * psi;
}

double numerator_constant(const Alpha& alpha, long t) {
    const double a = alpha.value();
    const double c = model_constants(alpha).C;
    const double psi =
        tricomi_psi({0.5 * (1.0 - a), 1.0 - a, std::log(double(t) / double(t - 1))});
    return double(2 * t - 1) - 2.0 * double(t - 1) * c * psi;
}

}  // namespace

double memory_ratio(const Alpha& alpha, long t, long m) {
    if (t < 2) throw std::domain_error("memory_ratio: t must be an integer >= 2");
    if (m < 1) throw std::domain_error("memory_ratio: m must be an integer >= 1");
    if (alpha.regime() == Alpha::Regime::brownian) return 1.0;
    double denom = 0.0;
    for (long j = t * m - m + 1; j <= t * m; ++j) denom += unit_increment_variance(alpha, j);
    return double(m) * numerator_constant(alpha, t) / denom;
}

MemoryRatioReport memory_ratios(const Alpha& alpha, long t, const std::vector<long>& ms) {
    MemoryRatioReport rep;
    rep.alpha = alpha.value();
    rep.t = t;
    rep.m = ms;
    rep.numerator_constant =
        alpha.regime() == Alpha::Regime::brownian ? 1.0 : numerator_constant(alpha, t);
    rep.ratios.reserve(ms.size());
    for (long m : ms) rep.ratios.push_back(memory_ratio(alpha, t, m));
    return rep;
}

double joint_charfn_exponent(const Alpha& alpha, const TimeGrid& grid,
                             std::span<const double> k) {
    if (k.size() != grid.size())
        throw std::invalid_argument("joint_charfn_exponent: |k| must match the grid size");
    CovarianceMatrix cm = covariance_matrix(alpha, grid, Exec::serial);
    double q = 0.0;
    const long n = (long)k.size();
    for (long j = 0; j < n; ++j)
        for (long l = 0; l < n; ++l) q += k[j] * k[l] * cm.entries(j, l);
    return q;
}

}  // namespace hlrs::hfbm
