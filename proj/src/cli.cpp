#include "hlrs/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hlrs/hfbm.hpp"
#include "hlrs/leroy.hpp"
#include "hlrs/simulate.hpp"
#include "hlrs/verify.hpp"

namespace hlrs::cli {

namespace {

namespace fs = std::filesystem;
using specfun::Alpha;
using specfun::Beta;

constexpr std::uint64_t kDefaultSeed = 12345;  // fixed default, never wall-clock

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
    return v;
}

// Mixing law with optional on-disk cache (HLRS_CACHE_DIR).
leroy::MixingLaw obtain_mixing_law(const Beta& beta) {
    leroy::MixingLawOptions opt;
    const char* dir = std::getenv("HLRS_CACHE_DIR");
    fs::path cache;
    if (dir && *dir) {
        cache = fs::path(dir) / (leroy::MixingLaw::cache_key(beta, opt) + ".csv");
        if (fs::exists(cache)) {
            std::ifstream in(cache);
            try {
                leroy::MixingLaw law = leroy::MixingLaw::load_csv(in);
                if (law.beta().value() == beta.value()) return law;
            } catch (const std::exception&) {
                // fall through and rebuild
            }
        }
    }
    leroy::MixingLaw law = leroy::build_mixing_law(beta, opt);
    if (!cache.empty()) {
        fs::create_directories(cache.parent_path());
        std::ofstream out(cache);
        law.save_csv(out);
    }
    return law;
}

void write_ensemble(const sim::PathEnsemble& ens, const fs::path& dir) {
    fs::create_directories(dir);
    std::ostringstream csv;
    sim::write_paths_csv(ens, csv);
    const std::string bytes = csv.str();
    {
        std::ofstream f(dir / "paths.csv", std::ios::binary);
        f << bytes;
    }
    {
        std::ofstream f(dir / "manifest.json");
        sim::write_manifest_json(ens, sim::fnv1a64(bytes), f);
    }
    std::cout << "wrote " << (dir / "paths.csv").string() << " and manifest.json\n";
}

struct Options {
    double alpha = 0.5;
    double beta = 1.0;
    std::string grid = "1:4:8";
    std::string generator = "factorization";
    std::size_t n_paths = 100;
    std::size_t n_steps = 1024;
    std::uint64_t seed = kDefaultSeed;
    std::string out = ".";
    long t_int = 2;
    std::string m_list = "10,100,1000,10000";
    std::string format = "matrix";
    std::string check = "all";
    double theta = 1.0;
    double sigma = 1.0;
    double y0 = 0.0;
    double s_eigen = 0.4;
};

std::vector<long> parse_longs(const std::string& csv) {
    std::vector<long> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) out.push_back(std::stol(tok));
    return out;
}

int cmd_simulate(const Options& o) {
    const Alpha alpha(o.alpha);
    const Beta beta(o.beta);
    const hfbm::TimeGrid grid = hfbm::TimeGrid::parse(o.grid);
    sim::PathEnsemble ens = [&] {
        if (o.generator == "factorization") return sim::paths_factorization(alpha, grid, o.n_paths, o.seed);
        if (o.generator == "kernel")
            return sim::paths_kernel_quadrature(alpha, grid, o.n_steps, o.n_paths, o.seed);
        if (o.generator == "lhm") {
            if (beta.value() == 1.0) return sim::paths_lhm(alpha, beta, nullptr, grid, o.n_paths, o.seed);
            leroy::MixingLaw law = obtain_mixing_law(beta);
            return sim::paths_lhm(alpha, beta, &law, grid, o.n_paths, o.seed);
        }
        throw std::domain_error("unknown generator: " + o.generator +
                                " (expected factorization|kernel|lhm)");
    }();
    write_ensemble(ens, o.out);
    return 0;
}

int cmd_cov(const Options& o) {
    const Alpha alpha(o.alpha);
    const hfbm::TimeGrid grid = hfbm::TimeGrid::parse(o.grid);
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / "cov.csv", std::ios::binary);
    f << "# cov,alpha=" << fmt(o.alpha) << ",grid=" << o.grid << ",format=" << o.format << "\n";
    if (o.format == "matrix") {
        hfbm::CovarianceMatrix cm = hfbm::covariance_matrix(alpha, grid);
        for (long i = 0; i < cm.entries.rows(); ++i) {
            for (long j = 0; j < cm.entries.cols(); ++j)
                f << (j ? "," : "") << fmt(cm.entries(i, j));
            f << "\n";
        }
    } else if (o.format == "pairs") {
        f << "s,t,cov\n";
        for (double s : grid.times())
            for (double t : grid.times())
                f << fmt(s) << "," << fmt(t) << "," << fmt(hfbm::covariance(alpha, s, t)) << "\n";
    } else {
        throw std::domain_error("unknown cov format: " + o.format + " (expected matrix|pairs)");
    }
    std::cout << "wrote " << (fs::path(o.out) / "cov.csv").string() << "\n";
    return 0;
}

int cmd_memory(const Options& o) {
    const Alpha alpha(o.alpha);
    const std::vector<long> ms = parse_longs(o.m_list);
    hfbm::MemoryRatioReport rep = hfbm::memory_ratios(alpha, o.t_int, ms);
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / "memory.csv", std::ios::binary);
    f << "# memory,alpha=" << fmt(o.alpha) << ",t=" << o.t_int << ",m=" << o.m_list
      << ",numerator_constant=" << fmt(rep.numerator_constant) << "\n";
    f << "m,delta\n";
    for (std::size_t i = 0; i < ms.size(); ++i) f << ms[i] << "," << fmt(rep.ratios[i]) << "\n";
    std::cout << "wrote " << (fs::path(o.out) / "memory.csv").string() << "\n";
    return 0;
}

int cmd_leroy(const Options& o) {
    const Beta beta(o.beta);
    if (beta.value() == 1.0)
        throw std::domain_error("leroy: the mixing law is a point mass at 1 for beta = 1; "
                                "need beta in (0,1)");
    leroy::MixingLaw law = obtain_mixing_law(beta);
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / "leroy_density.csv", std::ios::binary);
    law.save_csv(f);
    std::cout << "wrote " << (fs::path(o.out) / "leroy_density.csv").string() << "\n";
    return 0;
}

int cmd_ou(const Options& o) {
    const Alpha alpha(o.alpha);
    const Beta beta(o.beta);
    const hfbm::TimeGrid grid = hfbm::TimeGrid::parse(o.grid);
    sim::OUParams ou{o.theta, o.sigma, o.y0};
    sim::PathEnsemble ens = [&] {
        if (beta.value() == 1.0) return sim::paths_ou(alpha, beta, nullptr, ou, grid, o.n_paths, o.seed);
        leroy::MixingLaw law = obtain_mixing_law(beta);
        return sim::paths_ou(alpha, beta, &law, ou, grid, o.n_paths, o.seed);
    }();
    write_ensemble(ens, o.out);
    return 0;
}

int cmd_verify(const Options& o) {
    const Alpha alpha(o.alpha);
    const Beta beta(o.beta);
    std::vector<verify::CheckReport> reports;
    auto want = [&](const char* name) { return o.check == "all" || o.check == name; };
    if (want("pde"))
        reports.push_back(verify::check_pde_charfn(alpha, beta, o.theta, linspace(0.1, 3.0, 25)));
    if (want("eigenfunction"))
        reports.push_back(verify::check_eigenfunction(beta, o.s_eigen, linspace(0.25, 2.5, 10)));
    if (want("stransform")) {
        hadamard::ScalarFunction xi;
        xi.value = [](double x) { return std::exp(-2.0 * (x - 1.5) * (x - 1.5)); };
        xi.tag = hadamard::Smoothness::smooth_decaying;
        reports.push_back(verify::check_stransform_identity(alpha, xi, linspace(0.5, 3.0, 11)));
    }
    if (want("memory"))
        reports.push_back(verify::check_memory_trend(alpha, o.t_int, parse_longs(o.m_list)));
    if (want("sup"))
        reports.push_back(verify::check_sup_inequality(alpha, 1.0, {0.5, 1.0, 1.5}, o.n_paths,
                                                       std::min<std::size_t>(o.n_steps, 1024),
                                                       o.seed));
    if (reports.empty())
        throw std::domain_error("unknown check: " + o.check +
                                " (expected all|pde|eigenfunction|stransform|memory|sup)");
    nlohmann::json arr = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& r : reports) {
        arr.push_back(r.to_json());
        all_pass = all_pass && r.pass;
        std::printf("[%s] %-22s residual=%.3e tolerance=%.3e (%.0f ms)\n",
                    r.pass ? "PASS" : "FAIL", r.name.c_str(), r.residual, r.tolerance,
                    r.runtime_ms);
    }
    fs::create_directories(o.out);
    std::ofstream f(fs::path(o.out) / "verify.json");
    f << arr.dump(2) << "\n";
    std::cout << "wrote " << (fs::path(o.out) / "verify.json").string() << "\n";
    return all_pass ? 0 : 2;
}

}  // namespace

int run(int argc, char** argv) {
    CLI::App app{"Hadamard / Le Roy stochastic process toolkit"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c, bool with_beta = true) {
        c->add_option("--alpha", o.alpha, "Hadamard order in (0,2)");
        if (with_beta) c->add_option("--beta", o.beta, "Le Roy order in (0,1]");
        c->add_option("--seed", o.seed, "RNG seed (default 12345, fixed)");
        c->add_option("--out", o.out, "output directory");
    };

    CLI::App* sim_cmd = app.add_subcommand("simulate", "generate sample paths");
    add_common(sim_cmd);
    sim_cmd->add_option("--generator", o.generator, "factorization|kernel|lhm");
    sim_cmd->add_option("--grid", o.grid, "time grid start:stop:count[:geo]");
    sim_cmd->add_option("--n-paths", o.n_paths, "number of paths");
    sim_cmd->add_option("--n-steps", o.n_steps, "partition size (kernel generator)");

    CLI::App* cov_cmd = app.add_subcommand("cov", "covariance matrix / pairwise table");
    add_common(cov_cmd, false);
    cov_cmd->add_option("--grid", o.grid, "time grid start:stop:count[:geo]");
    cov_cmd->add_option("--format", o.format, "matrix|pairs");

    CLI::App* mem_cmd = app.add_subcommand("memory", "block-variance memory ratios");
    add_common(mem_cmd, false);
    mem_cmd->add_option("--t", o.t_int, "block horizon t >= 2");
    mem_cmd->add_option("--m", o.m_list, "comma-separated m values");

    CLI::App* ler_cmd = app.add_subcommand("leroy", "build/cache the Le Roy mixing law");
    add_common(ler_cmd);

    CLI::App* ver_cmd = app.add_subcommand("verify", "run verification checks");
    add_common(ver_cmd);
    ver_cmd->add_option("--check", o.check, "all|pde|eigenfunction|stransform|memory|sup");
    ver_cmd->add_option("--theta", o.theta, "Fourier variable for the pde check");
    ver_cmd->add_option("--s", o.s_eigen, "eigenfunction scale");
    ver_cmd->add_option("--t", o.t_int, "memory horizon");
    ver_cmd->add_option("--m", o.m_list, "memory m values");
    ver_cmd->add_option("--n-paths", o.n_paths, "MC paths for the sup check")->default_val(20000);
    ver_cmd->add_option("--n-steps", o.n_steps, "MC steps for the sup check")->default_val(512);

    CLI::App* ou_cmd = app.add_subcommand("ou", "LH-Ornstein-Uhlenbeck ensemble");
    add_common(ou_cmd);
    ou_cmd->add_option("--grid", o.grid, "output grid start:stop:count[:geo]");
    ou_cmd->add_option("--n-paths", o.n_paths, "number of paths");
    ou_cmd->add_option("--theta", o.theta, "mean reversion > 0");
    ou_cmd->add_option("--sigma", o.sigma, "noise scale");
    ou_cmd->add_option("--y0", o.y0, "initial value");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (sim_cmd->parsed()) return cmd_simulate(o);
        if (cov_cmd->parsed()) return cmd_cov(o);
        if (mem_cmd->parsed()) return cmd_memory(o);
        if (ler_cmd->parsed()) return cmd_leroy(o);
        if (ver_cmd->parsed()) return cmd_verify(o);
        if (ou_cmd->parsed()) return cmd_ou(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace hlrs::cli
