// covertnet: simulator + optimizer for uplink multi-user covert communication
// with spatially heterogeneous cooperating users.
//
// Subcommands map to the experiment families described in the README:
//   dep-curve, min-dep, kmin-sweep, sensitivity, optimize, compare-baseline,
//   validate.
// Exit codes: 0 success, 1 error, 2 infeasible optimization result.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "covertnet/channel.hpp"
#include "covertnet/cooperation.hpp"
#include "covertnet/csvio.hpp"
#include "covertnet/detection.hpp"
#include "covertnet/montecarlo.hpp"
#include "covertnet/optimizer.hpp"
#include "covertnet/rng.hpp"
#include "covertnet/scenario.hpp"
#include "covertnet/validation.hpp"

namespace fs = std::filesystem;
using namespace covertnet;

namespace {

struct CommonOpts {
    std::string scenario_path = "configs/adverse.json";
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::size_t trials = 10000;
    std::size_t threads = 1;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--scenario", c.scenario_path, "scenario config (JSON)");
    cmd->add_option("--out", c.out_dir, "output directory for CSV artifacts");
    cmd->add_option("--seed", c.seed, "master seed (default: COVERTNET_SEED, then the scenario seed)");
    cmd->add_option("--trials", c.trials, "Monte-Carlo trials");
    cmd->add_option("--threads", c.threads, "worker cap for Monte-Carlo loops");
}

std::uint64_t resolve_seed(const CommonOpts& c, const Scenario& sc) {
    if (c.seed) return *c.seed;
    if (const char* env = std::getenv("COVERTNET_SEED")) return std::strtoull(env, nullptr, 10);
    return sc.seed;
}

// Every artifact gets a sidecar manifest so a CSV is reproducible on its own.
void write_manifest(const fs::path& out_dir, const std::string& command, const CommonOpts& c,
                    std::uint64_t seed, const nlohmann::json& params,
                    const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["scenario"] = c.scenario_path;
    j["seed"] = seed;
    j["trials"] = c.trials;
    j["threads"] = c.threads;
    j["params"] = params;
    j["outputs"] = outputs;
    std::ofstream out(out_dir / (command + ".manifest.json"));
    out << j.dump(2) << "\n";
}

int run_dep_curve(const CommonOpts& c, double p_a_mw, std::size_t k, const std::string& selection) {
    const Scenario sc = load_scenario(c.scenario_path);
    const FadingMap fm = fading_map(sc);
    const std::uint64_t seed = resolve_seed(c, sc);
    const SelectionMode mode =
        (selection == "uniform") ? SelectionMode::kUniform : SelectionMode::kRatio;

    const DepCurve curve = empirical_dep_curve(fm, sc.constants, p_a_mw / 1000.0, k, c.trials, seed,
                                               mode, {512, c.threads});
    fs::create_directories(c.out_dir);
    CsvWriter csv(fs::path(c.out_dir) / "dep_curve.csv", {"gamma", "zeta_emp", "zeta_cf"});
    double sup = 0.0;
    for (std::size_t i = 0; i < curve.gamma_grid.size(); ++i) {
        csv.row({CsvWriter::num(curve.gamma_grid[i]), CsvWriter::num(curve.zeta_emp[i]),
                 CsvWriter::num(curve.zeta_cf[i])});
        sup = std::max(sup, std::abs(curve.zeta_emp[i] - curve.zeta_cf[i]));
    }
    write_manifest(c.out_dir, "dep-curve", c, seed,
                   {{"p_a_mw", p_a_mw}, {"k", k}, {"selection", selection}}, {"dep_curve.csv"});

    const DetectionParams dp = detection_params(p_a_mw / 1000.0, fm, k, sc.constants);
    std::cout << "dep-curve: K=" << k << " P_a=" << p_a_mw << "mW sup|emp-cf|=" << sup
              << " gamma*=" << optimal_gamma(dp) << " zeta_min=" << min_dep(dp).zeta_min << "\n";
    return 0;
}

int run_min_dep(const CommonOpts& c, double p_a_mw, std::size_t k) {
    const Scenario sc = load_scenario(c.scenario_path);
    const FadingMap fm = fading_map(sc);
    const DetectionParams dp = detection_params(p_a_mw / 1000.0, fm, k, sc.constants);
    const MinDepResult md = min_dep(dp);

    fs::create_directories(c.out_dir);
    CsvWriter csv(fs::path(c.out_dir) / "min_dep.csv",
                  {"k", "pa_mw", "gamma_star", "zeta_min", "degenerate"});
    csv.row({CsvWriter::num(k), CsvWriter::num(p_a_mw), CsvWriter::num(optimal_gamma(dp)),
             CsvWriter::num(md.zeta_min), md.degenerate ? "1" : "0"});
    write_manifest(c.out_dir, "min-dep", c, resolve_seed(c, sc), {{"p_a_mw", p_a_mw}, {"k", k}},
                   {"min_dep.csv"});
    std::cout << "min-dep: K=" << k << " P_a=" << p_a_mw << "mW gamma*=" << optimal_gamma(dp)
              << " zeta_min=" << md.zeta_min << (md.degenerate ? " (degenerate)" : "") << "\n";
    return 0;
}

int run_kmin_sweep(const CommonOpts& c, double p_a_mw, double eps_from, double eps_to,
                   std::size_t eps_steps, bool with_empirical) {
    const Scenario sc = load_scenario(c.scenario_path);
    const FadingMap fm = fading_map(sc);
    const std::uint64_t seed = resolve_seed(c, sc);
    const double p_a = p_a_mw / 1000.0;

    double lambda_bar = 0.0;
    for (double l : fm.lambda_mw) lambda_bar += l;
    lambda_bar /= static_cast<double>(fm.user_count());

    fs::create_directories(c.out_dir);
    CsvWriter csv(fs::path(c.out_dir) / "kmin_sweep.csv",
                  {"epsilon", "pa_mw", "kmin_exact", "kmin_asym", "kmin_homog", "kmin_emp"});
    std::string last;
    for (std::size_t i = 0; i < eps_steps; ++i) {
        const double eps = (eps_steps == 1)
                               ? eps_from
                               : eps_from + (eps_to - eps_from) * static_cast<double>(i) /
                                     static_cast<double>(eps_steps - 1);
        const CooperationStats st = cooperation_stats(fm, p_a, eps, sc.constants);
        const KminResult e = k_min_exact(st, fm.user_count());
        const KminResult a = k_min_asymptotic(st, fm.user_count());
        const KminResult h =
            k_min_homogeneous(p_a, fm.lambda_aw, lambda_bar, eps, sc.constants, fm.user_count());
        std::string emp = "";
        if (with_empirical) {
            KminSearchOptions opts;
            opts.confirm_trials = c.trials;
            opts.search_trials = std::max<std::size_t>(c.trials / 5, 200);
            opts.threads = c.threads;
            const EmpiricalKmin ek = empirical_k_min(fm, sc.constants, p_a, eps,
                                                     rng::derive_seed(seed, rng::kOracle, i), opts);
            emp = ek.feasible ? CsvWriter::num(ek.k_min) : "-1";
        }
        csv.row({CsvWriter::num(eps), CsvWriter::num(p_a_mw), CsvWriter::num(e.k_min),
                 CsvWriter::num(a.k_min), CsvWriter::num(h.k_min), emp});
        last = "kmin-sweep: eps=" + CsvWriter::num(eps) + " K_min=" + CsvWriter::num(e.k_min) +
               " feasible=" + (e.feasible ? "true" : "false");
    }
    write_manifest(c.out_dir, "kmin-sweep", c, seed,
                   {{"p_a_mw", p_a_mw},
                    {"eps_from", eps_from},
                    {"eps_to", eps_to},
                    {"eps_steps", eps_steps},
                    {"empirical", with_empirical}},
                   {"kmin_sweep.csv"});
    std::cout << last << "\n";
    return 0;
}

int run_sensitivity(const CommonOpts& c, const std::string& param, double p_a_mw, double epsilon,
                    std::size_t n_seeds) {
    const Scenario sc = load_scenario(c.scenario_path);
    const std::uint64_t seed = resolve_seed(c, sc);

    SweepParam sp;
    std::vector<double> values;
    if (param == "sigma_d") {
        sp = SweepParam::kSigmaD;
        values = {10.0, 45.0, 80.0, 115.0, 150.0};
    } else if (param == "mu_d") {
        sp = SweepParam::kMuD;
        values = {500.0, 550.0, 600.0, 650.0, 700.0};
    } else {
        throw std::invalid_argument("sensitivity --param must be sigma_d or mu_d");
    }
    std::vector<std::uint64_t> seeds;
    for (std::size_t s = 0; s < n_seeds; ++s) seeds.push_back(seed + s);

    SensitivityConfig scfg;
    scfg.alice = sc.alice;
    scfg.bob = sc.bob;
    scfg.willie = sc.willie;
    scfg.p_a = p_a_mw / 1000.0;
    scfg.epsilon = epsilon;
    const auto rows = sensitivity_sweep(sp, values, seeds, scfg, sc.constants);

    fs::create_directories(c.out_dir);
    CsvWriter csv(fs::path(c.out_dir) / "sensitivity.csv",
                  {"param_name", "param_value", "seed", "kmin_exact", "kmin_asym", "kmin_homog"});
    for (const auto& row : rows) {
        csv.row({param, CsvWriter::num(row.value), CsvWriter::num(row.seed),
                 CsvWriter::num(row.exact.k_min), CsvWriter::num(row.asym.k_min),
                 CsvWriter::num(row.homog.k_min)});
    }
    write_manifest(c.out_dir, "sensitivity", c, seed,
                   {{"param", param}, {"p_a_mw", p_a_mw}, {"epsilon", epsilon}, {"seeds", n_seeds}},
                   {"sensitivity.csv"});
    std::cout << "sensitivity: param=" << param << " points=" << values.size()
              << " seeds=" << n_seeds << " -> sensitivity.csv\n";
    return 0;
}

std::string policy_row(CsvWriter& csv, double one_minus_eps, const std::string& policy,
                       const OptimizationResult& res) {
    csv.row({CsvWriter::num(one_minus_eps), policy, CsvWriter::num(res.p_a_star * 1000.0),
             CsvWriter::num(res.k_star), CsvWriter::num(res.rate_star),
             res.feasible ? "1" : "0"});
    return std::string(policy) + " P_a*=" + CsvWriter::num(res.p_a_star * 1000.0) +
           "mW K*=" + CsvWriter::num(res.k_star) + " R*=" + CsvWriter::num(res.rate_star) +
           " feasible=" + (res.feasible ? "true" : "false");
}

int run_optimize(const CommonOpts& c, double epsilon, const std::string& policy) {
    const Scenario sc = load_scenario(c.scenario_path);
    const FadingMap fm = fading_map(sc);
    const std::uint64_t seed = resolve_seed(c, sc);
    const ChannelRealization cr = draw_realization(fm, rng::derive_seed(seed, rng::kRealization, 0));

    const OptimizationResult res = (policy == "baseline") ? baseline_policy(cr, fm, epsilon, sc.constants)
                                                          : piecewise_search(cr, fm, epsilon, sc.constants);
    fs::create_directories(c.out_dir);
    CsvWriter csv(fs::path(c.out_dir) / "compare.csv",
                  {"one_minus_eps", "policy", "pa_star_mw", "k_star", "rate_star", "feasible"});
    const std::string summary = policy_row(csv, 1.0 - epsilon, policy, res);
    write_manifest(c.out_dir, "optimize", c, seed, {{"epsilon", epsilon}, {"policy", policy}},
                   {"compare.csv"});
    std::cout << "optimize: " << summary << " tau*=" << res.tau_star << "\n";
    return res.feasible ? 0 : 2;
}

int run_compare_baseline(const CommonOpts& c, double eps_from, double eps_to,
                         std::size_t eps_steps, std::size_t realizations) {
    const Scenario sc = load_scenario(c.scenario_path);
    const FadingMap fm = fading_map(sc);
    const std::uint64_t seed = resolve_seed(c, sc);

    fs::create_directories(c.out_dir);
    CsvWriter csv(fs::path(c.out_dir) / "compare.csv",
                  {"one_minus_eps", "policy", "pa_star_mw", "k_star", "rate_star", "feasible"});
    bool any_feasible = false;
    for (std::size_t i = 0; i < eps_steps; ++i) {
        const double one_minus_eps =
            (eps_steps == 1) ? eps_from
                             : eps_from + (eps_to - eps_from) * static_cast<double>(i) /
                                   static_cast<double>(eps_steps - 1);
        const double eps = 1.0 - one_minus_eps;
        OptimizationResult prop_avg, base_avg;
        double prop_p = 0, prop_k = 0, prop_r = 0, base_p = 0, base_k = 0, base_r = 0;
        bool prop_all = true, base_all = true;
        for (std::size_t t = 0; t < realizations; ++t) {
            // Common random numbers across the stringency grid.
            const ChannelRealization cr =
                draw_realization(fm, rng::derive_seed(seed, rng::kRealization, t));
            const OptimizationResult prop = piecewise_search(cr, fm, eps, sc.constants);
            const OptimizationResult base = baseline_policy(cr, fm, eps, sc.constants);
            prop_all = prop_all && prop.feasible;
            base_all = base_all && base.feasible;
            prop_p += prop.p_a_star;
            prop_k += static_cast<double>(prop.k_star);
            prop_r += prop.rate_star;
            base_p += base.p_a_star;
            base_k += static_cast<double>(base.k_star);
            base_r += base.rate_star;
        }
        const double n = static_cast<double>(realizations);
        prop_avg.p_a_star = prop_p / n;
        prop_avg.k_star = static_cast<std::size_t>(prop_k / n + 0.5);
        prop_avg.rate_star = prop_r / n;
        prop_avg.feasible = prop_all;
        base_avg.p_a_star = base_p / n;
        base_avg.k_star = static_cast<std::size_t>(base_k / n + 0.5);
        base_avg.rate_star = base_r / n;
        base_avg.feasible = base_all;
        policy_row(csv, one_minus_eps, "proposed", prop_avg);
        policy_row(csv, one_minus_eps, "baseline", base_avg);
        any_feasible = any_feasible || prop_all;
    }
    write_manifest(c.out_dir, "compare-baseline", c, seed,
                   {{"eps_from", eps_from},
                    {"eps_to", eps_to},
                    {"eps_steps", eps_steps},
                    {"realizations", realizations}},
                   {"compare.csv"});
    std::cout << "compare-baseline: " << eps_steps << " stringency levels x " << realizations
              << " realizations -> compare.csv\n";
    return any_feasible ? 0 : 2;
}

int run_validate(const CommonOpts& c, const std::string& only, bool quick) {
    ValidationConfig vcfg;
    vcfg.scenario = load_scenario(c.scenario_path);
    vcfg.threads = c.threads;
    vcfg.quick = quick;

    std::vector<CheckResult> results;
    if (only.empty()) {
        results = run_all_validation_checks(vcfg);
    } else {
        results.push_back(run_validation_check(only, vcfg));
    }
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " - " << r.description << "\n"
                  << "       " << r.detail << "\n";
        if (r.passed) ++passed;
    }
    std::cout << "validate: " << passed << "/" << results.size() << " checks passed\n";
    return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covert uplink interference simulator and rate optimizer"};
    app.require_subcommand(1);

    CommonOpts c;
    double p_a_mw = 100.0;
    double epsilon = 0.05;
    std::size_t k = 60;
    std::string selection = "ratio";
    double eps_from = 0.001, eps_to = 0.1;
    std::size_t eps_steps = 10;
    bool with_empirical = false;
    std::string param = "sigma_d";
    std::size_t n_seeds = 10;
    std::string policy = "proposed";
    double cmp_from = 0.90, cmp_to = 0.99;
    std::size_t cmp_steps = 10, realizations = 100;
    std::string only;
    bool quick = false;

    auto* dep = app.add_subcommand("dep-curve", "detection-error curve: simulation vs closed form");
    add_common(dep, c);
    dep->add_option("--p-a-mw", p_a_mw, "Alice transmit power (mW)");
    dep->add_option("--k", k, "cooperator count");
    dep->add_option("--selection", selection, "cooperator selection: ratio|uniform")
        ->check(CLI::IsMember({"ratio", "uniform"}));

    auto* md = app.add_subcommand("min-dep", "closed-form optimal threshold and minimum DEP");
    add_common(md, c);
    md->add_option("--p-a-mw", p_a_mw, "Alice transmit power (mW)");
    md->add_option("--k", k, "cooperator count");

    auto* ks = app.add_subcommand("kmin-sweep", "cooperator requirement vs covertness tolerance");
    add_common(ks, c);
    ks->add_option("--p-a-mw", p_a_mw, "Alice transmit power (mW)");
    ks->add_option("--eps-from", eps_from, "first epsilon");
    ks->add_option("--eps-to", eps_to, "last epsilon");
    ks->add_option("--eps-steps", eps_steps, "number of sweep points");
    ks->add_flag("--empirical", with_empirical, "also search the simulated requirement (slow)");

    auto* sens = app.add_subcommand("sensitivity", "requirement vs geometry spread or mean distance");
    add_common(sens, c);
    sens->add_option("--param", param, "sigma_d|mu_d")->check(CLI::IsMember({"sigma_d", "mu_d"}));
    sens->add_option("--p-a-mw", p_a_mw, "Alice transmit power (mW)");
    sens->add_option("--epsilon", epsilon, "covertness tolerance");
    sens->add_option("--seeds", n_seeds, "topology seeds per sweep point");

    auto* opt = app.add_subcommand("optimize", "maximize the covert rate on one realization");
    add_common(opt, c);
    opt->add_option("--epsilon", epsilon, "covertness tolerance");
    opt->add_option("--policy", policy, "proposed|baseline")
        ->check(CLI::IsMember({"proposed", "baseline"}));

    auto* cmp = app.add_subcommand("compare-baseline", "proposed vs Bob-only policy across stringency");
    add_common(cmp, c);
    cmp->add_option("--eps-from", cmp_from, "first 1-eps");
    cmp->add_option("--eps-to", cmp_to, "last 1-eps");
    cmp->add_option("--eps-steps", cmp_steps, "number of grid points");
    cmp->add_option("--realizations", realizations, "channel realizations per point");

    auto* val = app.add_subcommand("validate", "run the closed-form/oracle validation suite");
    add_common(val, c);
    val->add_option("--only", only, "run a single check by id");
    val->add_flag("--quick", quick, "reduced trial counts for smoke testing");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dep->parsed()) return run_dep_curve(c, p_a_mw, k, selection);
        if (md->parsed()) return run_min_dep(c, p_a_mw, k);
        if (ks->parsed()) return run_kmin_sweep(c, p_a_mw, eps_from, eps_to, eps_steps, with_empirical);
        if (sens->parsed()) return run_sensitivity(c, param, p_a_mw, epsilon, n_seeds);
        if (opt->parsed()) return run_optimize(c, epsilon, policy);
        if (cmp->parsed()) return run_compare_baseline(c, cmp_from, cmp_to, cmp_steps, realizations);
        if (val->parsed()) return run_validate(c, only, quick);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
