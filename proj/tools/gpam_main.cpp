// gpam: Laplace-method pipeline for the 2D generalised parabolic Anderson
// model with small spatial white noise. Subcommands: simulate, minimize,
// expand, compare, tails.

#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpam/config.hpp"
#include "gpam/io.hpp"

using namespace gpam;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CliState {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    int jobs = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

RunConfig resolve_config(const CliState& st) {
    RunConfig cfg = st.config_path.empty() ? default_config() : load_config(st.config_path);
    for (const std::string& kv : st.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
        apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (st.seed_set) cfg.noise_seed = st.seed;
    return cfg;
}

std::string out_path(const CliState& st, const std::string& name) {
    std::filesystem::create_directories(st.out_dir);
    return (std::filesystem::path(st.out_dir) / name).string();
}

McOptions mc_options(const RunConfig& cfg, const CliState& st) {
    return McOptions{cfg.mc_samples, cfg.noise_seed, st.jobs};
}

double seconds_since(const std::chrono::steady_clock::time_point& t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json minimizer_to_json(const MinimizerResult& res, const std::string& h_star_file) {
    json j;
    j["value"] = res.value;
    j["grad_norm"] = res.grad_norm;
    j["iterations"] = res.iterations;
    j["converged"] = res.converged;
    j["hessian_min_quotient"] = res.hessian_min_quotient;
    j["probe_quotients"] = res.probe_quotients;
    j["h_star_file"] = h_star_file;
    return j;
}

MinimizerResult run_minimizer(const RunConfig& cfg, const SolveContext& ctx, const Functional& F) {
    MinimizerResult res =
        minimize(F, ctx, CMFunction(ctx.grid), {cfg.minimizer_tol, cfg.minimizer_max_iter, 2});
    if (!res.converged) {
        std::cerr << "minimizer did not converge after " << res.iterations
                  << " iterations (grad_norm=" << res.grad_norm << ")\n";
        throw std::domain_error("minimizer non-convergence");
    }
    res.probe_quotients = nondegeneracy_probe(F, ctx, res.h_star);
    res.hessian_min_quotient = *std::min_element(res.probe_quotients.begin(),
                                                 res.probe_quotients.end());
    return res;
}

int cmd_simulate(const CliState& st) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig cfg = resolve_config(st);
    const SolveContext ctx = cfg.make_solve_context();
    const NoiseRealization xi = sample_white_noise(ctx.grid, cfg.noise_seed);
    const Trajectory traj = solve_shifted(ctx, CMFunction(ctx.grid), cfg.sim_eps, xi);

    const std::string bin = out_path(st, "traj.bin");
    const std::string csv = out_path(st, "final.csv");
    write_trajectory_bin(bin, traj, ctx.grid.n, ctx.T);
    if (!traj.snaps.empty()) write_field_csv(csv, traj.terminal());

    write_manifest(out_path(st, "manifest_simulate.json"), cfg, "simulate",
                   {{"trajectory", bin},
                    {"final_csv", csv},
                    {"exploded", traj.exploded ? "true" : "false"}},
                   seconds_since(t0));
    if (traj.exploded) std::cerr << "trajectory exploded at t=" << traj.explode_time << "\n";
    return 0;
}

int cmd_minimize(const CliState& st) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig cfg = resolve_config(st);
    const SolveContext ctx = cfg.make_solve_context();
    const auto F = cfg.make_functional(ctx.grid);
    const MinimizerResult res = run_minimizer(cfg, ctx, *F);

    const std::string h_csv = out_path(st, "h_star.csv");
    write_field_csv(h_csv, res.h_star);
    atomic_write_text(out_path(st, "minimize.json"), minimizer_to_json(res, h_csv).dump(2) + "\n");
    write_manifest(out_path(st, "manifest_minimize.json"), cfg, "minimize",
                   {{"result", out_path(st, "minimize.json")}, {"h_star", h_csv}},
                   seconds_since(t0));
    return 0;
}

int cmd_expand(const CliState& st) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig cfg = resolve_config(st);
    const SolveContext ctx = cfg.make_solve_context();
    const auto F = cfg.make_functional(ctx.grid);
    const MinimizerResult min = run_minimizer(cfg, ctx, *F);
    const CoeffResult coeff = mc_coeff(*F, ctx, min.h_star, cfg.expansion_N, mc_options(cfg, st));

    json j;
    j["objective"] = min.value;
    j["N"] = cfg.expansion_N;
    j["samples"] = coeff.samples;
    j["a"] = coeff.a;
    j["a_se"] = coeff.a_se;
    atomic_write_text(out_path(st, "expand.json"), j.dump(2) + "\n");
    write_manifest(out_path(st, "manifest_expand.json"), cfg, "expand",
                   {{"result", out_path(st, "expand.json")}}, seconds_since(t0));
    return 0;
}

int cmd_compare(const CliState& st) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig cfg = resolve_config(st);
    const SolveContext ctx = cfg.make_solve_context();
    const auto F = cfg.make_functional(ctx.grid);
    const MinimizerResult min = run_minimizer(cfg, ctx, *F);
    const ExpansionReport rep = expansion_compare(*F, ctx, min.h_star, cfg.expansion_eps_list,
                                                  cfg.expansion_N, mc_options(cfg, st));

    std::ostringstream csv;
    csv.precision(17);
    csv << "eps,J_direct,SE_direct,J_shifted,SE_shifted,expansion,gap,gap_SE\n";
    for (const auto& r : rep.rows)
        csv << r.eps << ',' << r.J_direct << ',' << r.se_direct << ',' << r.J_shifted << ','
            << r.se_shifted << ',' << r.expansion << ',' << r.gap << ',' << r.gap_se << '\n';
    atomic_write_text(out_path(st, "compare.csv"), csv.str());

    json j;
    j["objective"] = rep.objective;
    j["a"] = rep.a;
    j["a_se"] = rep.a_se;
    j["samples"] = rep.samples;
    j["seed"] = rep.seed;
    for (const auto& r : rep.rows) {
        json row;
        row["eps"] = r.eps;
        row["J_direct"] = r.J_direct;
        row["SE_direct"] = r.se_direct;
        row["J_shifted"] = r.J_shifted;
        row["SE_shifted"] = r.se_shifted;
        row["expansion"] = r.expansion;
        row["gap"] = r.gap;
        row["gap_SE"] = r.gap_se;
        row["exploded"] = r.exploded;
        j["rows"].push_back(row);
    }
    atomic_write_text(out_path(st, "compare.json"), j.dump(2) + "\n");
    write_manifest(out_path(st, "manifest_compare.json"), cfg, "compare",
                   {{"csv", out_path(st, "compare.csv")}, {"json", out_path(st, "compare.json")}},
                   seconds_since(t0));
    return 0;
}

int cmd_tails(const CliState& st) {
    const auto t0 = std::chrono::steady_clock::now();
    const RunConfig cfg = resolve_config(st);
    const SolveContext ctx = cfg.make_solve_context();
    const auto F = cfg.make_functional(ctx.grid);
    const TailDiagnostic diag = fernique_tail(ctx, mc_options(cfg, st), cfg.norm_options());
    const MinimizerResult min = run_minimizer(cfg, ctx, *F);
    const QIntegrability qint = q_integrability(*F, ctx, min.h_star, 1.1, mc_options(cfg, st));

    std::ostringstream csv;
    csv.precision(17);
    csv << "r,log_survival\n";
    for (std::size_t i = 0; i < diag.radii.size(); ++i)
        csv << diag.radii[i] << ',' << diag.log_survival[i] << '\n';
    atomic_write_text(out_path(st, "tails.csv"), csv.str());

    json j;
    j["gaussian_coeff"] = diag.gaussian_coeff;
    j["gaussian_coeff_se"] = diag.gaussian_coeff_se;
    j["chi_probe"] = diag.chi_probe;
    j["exp_moment"] = diag.exp_moment.mean;
    j["exp_moment_se"] = diag.exp_moment.se;
    j["q_exp_moment_p"] = qint.p;
    j["q_exp_moment_half"] = qint.half.mean;
    j["q_exp_moment_full"] = qint.full.mean;
    j["q_exp_moment_stable"] = qint.stable;
    atomic_write_text(out_path(st, "tails.json"), j.dump(2) + "\n");
    write_manifest(out_path(st, "manifest_tails.json"), cfg, "tails",
                   {{"csv", out_path(st, "tails.csv")}, {"json", out_path(st, "tails.json")}},
                   seconds_since(t0));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Laplace asymptotics pipeline for 2D gPAM with small spatial white noise"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    CliState st;
    app.add_option("--config", st.config_path, "JSON config file");
    app.add_option("--set", st.overrides, "override config key: --set key=value")->take_all();
    app.add_option("--jobs", st.jobs, "worker threads (0 = OpenMP default)");
    app.add_option("--out", st.out_dir, "output directory");
    auto* seed_opt = app.add_option("--seed", st.seed, "root seed (overrides noise.seed)");

    auto* simulate = app.add_subcommand("simulate", "one shifted solve, exports the trajectory");
    auto* minimizecmd = app.add_subcommand("minimize", "find the Cameron-Martin minimiser h*");
    auto* expand = app.add_subcommand("expand", "Monte Carlo expansion coefficients a_0..a_N");
    auto* compare = app.add_subcommand("compare", "direct vs shifted vs expansion per eps");
    auto* tails = app.add_subcommand("tails", "model-norm and quadratic-term tail diagnostics");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : kExitConfig;
    }
    st.seed_set = seed_opt->count() > 0;

    try {
        if (simulate->parsed()) return cmd_simulate(st);
        if (minimizecmd->parsed()) return cmd_minimize(st);
        if (expand->parsed()) return cmd_expand(st);
        if (compare->parsed()) return cmd_compare(st);
        if (tails->parsed()) return cmd_tails(st);
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "numerical fault: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
