#include "gpam/config.hpp"

#include <chrono>
#include <fstream>

#include <json.hpp>

#include "gpam/io.hpp"

namespace gpam {

using nlohmann::json;

namespace {

json to_json_obj(const RunConfig& c) {
    json j;
    j["grid"]["n"] = c.grid_n;
    j["time"]["T"] = c.time_T;
    j["time"]["dt"] = c.time_dt;
    j["noise"]["delta"] = c.noise_delta;
    j["noise"]["seed"] = c.noise_seed;
    j["model"]["g"] = c.model_g;
    j["model"]["u0"] = c.model_u0;
    j["functional"]["kind"] = c.functional_kind;
    j["functional"]["psi"] = c.functional_psi;
    j["functional"]["profile"] = c.functional_profile;
    j["expansion"]["N"] = c.expansion_N;
    j["expansion"]["eps_list"] = c.expansion_eps_list;
    j["sim"]["eps"] = c.sim_eps;
    j["mc"]["samples"] = c.mc_samples;
    j["minimizer"]["tol"] = c.minimizer_tol;
    j["minimizer"]["max_iter"] = c.minimizer_max_iter;
    j["norm"]["scales"] = c.norm_scales;
    j["norm"]["stride"] = c.norm_stride;
    j["norm"]["rho"] = std::isfinite(c.norm_rho) ? json(c.norm_rho) : json("inf");
    j["snapshot_stride"] = c.snapshot_stride;
    return j;
}

double rho_from_json(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw std::invalid_argument("config: norm.rho must be a number or \"inf\"");
    }
    return v.get<double>();
}

void assign_key(RunConfig& c, const std::string& key, const json& v) {
    if (key == "grid.n") c.grid_n = v.get<int>();
    else if (key == "time.T") c.time_T = v.get<double>();
    else if (key == "time.dt") c.time_dt = v.get<double>();
    else if (key == "noise.delta") c.noise_delta = v.get<double>();
    else if (key == "noise.seed") c.noise_seed = v.get<std::uint64_t>();
    else if (key == "model.g") c.model_g = v.get<std::string>();
    else if (key == "model.u0") c.model_u0 = v.get<std::string>();
    else if (key == "functional.kind") c.functional_kind = v.get<std::string>();
    else if (key == "functional.psi") c.functional_psi = v.get<std::string>();
    else if (key == "functional.profile") c.functional_profile = v.get<std::string>();
    else if (key == "expansion.N") c.expansion_N = v.get<int>();
    else if (key == "expansion.eps_list") c.expansion_eps_list = v.get<std::vector<double>>();
    else if (key == "sim.eps") c.sim_eps = v.get<double>();
    else if (key == "mc.samples") c.mc_samples = v.get<int>();
    else if (key == "minimizer.tol") c.minimizer_tol = v.get<double>();
    else if (key == "minimizer.max_iter") c.minimizer_max_iter = v.get<int>();
    else if (key == "norm.scales") c.norm_scales = v.get<int>();
    else if (key == "norm.stride") c.norm_stride = v.get<int>();
    else if (key == "norm.rho") c.norm_rho = rho_from_json(v);
    else if (key == "snapshot_stride") c.snapshot_stride = v.get<int>();
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void walk(RunConfig& c, const json& j, const std::string& prefix) {
    for (const auto& [k, v] : j.items()) {
        const std::string key = prefix.empty() ? k : prefix + "." + k;
        if (v.is_object())
            walk(c, v, key);
        else
            assign_key(c, key, v);
    }
}

void validate(const RunConfig& c) {
    if (c.grid_n <= 0) throw std::invalid_argument("config: grid.n must be positive");
    if (c.time_T <= 0.0 || c.time_dt <= 0.0)
        throw std::invalid_argument("config: time.T and time.dt must be positive");
    const double ratio = c.time_T / c.time_dt;
    if (std::abs(ratio - std::llround(ratio)) > 1e-9 * ratio)
        throw std::invalid_argument("config: time.dt must divide time.T");
    if (c.functional_kind != "terminal")
        throw std::invalid_argument("config: functional.kind must be 'terminal'");
    if (c.expansion_N < 0 || c.expansion_N > 10)
        throw std::invalid_argument("config: expansion.N outside [0,10]");
    if (c.mc_samples < 2) throw std::invalid_argument("config: mc.samples must be >= 2");
}

} // namespace

int RunConfig::steps() const { return static_cast<int>(std::llround(time_T / time_dt)); }

SolveContext RunConfig::make_solve_context() const {
    validate(*this);
    const TorusGrid g(grid_n);
    SolveContext ctx = make_context(g, time_T, steps(), MollifierSpec{noise_delta},
                                    builtin_nonlinearity(model_g), parse_field_spec(g, model_u0));
    ctx.snapshot_stride = snapshot_stride;
    return ctx;
}

std::shared_ptr<Functional> RunConfig::make_functional(const TorusGrid& g) const {
    return builtin_functional(functional_profile, parse_field_spec(g, functional_psi));
}

ModelNormOptions RunConfig::norm_options() const {
    return ModelNormOptions{norm_scales, norm_stride, 0.05};
}

std::string RunConfig::to_json() const { return to_json_obj(*this).dump(2); }

RunConfig default_config() { return RunConfig{}; }

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: parse error: ") + e.what());
    }
    RunConfig c;
    walk(c, j, "");
    validate(c);
    return c;
}

void apply_override(RunConfig& cfg, const std::string& key, const std::string& value) {
    json v;
    try {
        v = json::parse(value);
    } catch (const json::parse_error&) {
        v = value; // bare strings pass through
    }
    assign_key(cfg, key, v);
    validate(cfg);
}

void write_manifest(const std::string& path, const RunConfig& cfg, const std::string& command,
                    const std::vector<ManifestEntry>& outputs, double wall_seconds) {
    json j;
    j["command"] = command;
    j["version"] = "0.1.0";
    j["wall_seconds"] = wall_seconds;
    j["config"] = json::parse(cfg.to_json());
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    j["unix_time"] = static_cast<std::int64_t>(now);
    for (const auto& e : outputs) j["outputs"][e.name] = e.value;
    atomic_write_text(path, j.dump(2) + "\n");
}

} // namespace gpam
