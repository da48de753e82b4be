#pragma once

#include <string>

#include "gpam/estimators.hpp"

namespace gpam {

// Flat run configuration; every field has a default, unknown keys are
// rejected at load time. The JSON layout groups keys by dotted sections
// (grid.n, time.dt, ...) mirroring the accessors here.
struct RunConfig {
    int grid_n = 64;
    double time_T = 0.5;
    double time_dt = 0.5 / 1024.0;
    double noise_delta = 0.1;
    std::uint64_t noise_seed = 1;
    std::string model_g = "cos";
    std::string model_u0 = "zero";
    std::string functional_kind = "terminal";
    std::string functional_psi = "cos:1,0,1.0";
    std::string functional_profile = "arctan";
    int expansion_N = 2;
    std::vector<double> expansion_eps_list = {0.4, 0.2, 0.1, 0.05};
    double sim_eps = 0.1;
    int mc_samples = 1000;
    double minimizer_tol = 1e-6;
    int minimizer_max_iter = 200;
    int norm_scales = 4;
    int norm_stride = 4;
    double norm_rho = std::numeric_limits<double>::infinity(); // "inf" disables the indicator
    int snapshot_stride = 64;

    int steps() const;
    SolveContext make_solve_context() const;
    std::shared_ptr<Functional> make_functional(const TorusGrid& g) const;
    ModelNormOptions norm_options() const;
    std::string to_json() const; // canonical snapshot for manifests
};

// throws std::invalid_argument naming the offending key
RunConfig load_config(const std::string& path);
RunConfig default_config();
void apply_override(RunConfig& cfg, const std::string& key, const std::string& value);

struct ManifestEntry {
    std::string name;
    std::string value;
};

// run manifest written atomically next to the outputs
void write_manifest(const std::string& path, const RunConfig& cfg, const std::string& command,
                    const std::vector<ManifestEntry>& outputs, double wall_seconds);

} // namespace gpam
