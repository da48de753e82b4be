#pragma once

#include "gpam/functional.hpp"

namespace gpam {

// F(w_h) + ||h||^2/2
double total_objective(const Functional& F, const SolveContext& ctx, const CMFunction& h);

// gradient of the objective in H: h + r_h with <r_h,k> = DF|_{w_h}(v_{h,k});
// assembled by one backward adjoint solve for terminal-form functionals,
// by finite differences over low Fourier modes otherwise
CMFunction objective_gradient(const Functional& F, const SolveContext& ctx, const CMFunction& h);

struct MinimizerOptions {
    double tol = 1e-6; // relative gradient tolerance
    int max_iter = 200;
    int fd_mode_cutoff = 2; // fallback gradient: modes with |k|_inf <= cutoff
};

struct IterationRecord {
    int iter = 0;
    double value = 0.0;
    double grad_norm = 0.0;
    double step = 0.0;
};

struct MinimizerResult {
    CMFunction h_star;
    double value = 0.0;
    double grad_norm = 0.0;
    int iterations = 0;
    bool converged = false;
    double hessian_min_quotient = 0.0; // filled by nondegeneracy_probe
    std::vector<double> probe_quotients;
    std::vector<IterationRecord> log;
};

// Barzilai-Borwein descent in the H inner product with monotone backtracking
MinimizerResult minimize(const Functional& F, const SolveContext& ctx, const CMFunction& h0,
                         const MinimizerOptions& opts = {});

// min over probes k of (Q_{h*}(L(k)) + ||k||^2)/||k||^2; probes are the
// Fourier modes |k| <= 2 plus `random_probes` seeded random fields
std::vector<double> nondegeneracy_probe(const Functional& F, const SolveContext& ctx,
                                        const CMFunction& h_star, int random_probes = 8,
                                        std::uint64_t seed = 7);

} // namespace gpam
