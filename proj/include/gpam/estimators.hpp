#pragma once

#include "gpam/minimizer.hpp"

namespace gpam {

struct McOptions {
    int samples = 1000;
    std::uint64_t seed = 1;
    int jobs = 0; // 0 = OpenMP default
};

struct McResult {
    double mean = 0.0;
    double se = 0.0;
    int samples = 0;
    int exploded = 0;
};

// per-sample noise seeds are hash64(opt.seed, i); results are reduced in
// sample order, so any worker count gives bit-identical output
std::vector<std::vector<double>> sample_table(int nsamples, int jobs, int width,
                                              const std::function<std::vector<double>(int, std::uint64_t)>& fn,
                                              std::uint64_t seed);

McResult mean_se(const std::vector<double>& values);

// J(eps) = E[exp(-F(u_hat^eps)/eps^2); non-exploded]
McResult mc_direct(const Functional& F, const SolveContext& ctx, double eps, const McOptions& opt);

struct ShiftedResult {
    double J = 0.0, J_se = 0.0;
    double e_factor = 0.0, e_factor_se = 0.0; // E[exp(-F_tilde/eps^2); indicator]
    double objective = 0.0;                   // script-F(h*) entering the prefactor
    int samples = 0, exploded = 0, outside_indicator = 0;
};

// Cameron-Martin shifted estimator with F_tilde = F(u^eps_h) - F(w_h) + eps*xi(h);
// rho = infinity disables the model-norm indicator
ShiftedResult mc_shifted(const Functional& F, const SolveContext& ctx, const CMFunction& h_star,
                         double eps, double rho, const McOptions& opt);

struct CoeffResult {
    std::vector<double> a, a_se; // a[m], m = 0..N
    int samples = 0;
};

// a_m = E[exp(-Q_hat/2) W_m] from per-sample hierarchies of order N+2
CoeffResult mc_coeff(const Functional& F, const SolveContext& ctx, const CMFunction& h_star, int N,
                     const McOptions& opt);

struct EpsRow {
    double eps = 0.0;
    double J_direct = 0.0, se_direct = 0.0;
    double J_shifted = 0.0, se_shifted = 0.0;
    double expansion = 0.0;  // exp(-F(h*)/eps^2) * sum a_m eps^m
    double gap = 0.0, gap_se = 0.0; // |e^{F/eps^2} J_direct - sum a_m eps^m|
    int exploded = 0;
};

struct ExpansionReport {
    double objective = 0.0; // script-F(h*)
    std::vector<double> a, a_se;
    std::vector<EpsRow> rows;
    int samples = 0;
    std::uint64_t seed = 0;
};

// common random numbers across the eps column
ExpansionReport expansion_compare(const Functional& F, const SolveContext& ctx,
                                  const CMFunction& h_star, const std::vector<double>& eps_list,
                                  int N, const McOptions& opt);

struct VaradhanRow {
    double eps = 0.0;
    double value = 0.0; // eps^2 log J(eps) + script-F(h*)
};
std::vector<VaradhanRow> varadhan_check(const Functional& F, const SolveContext& ctx,
                                        const CMFunction& h_star,
                                        const std::vector<double>& eps_list, const McOptions& opt);

struct TailDiagnostic {
    std::vector<double> radii;
    std::vector<double> log_survival;
    double gaussian_coeff = 0.0;    // slope of -log P(X>r) against r^2
    double gaussian_coeff_se = 0.0;
    McResult exp_moment;            // E[exp(chi_probe * X^2)] at a small fixed chi_probe
    double chi_probe = 0.0;
};

// empirical tails of the approximate homogeneous model norm
TailDiagnostic fernique_tail(const SolveContext& ctx, const McOptions& opt,
                             const ModelNormOptions& norm_opt = {});

struct QIntegrability {
    McResult half, full;
    double p = 0.0;
    bool stable = false; // half and full estimates within 3 combined SE
};

// exp-moment E[(exp(-Q_hat/2))^p], stability under doubling the sample count
QIntegrability q_integrability(const Functional& F, const SolveContext& ctx,
                               const CMFunction& h_star, double p, const McOptions& opt);

} // namespace gpam
