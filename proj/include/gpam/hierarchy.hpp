#pragma once

#include <span>

#include "gpam/solver.hpp"

namespace gpam {

// Taylor terms u_hat^(m) = d^m/d eps^m |_0 of the shifted solution, solved
// through their linear PDEs along the skeleton. The whole hierarchy is
// advanced jointly in time; terms are m-homogeneous under the dilation
// (driver, c) -> (eps*driver, eps^2*c) exactly at the discrete level.
struct TaylorHierarchy {
    int order = 0;
    Trajectory skeleton;                 // w_h
    std::vector<Trajectory> terms;       // terms[m-1] = u_hat^(m), zero initial data
    std::vector<double> term_sup_norms;  // sup over every integrator step of the L^inf norm
    double c_delta = 0.0;
};

// coefficient fields of the m-th linear equation evaluated at one time slice:
//   (d_t - Lap) u^(m) = a_xi * xi_delta - a_c * c_delta + [b_h + u^(m) g'(w)] h
struct CoefficientFields {
    Field a_xi;
    Field a_c;
    Field b_h;
};

// coefficients for orders 1..M from w and the lower-order terms at one time
// (terms[i] = u^(i+1)); terms beyond order m-1 are not read for order m
std::vector<CoefficientFields> hierarchy_coefficients(const NonlinearitySpec& g, const Field& w,
                                                      std::span<const Field> terms, int M);

// core builder: driver is a real-space field (mollified noise or a smooth k)
TaylorHierarchy build_hierarchy(const SolveContext& ctx, const CMFunction& h, const Field& driver,
                                double c_delta, int M);

// hierarchy for the noise driver eps*xi_delta with counterterm eps^2*c_delta
TaylorHierarchy taylor_hierarchy(const SolveContext& ctx, const CMFunction& h,
                                 const NoiseRealization& xi, int M, double eps = 1.0);

// canonical-lift version: smooth driver k, no renormalisation
TaylorHierarchy deterministic_hierarchy(const SolveContext& ctx, const CMFunction& h,
                                        const CMFunction& k, int M);

struct RemainderReport {
    Field at_terminal;      // R_hat(T, .)
    double sup_norm = 0.0;  // max over snapshot times of the grid L^inf norm
    bool exploded = false;
};

// R_hat = u_hat^eps_h - w_h - sum_{m<=M} eps^m/m! u_hat^(m)
RemainderReport remainder(const SolveContext& ctx, const CMFunction& h, double eps,
                          const NoiseRealization& xi, int M);

} // namespace gpam
