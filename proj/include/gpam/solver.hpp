#pragma once

#include "gpam/noise.hpp"
#include "gpam/nonlinearity.hpp"

namespace gpam {

// Time-indexed field; snapshots every `stride` integrator steps plus the
// final time. `exploded` marks graveyard trajectories (non-finite values);
// downstream estimators weight them zero.
struct Trajectory {
    std::vector<double> times;
    std::vector<Field> snaps;
    bool exploded = false;
    double explode_time = -1.0;

    const Field& terminal() const { return snaps.back(); }
    double sup_norm() const {
        double m = 0.0;
        for (const Field& f : snaps) m = std::max(m, field_max_abs(f));
        return m;
    }
};

struct SolveContext {
    TorusGrid grid;
    double T = 0.5;
    int steps = 512;
    Field u0;                  // initial condition, defaults to zero
    NonlinearitySpec g = builtin_nonlinearity("cos");
    MollifierSpec mollifier;
    double c_delta = 0.0;      // counterterm constant matching the mollifier
    int snapshot_stride = 16;

    double dt() const { return T / steps; }
    void validate() const {
        if (T <= 0.0 || steps <= 0) throw std::invalid_argument("SolveContext: need T > 0, steps > 0");
        if (!u0.v.empty() && !(u0.grid == grid)) throw std::invalid_argument("SolveContext: u0 grid mismatch");
        mollifier.validate(grid);
    }
    Field initial() const { return u0.v.empty() ? Field(grid) : u0; }
};

// convenience: context with the renormalisation constant filled in
SolveContext make_context(TorusGrid grid, double T, int steps, const MollifierSpec& m,
                          const NonlinearitySpec& g, Field u0 = {});

// (d_t - Lap) u = g(u) * drive - c_eff * g(u) g'(u), integrating-factor Euler,
// pointwise nonlinearity with the two-thirds dealias projection on the source.
// This is the common core of the skeleton and shifted equations; the shifted
// equation with (h, eps, xi) is bit-identical to the call with the combined
// driver eps*xi_delta + h and c_eff = eps^2 c_delta.
Trajectory solve_driven(const SolveContext& ctx, const Field& drive, double c_eff);

// w_h: (d_t - Lap) w = g(w) h, w(0) = u0
Trajectory solve_skeleton(const SolveContext& ctx, const CMFunction& h);

// u_hat^eps_{xi_delta;h}: (d_t - Lap) u = g(u)(eps xi_delta + h - eps^2 c_delta g'(u))
Trajectory solve_shifted(const SolveContext& ctx, const CMFunction& h, double eps,
                         const NoiseRealization& xi);

// v_{h,k}: (d_t - Lap) v = g'(w_h) v h + g(w_h) k, v(0) = 0; the skeleton is
// re-advanced internally with the same scheme (frozen coefficients)
Trajectory solve_linearized(const SolveContext& ctx, const CMFunction& h, const CMFunction& k);

// backward adjoint (-d_t - Lap) p = g'(w_h) h p, p(T) = terminal, discretised
// as the exact transpose of the linearised step so that
//   <v_{h,k}(T), terminal> = dt * sum_j <g(w_h(t_j)) k, p(t_j)>   (j < steps)
Trajectory solve_adjoint(const SolveContext& ctx, const CMFunction& h, const Field& terminal);

// dt * sum_j g(w_h(t_j)) p(t_j), assembled in one backward sweep; the
// F-part of the objective gradient
Field adjoint_source_integral(const SolveContext& ctx, const CMFunction& h, const Field& terminal);

} // namespace gpam
