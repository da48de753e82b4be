#include "gpam/solver.hpp"

namespace gpam {

namespace {

struct StepTables {
    MultiplierTable heat;
    MultiplierTable mask;

    explicit StepTables(const SolveContext& ctx)
        : heat(heat_multiplier(ctx.grid, ctx.dt())), mask(dealias_mask(ctx.grid)) {}

    // u_hat <- heat (x) (u_hat + dt * mask (x) fft(source))
    void advance(Spectrum& state, const Field& source, double dt) const {
        Spectrum s = forward_transform(source);
        for (std::size_t i = 0; i < state.c.size(); ++i)
            state.c[i] = heat[i] * (state.c[i] + dt * mask[i] * s.c[i]);
    }
};

bool record_snapshot(Trajectory& out, const SolveContext& ctx, int step, const Field& u) {
    if (step % ctx.snapshot_stride == 0 || step == ctx.steps) {
        out.times.push_back(step * ctx.dt());
        out.snaps.push_back(u);
    }
    return true;
}

} // namespace

SolveContext make_context(TorusGrid grid, double T, int steps, const MollifierSpec& m,
                          const NonlinearitySpec& g, Field u0) {
    SolveContext ctx;
    ctx.grid = grid;
    ctx.T = T;
    ctx.steps = steps;
    ctx.mollifier = m;
    ctx.g = g;
    ctx.u0 = std::move(u0);
    ctx.c_delta = renorm_constant(grid, m).value;
    ctx.validate();
    return ctx;
}

Trajectory solve_driven(const SolveContext& ctx, const Field& drive, double c_eff) {
    ctx.validate();
    const StepTables tab(ctx);
    const double dt = ctx.dt();

    Field u = ctx.initial();
    Spectrum state = forward_transform(u);
    Trajectory out;
    record_snapshot(out, ctx, 0, u);

    Field source(ctx.grid);
    for (int j = 0; j < ctx.steps; ++j) {
        for (std::size_t i = 0; i < u.size(); ++i) {
            const double gu = ctx.g.deriv(u.v[i], 0);
            double s = gu * drive.v[i];
            if (c_eff != 0.0) s -= c_eff * gu * ctx.g.deriv(u.v[i], 1);
            source.v[i] = s;
        }
        if (!field_finite(source)) {
            out.exploded = true;
            out.explode_time = (j + 1) * dt;
            return out;
        }
        tab.advance(state, source, dt);
        u = inverse_transform(state);
        if (!field_finite(u)) {
            out.exploded = true;
            out.explode_time = (j + 1) * dt;
            return out;
        }
        record_snapshot(out, ctx, j + 1, u);
    }
    return out;
}

Trajectory solve_skeleton(const SolveContext& ctx, const CMFunction& h) {
    return solve_driven(ctx, h, 0.0);
}

Trajectory solve_shifted(const SolveContext& ctx, const CMFunction& h, double eps,
                         const NoiseRealization& xi) {
    if (!(xi.grid == ctx.grid)) throw std::invalid_argument("solve_shifted: noise grid mismatch");
    Field drive = mollified_noise_field(xi, ctx.mollifier);
    field_scale(drive, eps);
    field_add(drive, h);
    return solve_driven(ctx, drive, eps * eps * ctx.c_delta);
}

Trajectory solve_linearized(const SolveContext& ctx, const CMFunction& h, const CMFunction& k) {
    ctx.validate();
    const StepTables tab(ctx);
    const double dt = ctx.dt();

    Field w = ctx.initial();
    Field v(ctx.grid);
    Spectrum wstate = forward_transform(w);
    Spectrum vstate = forward_transform(v);
    Trajectory out;
    record_snapshot(out, ctx, 0, v);

    Field src_w(ctx.grid), src_v(ctx.grid);
    for (int j = 0; j < ctx.steps; ++j) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            src_w.v[i] = ctx.g.deriv(w.v[i], 0) * h.v[i];
            src_v.v[i] = ctx.g.deriv(w.v[i], 1) * v.v[i] * h.v[i] + ctx.g.deriv(w.v[i], 0) * k.v[i];
        }
        tab.advance(wstate, src_w, dt);
        tab.advance(vstate, src_v, dt);
        w = inverse_transform(wstate);
        v = inverse_transform(vstate);
        record_snapshot(out, ctx, j + 1, v);
    }
    return out;
}

namespace {

// forward sweep storing the skeleton at every step (needed in reverse order)
std::vector<Field> skeleton_states(const SolveContext& ctx, const CMFunction& h,
                                   const StepTables& tab) {
    const double dt = ctx.dt();
    std::vector<Field> w_all;
    w_all.reserve(ctx.steps + 1);
    Field w = ctx.initial();
    Spectrum state = forward_transform(w);
    w_all.push_back(w);
    Field source(ctx.grid);
    for (int j = 0; j < ctx.steps; ++j) {
        for (std::size_t i = 0; i < w.size(); ++i)
            source.v[i] = ctx.g.deriv(w.v[i], 0) * h.v[i];
        tab.advance(state, source, dt);
        w = inverse_transform(state);
        w_all.push_back(w);
    }
    return w_all;
}

// backward sweep shared by solve_adjoint and adjoint_source_integral
template <class Visitor>
void adjoint_sweep(const SolveContext& ctx, const CMFunction& h, const Field& terminal,
                   Visitor&& visit) {
    ctx.validate();
    const StepTables tab(ctx);
    const double dt = ctx.dt();
    const std::vector<Field> w_all = skeleton_states(ctx, h, tab);

    Spectrum lambda = forward_transform(terminal); // lambda_{j+1}, starts at j+1 = steps
    Field p(ctx.grid);
    for (int j = ctx.steps - 1; j >= 0; --j) {
        // q = heat(lambda_{j+1}), p_j = dealias(q)
        Spectrum q = lambda;
        apply_multiplier(q, tab.heat);
        Spectrum pq = q;
        apply_multiplier(pq, tab.mask);
        p = inverse_transform(pq);
        visit(j, w_all[j], p);
        // lambda_j = q + dt * fft(g'(w_j) h p_j)
        Field coupling(ctx.grid);
        for (std::size_t i = 0; i < p.size(); ++i)
            coupling.v[i] = ctx.g.deriv(w_all[j].v[i], 1) * h.v[i] * p.v[i];
        Spectrum cs = forward_transform(coupling);
        for (std::size_t i = 0; i < lambda.c.size(); ++i) lambda.c[i] = q.c[i] + dt * cs.c[i];
    }
}

} // namespace

Trajectory solve_adjoint(const SolveContext& ctx, const CMFunction& h, const Field& terminal) {
    std::vector<Field> p_all(ctx.steps);
    adjoint_sweep(ctx, h, terminal, [&](int j, const Field&, const Field& p) { p_all[j] = p; });

    Trajectory out;
    const double dt = ctx.dt();
    for (int j = 0; j <= ctx.steps; ++j) {
        if (j % ctx.snapshot_stride == 0 || j == ctx.steps) {
            out.times.push_back(j * dt);
            out.snaps.push_back(j == ctx.steps ? terminal : p_all[j]);
        }
    }
    return out;
}

Field adjoint_source_integral(const SolveContext& ctx, const CMFunction& h, const Field& terminal) {
    Field acc(ctx.grid);
    const double dt = ctx.dt();
    adjoint_sweep(ctx, h, terminal, [&](int, const Field& w, const Field& p) {
        for (std::size_t i = 0; i < acc.size(); ++i)
            acc.v[i] += dt * ctx.g.deriv(w.v[i], 0) * p.v[i];
    });
    return acc;
}

} // namespace gpam
