#include "gpam/minimizer.hpp"

namespace gpam {

double total_objective(const Functional& F, const SolveContext& ctx, const CMFunction& h) {
    const Trajectory w = solve_skeleton(ctx, h);
    const double hn = h_norm(h);
    return F.evaluate(w) + 0.5 * hn * hn;
}

namespace {

CMFunction fd_gradient(const Functional& F, const SolveContext& ctx, const CMFunction& h,
                       int mode_cutoff) {
    // directional finite differences over an orthogonal low-mode basis;
    // slow but functional-form agnostic
    CMFunction grad = h;
    const double s = 1e-5;
    for (int k1 = -mode_cutoff; k1 <= mode_cutoff; ++k1) {
        for (int k2 = -mode_cutoff; k2 <= mode_cutoff; ++k2) {
            if (k1 < 0 || (k1 == 0 && k2 < 0)) continue; // cos/sin pairs cover -k
            Field dir = field_cos_mode(ctx.grid, k1, k2);
            for (int variant = 0; variant < 2; ++variant) {
                if (variant == 1) {
                    if (k1 == 0 && k2 == 0) continue;
                    const double hgrid = ctx.grid.spacing();
                    for (int i1 = 0; i1 < ctx.grid.n; ++i1)
                        for (int i2 = 0; i2 < ctx.grid.n; ++i2)
                            dir(i1, i2) = std::sin(2.0 * M_PI * (k1 * i1 + k2 * i2) * hgrid);
                }
                const double nrm2 = h_inner(dir, dir);
                if (nrm2 <= 0.0) continue;
                CMFunction hp = h, hm = h;
                field_axpy(hp, s, dir);
                field_axpy(hm, -s, dir);
                const Trajectory wp = solve_skeleton(ctx, hp);
                const Trajectory wm = solve_skeleton(ctx, hm);
                const double d = (F.evaluate(wp) - F.evaluate(wm)) / (2.0 * s);
                field_axpy(grad, d / nrm2, dir); // F-part only; h-part already in grad
            }
        }
    }
    return grad;
}

} // namespace

CMFunction objective_gradient(const Functional& F, const SolveContext& ctx, const CMFunction& h) {
    const auto* tf = dynamic_cast<const TerminalFunctional*>(&F);
    if (tf == nullptr) return fd_gradient(F, ctx, h, 2);

    const Trajectory w = solve_skeleton(ctx, h);
    const double s = tf->observe(w);
    Field terminal = tf->psi();
    field_scale(terminal, tf->profile(s, 1));
    CMFunction grad = adjoint_source_integral(ctx, h, terminal);
    field_add(grad, h);
    return grad;
}

MinimizerResult minimize(const Functional& F, const SolveContext& ctx, const CMFunction& h0,
                         const MinimizerOptions& opts) {
    MinimizerResult res;
    CMFunction h = h0.v.empty() ? CMFunction(ctx.grid) : h0;
    double value = total_objective(F, ctx, h);
    CMFunction grad = objective_gradient(F, ctx, h);
    double gnorm = h_norm(grad);
    res.log.push_back({0, value, gnorm, 0.0});

    CMFunction prev_h, prev_grad;
    double step = 1.0;
    int it = 0;
    for (; it < opts.max_iter; ++it) {
        if (gnorm <= opts.tol * (1.0 + h_norm(h))) {
            res.converged = true;
            break;
        }
        if (it > 0) {
            // BB1 step from the last displacement pair
            CMFunction dh = h, dg = grad;
            field_axpy(dh, -1.0, prev_h);
            field_axpy(dg, -1.0, prev_grad);
            const double num = h_inner(dh, dh);
            const double den = h_inner(dh, dg);
            if (den > 0.0 && num > 0.0) step = num / den;
        }
        // monotone backtracking
        double t = step;
        CMFunction trial;
        double trial_value = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            trial = h;
            field_axpy(trial, -t, grad);
            trial_value = total_objective(F, ctx, trial);
            if (trial_value <= value - 1e-4 * t * gnorm * gnorm) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break; // stalled; report non-convergence
        prev_h = h;
        prev_grad = grad;
        h = trial;
        value = trial_value;
        grad = objective_gradient(F, ctx, h);
        gnorm = h_norm(grad);
        res.log.push_back({it + 1, value, gnorm, t});
    }
    if (gnorm <= opts.tol * (1.0 + h_norm(h))) res.converged = true;
    res.h_star = std::move(h);
    res.value = value;
    res.grad_norm = gnorm;
    res.iterations = it;
    return res;
}

std::vector<double> nondegeneracy_probe(const Functional& F, const SolveContext& ctx,
                                        const CMFunction& h_star, int random_probes,
                                        std::uint64_t seed) {
    std::vector<CMFunction> probes;
    for (int k1 = 0; k1 <= 2; ++k1) {
        for (int k2 = -2; k2 <= 2; ++k2) {
            if (k1 == 0 && k2 < 0) continue;
            if (k1 * k1 + k2 * k2 > 4) continue;
            probes.push_back(field_cos_mode(ctx.grid, k1, k2));
            if (k1 != 0 || k2 != 0) {
                Field sinm(ctx.grid);
                const double hgrid = ctx.grid.spacing();
                for (int i1 = 0; i1 < ctx.grid.n; ++i1)
                    for (int i2 = 0; i2 < ctx.grid.n; ++i2)
                        sinm(i1, i2) = std::sin(2.0 * M_PI * (k1 * i1 + k2 * i2) * hgrid);
                probes.push_back(std::move(sinm));
            }
        }
    }
    for (int r = 0; r < random_probes; ++r) {
        GaussianStream rng(hash64(seed, r));
        Field f(ctx.grid);
        for (auto& x : f.v) x = rng.next();
        probes.push_back(std::move(f));
    }

    std::vector<double> quotients;
    quotients.reserve(probes.size());
    for (const CMFunction& k : probes) {
        const double nrm2 = h_inner(k, k);
        if (nrm2 <= 0.0) continue;
        const double q = qhat_deterministic(F, ctx, h_star, k);
        quotients.push_back((q + nrm2) / nrm2);
    }
    return quotients;
}

} // namespace gpam
