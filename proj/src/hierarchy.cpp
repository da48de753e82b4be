#include "gpam/hierarchy.hpp"

#include "gpam/combinatorics.hpp"

namespace gpam {

std::vector<CoefficientFields> hierarchy_coefficients(const NonlinearitySpec& g, const Field& w,
                                                      std::span<const Field> terms, int M) {
    const TorusGrid grid = w.grid;
    const std::size_t nn = grid.nodes();

    std::vector<Field> gk(M + 1);
    for (int k = 0; k <= M; ++k) gk[k] = apply_nonlinearity(g, w, k);

    std::vector<CoefficientFields> out;
    out.reserve(M);
    std::vector<double> prod(nn);

    for (int m = 1; m <= M; ++m) {
        CoefficientFields cf{Field(grid), Field(grid), Field(grid)};
        const double mfact = static_cast<double>(factorial(m));

        if (m == 1) {
            cf.a_xi = gk[0];
        } else {
            // a_xi^{(m-1)} = m! sum_{k=1}^{m-1} g^{(k)}(w)/k!
            //                  sum_{i in S_k^{m-1}} prod u^{(i_n)}/i_n!
            // a_c^{(m-1)}  = same sum with one factor u^{(i_r)}/i_r! replaced
            //                by a_xi^{(i_r-1)}/i_r!
            for (int k = 1; k <= m - 1; ++k) {
                const double wk = mfact / static_cast<double>(factorial(k));
                for (const Composition& comp : compositions(k, m - 1)) {
                    double invfacts = 1.0;
                    for (int part : comp) invfacts /= static_cast<double>(factorial(part));
                    // product of the terms
                    std::fill(prod.begin(), prod.end(), 1.0);
                    for (int part : comp)
                        for (std::size_t i = 0; i < nn; ++i) prod[i] *= terms[part - 1].v[i];
                    for (std::size_t i = 0; i < nn; ++i)
                        cf.a_xi.v[i] += wk * invfacts * gk[k].v[i] * prod[i];
                    // replace factor r by the lower-order a_xi
                    for (int r = 0; r < k; ++r) {
                        std::fill(prod.begin(), prod.end(), 1.0);
                        for (int nidx = 0; nidx < k; ++nidx) {
                            const Field& factor =
                                (nidx == r) ? out[comp[nidx] - 1].a_xi : terms[comp[nidx] - 1];
                            for (std::size_t i = 0; i < nn; ++i) prod[i] *= factor.v[i];
                        }
                        for (std::size_t i = 0; i < nn; ++i)
                            cf.a_c.v[i] += wk * invfacts * gk[k].v[i] * prod[i];
                    }
                }
            }
            // b_h^{(m-1)} = m! sum_{k=2}^{m} g^{(k)}(w)/k!
            //                  sum_{i in S_k^m} prod u^{(i_n)}/i_n!
            for (int k = 2; k <= m; ++k) {
                const double wk = mfact / static_cast<double>(factorial(k));
                for (const Composition& comp : compositions(k, m)) {
                    double invfacts = 1.0;
                    for (int part : comp) invfacts /= static_cast<double>(factorial(part));
                    std::fill(prod.begin(), prod.end(), 1.0);
                    for (int part : comp)
                        for (std::size_t i = 0; i < nn; ++i) prod[i] *= terms[part - 1].v[i];
                    for (std::size_t i = 0; i < nn; ++i)
                        cf.b_h.v[i] += wk * invfacts * gk[k].v[i] * prod[i];
                }
            }
        }
        out.push_back(std::move(cf));
    }
    return out;
}

TaylorHierarchy build_hierarchy(const SolveContext& ctx, const CMFunction& h, const Field& driver,
                                double c_delta, int M) {
    ctx.validate();
    if (M < 1) throw std::invalid_argument("build_hierarchy: order must be >= 1");
    const double dt = ctx.dt();
    const MultiplierTable heat = heat_multiplier(ctx.grid, dt);
    const MultiplierTable mask = dealias_mask(ctx.grid);

    TaylorHierarchy hier;
    hier.order = M;
    hier.c_delta = c_delta;
    hier.terms.resize(M);
    hier.term_sup_norms.assign(M, 0.0);

    Field w = ctx.initial();
    std::vector<Field> u(M, Field(ctx.grid));
    Spectrum w_state = forward_transform(w);
    std::vector<Spectrum> u_state(M, forward_transform(Field(ctx.grid)));

    auto snapshot = [&](int step) {
        if (step % ctx.snapshot_stride == 0 || step == ctx.steps) {
            const double t = step * dt;
            hier.skeleton.times.push_back(t);
            hier.skeleton.snaps.push_back(w);
            for (int m = 0; m < M; ++m) {
                hier.terms[m].times.push_back(t);
                hier.terms[m].snaps.push_back(u[m]);
            }
        }
    };
    snapshot(0);

    auto advance = [&](Spectrum& state, const Field& source) {
        Spectrum s = forward_transform(source);
        for (std::size_t i = 0; i < state.c.size(); ++i)
            state.c[i] = heat[i] * (state.c[i] + dt * mask[i] * s.c[i]);
    };

    Field src(ctx.grid);
    for (int j = 0; j < ctx.steps; ++j) {
        const std::vector<CoefficientFields> cf = hierarchy_coefficients(ctx.g, w, u, M);
        const Field g1w = apply_nonlinearity(ctx.g, w, 1);

        // all sources are read off the time-t_j state before any update
        std::vector<Field> sources(M, Field(ctx.grid));
        for (int m = 1; m <= M; ++m) {
            Field& s = sources[m - 1];
            const CoefficientFields& c = cf[m - 1];
            for (std::size_t i = 0; i < s.size(); ++i) {
                s.v[i] = c.a_xi.v[i] * driver.v[i] - c_delta * c.a_c.v[i] +
                         (c.b_h.v[i] + u[m - 1].v[i] * g1w.v[i]) * h.v[i];
            }
        }
        for (std::size_t i = 0; i < src.size(); ++i)
            src.v[i] = ctx.g.deriv(w.v[i], 0) * h.v[i];

        advance(w_state, src);
        for (int m = 0; m < M; ++m) advance(u_state[m], sources[m]);
        w = inverse_transform(w_state);
        for (int m = 0; m < M; ++m) {
            u[m] = inverse_transform(u_state[m]);
            hier.term_sup_norms[m] = std::max(hier.term_sup_norms[m], field_max_abs(u[m]));
        }
        snapshot(j + 1);
    }
    return hier;
}

TaylorHierarchy taylor_hierarchy(const SolveContext& ctx, const CMFunction& h,
                                 const NoiseRealization& xi, int M, double eps) {
    Field driver = mollified_noise_field(xi, ctx.mollifier);
    field_scale(driver, eps);
    return build_hierarchy(ctx, h, driver, eps * eps * ctx.c_delta, M);
}

TaylorHierarchy deterministic_hierarchy(const SolveContext& ctx, const CMFunction& h,
                                        const CMFunction& k, int M) {
    return build_hierarchy(ctx, h, k, 0.0, M);
}

RemainderReport remainder(const SolveContext& ctx, const CMFunction& h, double eps,
                          const NoiseRealization& xi, int M) {
    const Trajectory shifted = solve_shifted(ctx, h, eps, xi);
    RemainderReport rep;
    if (shifted.exploded) {
        rep.exploded = true;
        return rep;
    }
    const TaylorHierarchy hier = taylor_hierarchy(ctx, h, xi, M);

    const std::size_t nsnap = shifted.snaps.size();
    double epspow = 1.0;
    std::vector<double> coeff(M);
    for (int m = 1; m <= M; ++m) {
        epspow *= eps;
        coeff[m - 1] = epspow / static_cast<double>(factorial(m));
    }
    for (std::size_t s = 0; s < nsnap; ++s) {
        Field r = shifted.snaps[s];
        field_axpy(r, -1.0, hier.skeleton.snaps[s]);
        for (int m = 0; m < M; ++m) field_axpy(r, -coeff[m], hier.terms[m].snaps[s]);
        rep.sup_norm = std::max(rep.sup_norm, field_max_abs(r));
        if (s + 1 == nsnap) rep.at_terminal = std::move(r);
    }
    return rep;
}

} // namespace gpam
