#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpam/combinatorics.hpp"
#include "test_util.hpp"

using namespace gpam;
using namespace testutil;

namespace {

SolveContext base_ctx(const std::string& g_kind) {
    SolveContext ctx = make_context(TorusGrid(32), 0.25, 64, MollifierSpec{0.25},
                                    builtin_nonlinearity(g_kind),
                                    random_band_limited(TorusGrid(32), 2, 1000, 0.3));
    ctx.snapshot_stride = ctx.steps;
    return ctx;
}

Trajectory single_snapshot(const Field& f) {
    Trajectory t;
    t.times = {0.0};
    t.snaps = {f};
    return t;
}

// F(u) = <u(T), psi>: linear, for exercising the generic interface
class LinearFunctional : public Functional {
  public:
    explicit LinearFunctional(Field psi) : psi_(std::move(psi)) {}
    double evaluate(const Trajectory& u) const override { return l2_inner(u.terminal(), psi_); }
    double derivative(const Trajectory&,
                      const std::vector<const Trajectory*>& dirs) const override {
        if (dirs.size() != 1) return 0.0;
        return l2_inner(dirs[0]->terminal(), psi_);
    }
    std::vector<double> derivative_bounds(int kmax) const override {
        return std::vector<double>(kmax + 1, 1e30);
    }

  private:
    Field psi_;
};

} // namespace

TEST_CASE("profile derivatives agree with finite differences of the previous order") {
    const TorusGrid g(8);
    for (const char* kind : {"arctan", "tanh", "erf"}) {
        TerminalFunctional F(kind, field_cos_mode(g, 1, 0));
        for (double s : {-1.3, 0.0, 0.4, 2.1}) {
            for (int k = 1; k <= 6; ++k) {
                const double step = 1e-6;
                const double fd = (F.profile(s + step, k - 1) - F.profile(s - step, k - 1)) /
                                  (2.0 * step);
                CHECK(std::abs(F.profile(s, k) - fd) < 1e-5 * (1.0 + std::abs(fd)));
            }
        }
    }
}

TEST_CASE("arctan functional at the origin: value, first and second derivatives") {
    const TorusGrid g(32);
    const Field psi = field_cos_mode(g, 1, 0);
    TerminalFunctional F("arctan", psi);

    const Trajectory u = single_snapshot(field_cos_mode(g, 0, 1)); // orthogonal to psi
    CHECK(F.observe(u) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(F.evaluate(u) == doctest::Approx(0.0).epsilon(1e-14));

    const Trajectory y = single_snapshot(random_band_limited(g, 2, 1));
    CHECK(rel_err(F.derivative(u, {&y}), l2_inner(y.terminal(), psi)) < 1e-13); // arctan'(0)=1

    const double s = F.observe(y);
    const double want = F.profile(s, 2) * l2_inner(y.terminal(), psi) * l2_inner(y.terminal(), psi);
    CHECK(rel_err(F.derivative(y, {&y, &y}), want) < 1e-13);
}

TEST_CASE("finite-difference check of the first directional derivative") {
    const TorusGrid g(32);
    TerminalFunctional F("tanh", random_band_limited(g, 2, 2));
    const Field base = random_band_limited(g, 2, 3);
    const Field dir = random_band_limited(g, 2, 4);
    const double dfd = F.derivative(single_snapshot(base), {[&] {
                                        static Trajectory t = single_snapshot(dir);
                                        return &t;
                                    }()});
    for (double s : {1e-3, 1e-4}) {
        Field pert = base;
        field_axpy(pert, s, dir);
        const double fd = (F.evaluate(single_snapshot(pert)) - F.evaluate(single_snapshot(base))) / s;
        CHECK(std::abs(fd - dfd) < 5.0 * s * (1.0 + std::abs(dfd)));
    }
}

TEST_CASE("derivative bound audit over random directions") {
    const TorusGrid g(16);
    for (const char* kind : {"arctan", "tanh", "erf"}) {
        TerminalFunctional F(kind, random_band_limited(g, 2, 5));
        const auto bounds = F.derivative_bounds(4);
        GaussianStream rng(77);
        for (int trial = 0; trial < 1000; ++trial) {
            Field y(g);
            for (auto& x : y.v) x = rng.next();
            const Trajectory yt = single_snapshot(y);
            const Trajectory base = single_snapshot(random_band_limited(g, 1, trial));
            const double ynorm = field_max_abs(y);
            for (int k = 1; k <= 4; ++k) {
                std::vector<const Trajectory*> dirs(k, &yt);
                const double val = std::abs(F.derivative(base, dirs));
                CHECK(val <= bounds[k] * std::pow(ynorm, k) * (1.0 + 1e-12));
            }
        }
    }
}

TEST_CASE("fhat low orders match their closed forms") {
    SolveContext ctx = base_ctx("cos");
    const CMFunction h = random_band_limited(ctx.grid, 2, 6, 0.5);
    const NoiseRealization xi = sample_white_noise(ctx.grid, 5);
    const TaylorHierarchy hier = taylor_hierarchy(ctx, h, xi, 3);
    TerminalFunctional F("arctan", field_cos_mode(ctx.grid, 1, 0));

    // F_hat^(1) = DF(u^(1))
    CHECK(rel_err(fhat(1, F, hier), F.derivative(hier.skeleton, {&hier.terms[0]})) < 1e-13);

    // Q_hat = DF(u^(2)) + D^2F(u^(1), u^(1))
    const double q = F.derivative(hier.skeleton, {&hier.terms[1]}) +
                     F.derivative(hier.skeleton, {&hier.terms[0], &hier.terms[0]});
    CHECK(rel_err(qhat(F, hier), q) < 1e-13);

    // independent scalar route via Riordan's formula on <u^(m)(T), psi>
    const double s0 = F.observe(hier.skeleton);
    std::vector<double> f_derivs, g_derivs = {0.0};
    for (int k = 0; k <= 3; ++k) f_derivs.push_back(F.profile(s0, k));
    for (int m = 1; m <= 3; ++m)
        g_derivs.push_back(l2_inner(hier.terms[m - 1].terminal(), F.psi()));
    for (int m = 1; m <= 3; ++m)
        CHECK(rel_err(fhat(m, F, hier), riordan_derivative(f_derivs, g_derivs, m)) < 1e-12);
}

TEST_CASE("linear functional: F_hat^(m) = DF(u^(m))") {
    SolveContext ctx = base_ctx("cos");
    const CMFunction h = random_band_limited(ctx.grid, 2, 7, 0.5);
    const NoiseRealization xi = sample_white_noise(ctx.grid, 6);
    const TaylorHierarchy hier = taylor_hierarchy(ctx, h, xi, 3);
    LinearFunctional F(field_cos_mode(ctx.grid, 1, 0));
    for (int m = 1; m <= 3; ++m)
        CHECK(rel_err(fhat(m, F, hier), F.derivative(hier.skeleton, {&hier.terms[m - 1]})) < 1e-13);
}

TEST_CASE("jet homogeneity: hierarchy driven by eps xi scales F_hat^(m) by eps^m") {
    SolveContext ctx = base_ctx("cos");
    const CMFunction h = random_band_limited(ctx.grid, 2, 8, 0.5);
    const NoiseRealization xi = sample_white_noise(ctx.grid, 7);
    TerminalFunctional F("arctan", field_cos_mode(ctx.grid, 1, 0));
    const FunctionalJet base = functional_jet(F, taylor_hierarchy(ctx, h, xi, 3), 3);
    const double eps = 0.3;
    const FunctionalJet dil = functional_jet(F, taylor_hierarchy(ctx, h, xi, 3, eps), 3);
    double p = 1.0;
    for (int m = 1; m <= 3; ++m) {
        p *= eps;
        CHECK(rel_err(dil.fhat[m - 1], p * base.fhat[m - 1]) < 1e-12);
    }
}

TEST_CASE("deterministic quadratic form: finite-difference and dilation checks") {
    SolveContext ctx = base_ctx("cos");
    const CMFunction h = random_band_limited(ctx.grid, 2, 9, 0.5);
    const CMFunction k = random_band_limited(ctx.grid, 2, 10, 0.8);
    TerminalFunctional F("arctan", field_cos_mode(ctx.grid, 1, 0));

    CHECK(qhat_deterministic(F, ctx, h, CMFunction(ctx.grid)) == 0.0);

    const double q = qhat_deterministic(F, ctx, h, k);
    const double q2 = qhat_deterministic(F, ctx, h, field_scaled(k, 0.5));
    CHECK(rel_err(q2, 0.25 * q) < 1e-12);

    auto obj = [&](double s) {
        CMFunction hs = h;
        field_axpy(hs, s, k);
        return F.evaluate(solve_skeleton(ctx, hs));
    };
    for (double s : {1e-2, 5e-3}) {
        const double fd = (obj(s) - 2.0 * obj(0.0) + obj(-s)) / (s * s);
        CHECK(std::abs(fd - q) < 20.0 * s * s * (1.0 + std::abs(q)) + 1e-8);
    }
}

TEST_CASE("functional remainder: zero at eps 0, exact linear case, eps decay") {
    SolveContext ctx = base_ctx("one");
    const CMFunction h = random_band_limited(ctx.grid, 2, 11, 0.5);
    const NoiseRealization xi = sample_white_noise(ctx.grid, 8);
    LinearFunctional lin(field_cos_mode(ctx.grid, 1, 0));
    CHECK(std::abs(functional_remainder(lin, ctx, h, 0.0, xi, 1).value) < 1e-14);
    CHECK(std::abs(functional_remainder(lin, ctx, h, 0.4, xi, 1).value) < 1e-12);

    SolveContext cctx = base_ctx("cos");
    TerminalFunctional F("arctan", field_cos_mode(ctx.grid, 1, 0));
    const double r1 = std::abs(functional_remainder(F, cctx, h, 0.2, xi, 1).value);
    const double r2 = std::abs(functional_remainder(F, cctx, h, 0.1, xi, 1).value);
    // N = 1 remainder is o(eps^3); halving eps should shrink it by ~2^4
    CHECK(r2 < r1 / 8.0);
}
