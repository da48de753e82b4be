#pragma once

#include <vector>

#include "gpam/estimators.hpp"
#include "gpam/hierarchy.hpp"

namespace testutil {

using namespace gpam;

inline double rel_err(double got, double want) {
    const double denom = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / denom;
}

inline double field_rel_err(const Field& got, const Field& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num += (got.v[i] - want.v[i]) * (got.v[i] - want.v[i]);
        den += want.v[i] * want.v[i];
    }
    return std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
}

inline bool fields_identical(const Field& a, const Field& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a.v[i] != b.v[i]) return false;
    return true;
}

// random field with modes |k|_inf <= kmax, deterministic in the seed
inline Field random_band_limited(TorusGrid g, int kmax, std::uint64_t seed, double amp = 1.0) {
    GaussianStream rng(seed);
    Field f(g);
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = -kmax; k2 <= kmax; ++k2) {
            if (k1 == 0 && k2 < 0) continue;
            const double a = amp * rng.next();
            const double b = amp * rng.next();
            const double h = g.spacing();
            for (int i1 = 0; i1 < g.n; ++i1)
                for (int i2 = 0; i2 < g.n; ++i2) {
                    const double ph = 2.0 * M_PI * (k1 * i1 + k2 * i2) * h;
                    f(i1, i2) += a * std::cos(ph) + ((k1 | k2) ? b * std::sin(ph) : 0.0);
                }
        }
    }
    return f;
}

inline Field random_rough(TorusGrid g, std::uint64_t seed) {
    GaussianStream rng(seed);
    Field f(g);
    for (auto& x : f.v) x = rng.next();
    return f;
}

// E[f(G)] for G ~ N(0,1) by composite Simpson on [-10,10]
template <class Fn>
double gaussian_expect(Fn&& f, int panels = 4000) {
    const double a = -10.0, b = 10.0;
    const double h = (b - a) / panels;
    auto integrand = [&](double x) {
        return f(x) * std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
    };
    double s = integrand(a) + integrand(b);
    for (int i = 1; i < panels; ++i) s += integrand(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// geometric sum of the discrete heat multiplier: S_k = dt * sum_{i=1..M} E_k^i;
// the response of the integrating-factor Euler chain to a constant-in-time source
inline MultiplierTable heat_response_multiplier(const TorusGrid& g, double T, int steps) {
    const double dt = T / steps;
    const MultiplierTable E = heat_multiplier(g, dt);
    MultiplierTable S(g.nodes());
    for (std::size_t i = 0; i < S.size(); ++i) {
        double p = 1.0, acc = 0.0;
        for (int j = 0; j < steps; ++j) {
            p *= E[i];
            acc += p;
        }
        S[i] = dt * acc;
    }
    return S;
}

// g == 1 linear-response fields: <w_h(T), psi> = mu0 + <h, a> and
// <Z(T), psi> = pair(xi, A) with A the mollified variant of a
struct LinearCase {
    double mu0 = 0.0; // <heat-flow of u0 at T, psi>
    Field a;          // (S . dealias) psi
    Field A;          // (S . dealias . chi) psi
    double sigma = 0.0;
};

inline LinearCase linear_case(const SolveContext& ctx, const Field& psi) {
    LinearCase lc;
    const MultiplierTable S = heat_response_multiplier(ctx.grid, ctx.T, ctx.steps);
    const MultiplierTable D = dealias_mask(ctx.grid);
    const MultiplierTable chi = mollifier_multiplier(ctx.grid, ctx.mollifier);

    Spectrum ps = forward_transform(psi);
    Spectrum as = ps, As = ps;
    for (std::size_t i = 0; i < ps.c.size(); ++i) {
        as.c[i] *= S[i] * D[i];
        As.c[i] *= S[i] * D[i] * chi[i];
    }
    lc.a = inverse_transform(as);
    lc.A = inverse_transform(As);
    double s2 = 0.0;
    for (const auto& z : As.c) s2 += std::norm(z);
    lc.sigma = std::sqrt(s2);

    const Field u0T = heat_step(ctx.initial(), ctx.T);
    lc.mu0 = l2_inner(u0T, psi);
    return lc;
}

// dense polynomial helpers for the nested-differentiation oracle; long double
// keeps the oracle's own rounding well below the tolerances it checks
using Poly = std::vector<long double>; // p[i] * x^i

inline Poly poly_derivative(const Poly& p) {
    if (p.size() <= 1) return {0.0L};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<long double>(i);
    return d;
}

inline double poly_eval(const Poly& p, double x) {
    long double acc = 0.0L;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return static_cast<double>(acc);
}

inline Poly poly_multiply(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0L);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

inline Poly poly_compose(const Poly& f, const Poly& g) {
    Poly out{0.0L};
    for (std::size_t i = f.size(); i-- > 0;) {
        out = poly_multiply(out, g);
        out[0] += f[i];
    }
    return out;
}

} // namespace testutil
