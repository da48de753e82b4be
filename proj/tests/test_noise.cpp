#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

using namespace gpam;
using namespace testutil;

TEST_CASE("fixed seed gives a bit-identical realization, distinct seeds differ") {
    TorusGrid g(32);
    const NoiseRealization a = sample_white_noise(g, 42);
    const NoiseRealization b = sample_white_noise(g, 42);
    const NoiseRealization c = sample_white_noise(g, 43);
    CHECK(a.coeffs == b.coeffs);
    CHECK(a.coeffs != c.coeffs);
}

TEST_CASE("coefficients are Hermitian with real self-conjugate modes") {
    TorusGrid g(16);
    const NoiseRealization xi = sample_white_noise(g, 7);
    for (int a1 = 0; a1 < g.n; ++a1)
        for (int a2 = 0; a2 < g.n; ++a2) {
            const auto z = xi.coeffs[g.flat(a1, a2)];
            const auto w = xi.coeffs[g.flat((g.n - a1) % g.n, (g.n - a2) % g.n)];
            CHECK(z == std::conj(w));
        }
    CHECK(xi.coeffs[g.flat(0, 0)].imag() == 0.0);
    CHECK(xi.coeffs[g.flat(g.n / 2, 0)].imag() == 0.0);
}

TEST_CASE("pairing: zero, single mode, linearity") {
    TorusGrid g(32);
    const NoiseRealization xi = sample_white_noise(g, 99);
    CHECK(pair(xi, CMFunction(g)) == 0.0);

    // <xi, cos(2 pi x1)> = Re xi_hat(1,0): coefficients at +-(1,0) are 1/2 each
    const double got = pair(xi, field_cos_mode(g, 1, 0));
    CHECK(rel_err(got, xi.coeffs[g.flat(1, 0)].real()) < 1e-12);

    const Field f = random_band_limited(g, 3, 1);
    const Field h = random_band_limited(g, 3, 2);
    CHECK(std::abs(pair(xi, field_sum(f, h)) - (pair(xi, f) + pair(xi, h))) <
          1e-12 * (1.0 + std::abs(pair(xi, f))));

    TorusGrid g2(16);
    CHECK_THROWS_AS(pair(xi, CMFunction(g2)), std::invalid_argument);
}

TEST_CASE("Monte Carlo isometry: Var <xi,h> = ||h||^2 within 3 SE") {
    TorusGrid g(32);
    const Field h = random_band_limited(g, 4, 3);
    const double want = h_inner(h, h);
    const int n = 4000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = pair(sample_white_noise(g, hash64(5, i)), h);
        s += x;
        s2 += x * x;
    }
    const double var = (s2 - s * s / n) / (n - 1);
    const double se = want * std::sqrt(2.0 / (n - 1)); // SE of a chi^2 variance estimate
    CHECK(std::abs(var - want) < 3.0 * se);
}

TEST_CASE("Gaussian isometry: covariance of two pairings matches <f,g>") {
    TorusGrid g(32);
    const Field f = random_band_limited(g, 4, 7);
    const Field h = random_band_limited(g, 4, 8);
    const double want = h_inner(f, h);
    const int n = 10000;
    double sfh = 0.0, sf = 0.0, sh = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const NoiseRealization xi = sample_white_noise(g, hash64(11, i));
        const double a = pair(xi, f);
        const double b = pair(xi, h);
        sfh += a * b;
        sf += a;
        sh += b;
        s2 += (a * b) * (a * b);
    }
    const double cov = (sfh - sf * sh / n) / (n - 1);
    const double se = std::sqrt((s2 - sfh * sfh / n) / (n - 1) / n); // SE of the product mean
    CHECK(std::abs(cov - want) < 3.0 * se);
}

TEST_CASE("variance of a single-mode pairing is the mode norm") {
    TorusGrid g(16);
    const Field e = field_cos_mode(g, 1, 0); // ||e||^2 = 1/2
    const int n = 10000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = pair(sample_white_noise(g, hash64(17, i)), e);
        s += x;
        s2 += x * x;
    }
    const double var = (s2 - s * s / n) / (n - 1);
    CHECK(std::abs(var - 0.5) < 3.0 * 0.5 * std::sqrt(2.0 / (n - 1)));
}

TEST_CASE("renorm constant: trivial zero and Monte Carlo consistency") {
    TorusGrid g(32);
    CHECK(renorm_constant(g, MollifierSpec{2.0}).value == 0.0); // only k=0 survives

    const MollifierSpec m{0.25};
    const double c = renorm_constant(g, m).value;
    const int n = 4000;
    const std::size_t node = g.flat(5, 11);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const NoiseRealization xi = sample_white_noise(g, hash64(23, i));
        const Field xid = mollified_noise_field(xi, m);
        const Field kxi = green_convolve(xid);
        const double x = kxi.v[node] * xid.v[node];
        s += x;
        s2 += x * x;
    }
    const double mean = s / n;
    const double se = std::sqrt((s2 - s * s / n) / (n - 1) / n);
    CHECK(std::abs(mean - c) < 3.0 * se);
}

TEST_CASE("second-order object: Wick mean, bilinearity, canonical lift of smooth drivers") {
    TorusGrid g(32);
    const MollifierSpec m{0.25};
    const double c = renorm_constant(g, m).value;

    // empirical mean at a fixed point within 3 SE of zero
    const int n = 4000;
    const std::size_t node = g.flat(3, 3);
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const NoiseRealization xi = sample_white_noise(g, hash64(29, i));
        const double x = second_order_object(xi, m, c).value.v[node];
        s += x;
        s2 += x * x;
    }
    const double se = std::sqrt((s2 - s * s / n) / (n - 1) / n);
    CHECK(std::abs(s / n) < 3.0 * se);

    // (eps xi, eps^2 c) scales the object by exactly eps^2
    const NoiseRealization xi = sample_white_noise(g, 31);
    const double eps = 0.3;
    const Field once = second_order_object(xi, m, c).value;
    const Field dil = second_order_object(scaled_noise(xi, eps), m, eps * eps * c).value;
    CHECK(field_rel_err(dil, field_scaled(once, eps * eps)) < 1e-12);

    // deterministic smooth driver, c = 0: equals (K*h_delta) h_delta
    const Field h = random_band_limited(g, 3, 4);
    NoiseRealization smooth{g, forward_transform(h).c, 0};
    const Field obj = second_order_object(smooth, m, 0.0).value;
    const Field hd = mollify(h, m);
    const Field want = field_product(green_convolve(hd), hd);
    CHECK(field_rel_err(obj, want) < 1e-12);
}

TEST_CASE("model norm: zero noise, exact dilation homogeneity, scale-set monotonicity") {
    TorusGrid g(64);
    const MollifierSpec m{0.125};
    const double c = renorm_constant(g, m).value;

    NoiseRealization zero{g, std::vector<std::complex<double>>(g.nodes()), 0};
    CHECK(model_norm_approx(zero, m, 0.0).combined == 0.0);

    const NoiseRealization xi = sample_white_noise(g, 101);
    const ModelNormEstimate base = model_norm_approx(xi, m, c);
    const double eps = 0.7;
    const ModelNormEstimate dil = model_norm_approx(scaled_noise(xi, eps), m, eps * eps * c);
    CHECK(rel_err(dil.combined, eps * base.combined) < 1e-12);
    CHECK(rel_err(dil.norm_noise, eps * base.norm_noise) < 1e-12);
    CHECK(rel_err(dil.norm_second, eps * eps * base.norm_second) < 1e-12);

    ModelNormOptions few{2, 4, 0.05};
    ModelNormOptions many{4, 4, 0.05};
    CHECK(model_norm_approx(xi, m, c, many).combined >=
          model_norm_approx(xi, m, c, few).combined);
    ModelNormOptions dense{4, 2, 0.05};
    CHECK(model_norm_approx(xi, m, c, dense).combined >=
          model_norm_approx(xi, m, c, many).combined);
}

TEST_CASE("hash64 derived streams differ and are stable") {
    CHECK(hash64(1, 0) != hash64(1, 1));
    CHECK(hash64(1, 0) != hash64(2, 0));
    CHECK(hash64(123, 45) == hash64(123, 45));
}
