#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gpam/combinatorics.hpp"
#include "gpam/noise.hpp"
#include "test_util.hpp"

using namespace gpam;
using namespace testutil;

TEST_CASE("composition sets S_k^m") {
    for (int m = 1; m <= 6; ++m) {
        const auto s1 = compositions(1, m);
        REQUIRE(s1.size() == 1);
        CHECK(s1[0] == Composition{m});
    }
    CHECK(compositions(4, 3).empty());
    CHECK(compositions(2, 3) == std::vector<Composition>{{1, 2}, {2, 1}});

    // sum_k |S_k^m| = 2^{m-1}
    for (int m = 1; m <= 12; ++m) {
        std::size_t total = 0;
        for (int k = 1; k <= m; ++k) total += compositions(k, m).size();
        CHECK(total == (std::size_t(1) << (m - 1)));
    }

    // lexicographic order, duplicate-free
    const auto s35 = compositions(3, 5);
    for (std::size_t i = 1; i < s35.size(); ++i) CHECK(s35[i - 1] < s35[i]);
}

TEST_CASE("riordan derivative: chain rule orders 1 and 2") {
    // f(x) = x^3 at g = 2, g' = 5: f'(g) g' = 3*4*5
    std::vector<double> f = {8.0, 12.0, 6.0, 1.0};   // x^3 derivatives at x=2 / wait: values below
    // derivatives of x^3 at x=2: f=8, f'=12, f''=12, f'''=6
    f = {8.0, 12.0, 12.0, 6.0};
    std::vector<double> g = {2.0, 5.0, -3.0, 0.0};
    CHECK(riordan_derivative(f, g, 1) == doctest::Approx(12.0 * 5.0).epsilon(1e-14));
    // m=2: f''(g) g'^2 + f'(g) g''
    CHECK(riordan_derivative(f, g, 2) ==
          doctest::Approx(12.0 * 25.0 + 12.0 * (-3.0)).epsilon(1e-14));
}

TEST_CASE("riordan matches nested polynomial differentiation for m <= 6, 100 random pairs") {
    GaussianStream rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        Poly f(7), g(7);
        for (auto& c : f) c = rng.next();
        for (auto& c : g) c = rng.next();
        const double x0 = 0.3 * rng.next();

        const Poly comp = poly_compose(f, g);
        Poly dcomp = comp;
        Poly df = f, dg = g;
        std::vector<double> f_derivs, g_derivs;
        const double gx0 = poly_eval(g, x0);
        // derivatives of f at g(x0) and of g at x0, orders 0..6
        Poly fd = f, gd = g;
        for (int m = 0; m <= 6; ++m) {
            f_derivs.push_back(poly_eval(fd, gx0));
            g_derivs.push_back(poly_eval(gd, x0));
            fd = poly_derivative(fd);
            gd = poly_derivative(gd);
        }
        for (int m = 1; m <= 6; ++m) {
            dcomp = poly_derivative(dcomp);
            const double want = poly_eval(dcomp, x0);
            const double got = riordan_derivative(f_derivs, g_derivs, m);
            CHECK(rel_err(got, want) < 1e-12);
        }
    }
}

TEST_CASE("expansion maps G(k,N)") {
    for (int k = 1; k <= 5; ++k)
        for (int N = 1; N <= 5; ++N) {
            const auto all = maps_G(k, N, MapFilter::All, N);
            CHECK(all.size() == static_cast<std::size_t>(std::pow(N, k)));
        }

    ExpansionMap pi{{3, 3}};
    CHECK(pi.ell() == 2);
    CHECK(pi.weight() == 6);

    for (int m = 1; m <= 4; ++m) {
        const auto gm = maps_G(1, 4, MapFilter::EllEqual, m);
        REQUIRE(gm.size() == 1);
        CHECK(gm[0].values == std::vector<int>{m + 2});
    }

    // the three predicates partition G(k,N)
    const auto le = maps_G(3, 4, MapFilter::EllAtMost, 4);
    const auto gt = maps_G(3, 4, MapFilter::EllGreater, 4);
    CHECK(le.size() + gt.size() == maps_G(3, 4, MapFilter::All, 4).size());
}

TEST_CASE("weights W_m: pinned low orders") {
    const std::vector<double> fhat = {1.7, -0.4, 2.2, 0.9}; // F_hat^(3..6)
    const auto w = weights_W(fhat, 4);
    CHECK(w[0] == 1.0);
    CHECK(w[1] == doctest::Approx(-fhat[0] / 6.0).epsilon(1e-14));
    const double w2 = -fhat[1] / 24.0 + 0.5 * (fhat[0] / 6.0) * (fhat[0] / 6.0);
    CHECK(w[2] == doctest::Approx(w2).epsilon(1e-14));
}

TEST_CASE("weights match the truncated series-exponential oracle, 100 random inputs") {
    GaussianStream rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        const int N = 1 + trial % 6;
        std::vector<double> fhat(N);
        for (auto& x : fhat) x = rng.next();

        // exp(-sum_{m>=1} eps^m F_hat^(m+2)/(m+2)!) truncated at order N
        FormalSeries s(N);
        for (int m = 1; m <= N; ++m)
            s.c[m] = -fhat[m - 1] / static_cast<double>(factorial(m + 2));
        const FormalSeries e = series_exp_truncate(s);

        const auto w = weights_W(fhat, N);
        for (int m = 0; m <= N; ++m)
            CHECK(std::abs(w[m] - e.c[m]) < 1e-12 * (1.0 + std::abs(e.c[m])));
    }
}

TEST_CASE("series exponential basics") {
    FormalSeries zero(4);
    const FormalSeries one = series_exp_truncate(zero);
    CHECK(one.c == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0});

    FormalSeries eps(3);
    eps.c[1] = 1.0;
    const FormalSeries e = series_exp_truncate(eps);
    CHECK(e.c[0] == doctest::Approx(1.0));
    CHECK(e.c[1] == doctest::Approx(1.0));
    CHECK(e.c[2] == doctest::Approx(0.5));
    CHECK(e.c[3] == doctest::Approx(1.0 / 6.0));

    FormalSeries bad(2);
    bad.c[0] = 0.1;
    CHECK_THROWS_AS(series_exp_truncate(bad), std::invalid_argument);
}

TEST_CASE("factorials are exact integers up to 20") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(factorial(20) == 2432902008176640000LL);
    CHECK_THROWS_AS(factorial(21), std::invalid_argument);
}
