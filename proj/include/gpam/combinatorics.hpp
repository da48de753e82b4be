#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace gpam {

// composition of m into k parts >= 1
using Composition = std::vector<int>;

// exact integer factorials, valid through 20!
std::int64_t factorial(int n);

// S_k^m = { i in N_{>=1}^k : |i| = m }, lexicographically ordered
std::vector<Composition> compositions(int k, int m);

// m-th derivative of f(g(.)) at a point via the composition-indexed higher
// chain rule: f_derivs[j] = f^(j) at g(x) for j = 0..m, g_derivs[j] = g^(j)
// at x for j = 0..m (index 0 unused for g beyond bookkeeping).
double riordan_derivative(std::span<const double> f_derivs, std::span<const double> g_derivs,
                          int m);

// maps pi: {1..k} -> {3..N+2} with l(pi) = sum(pi_i - 2), |pi| = sum pi_i
struct ExpansionMap {
    std::vector<int> values;
    int ell() const {
        int s = 0;
        for (int v : values) s += v - 2;
        return s;
    }
    int weight() const {
        int s = 0;
        for (int v : values) s += v;
        return s;
    }
};

enum class MapFilter { All, EllAtMost, EllGreater, EllEqual };

// enumerate G(k,N) under the chosen predicate on l(pi); `bound` is N for
// All/AtMost/Greater and the target m for EllEqual
std::vector<ExpansionMap> maps_G(int k, int N, MapFilter filter, int bound);

// W_0 = 1, W_m = sum_k (-1)^k/k! sum_{pi: l(pi)=m} prod F_hat^(pi_i)/pi_i!,
// fhat[j] holds F_hat^(j+3) for j = 0..N-1 (orders 3..N+2)
std::vector<double> weights_W(std::span<const double> fhat, int N);

// truncated power series in eps with fixed order
struct FormalSeries {
    std::vector<double> c; // c[j] multiplies eps^j

    explicit FormalSeries(int order = 0) : c(order + 1, 0.0) {}
    int order() const { return static_cast<int>(c.size()) - 1; }
};

FormalSeries series_multiply(const FormalSeries& a, const FormalSeries& b);
// coefficient-exact exp of a series with zero constant term
FormalSeries series_exp_truncate(const FormalSeries& s);

} // namespace gpam
