#include "gpam/combinatorics.hpp"

#include <stdexcept>

namespace gpam {

std::int64_t factorial(int n) {
    if (n < 0 || n > 20) throw std::invalid_argument("factorial: n outside [0,20]");
    std::int64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

namespace {

void compositions_rec(int k, int m, Composition& cur, std::vector<Composition>& out) {
    if (k == 1) {
        if (m >= 1) {
            cur.push_back(m);
            out.push_back(cur);
            cur.pop_back();
        }
        return;
    }
    for (int first = 1; first <= m - (k - 1); ++first) {
        cur.push_back(first);
        compositions_rec(k - 1, m - first, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<Composition> compositions(int k, int m) {
    if (k < 1 || m < 1) throw std::invalid_argument("compositions: k,m must be >= 1");
    std::vector<Composition> out;
    if (k > m) return out; // S_k^m empty
    Composition cur;
    cur.reserve(k);
    compositions_rec(k, m, cur, out);
    return out;
}

double riordan_derivative(std::span<const double> f_derivs, std::span<const double> g_derivs,
                          int m) {
    if (m < 1) throw std::invalid_argument("riordan_derivative: m must be >= 1");
    if (static_cast<int>(f_derivs.size()) < m + 1 || static_cast<int>(g_derivs.size()) < m + 1)
        throw std::invalid_argument("riordan_derivative: need derivatives up to order m");
    double total = 0.0;
    for (int k = 1; k <= m; ++k) {
        double inner = 0.0;
        for (const Composition& comp : compositions(k, m)) {
            double prod = 1.0;
            for (int part : comp) prod *= g_derivs[part] / static_cast<double>(factorial(part));
            inner += prod;
        }
        total += f_derivs[k] / static_cast<double>(factorial(k)) * inner;
    }
    return static_cast<double>(factorial(m)) * total;
}

namespace {

void maps_rec(int k, int hi, std::vector<int>& cur, std::vector<ExpansionMap>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(ExpansionMap{cur});
        return;
    }
    for (int v = 3; v <= hi; ++v) {
        cur.push_back(v);
        maps_rec(k, hi, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<ExpansionMap> maps_G(int k, int N, MapFilter filter, int bound) {
    if (k < 1) throw std::invalid_argument("maps_G: k must be >= 1");
    std::vector<ExpansionMap> all;
    std::vector<int> cur;
    cur.reserve(k);
    maps_rec(k, N + 2, cur, all);
    if (filter == MapFilter::All) return all;
    std::vector<ExpansionMap> out;
    for (auto& pi : all) {
        const int l = pi.ell();
        const bool keep = (filter == MapFilter::EllAtMost && l <= bound) ||
                          (filter == MapFilter::EllGreater && l > bound) ||
                          (filter == MapFilter::EllEqual && l == bound);
        if (keep) out.push_back(std::move(pi));
    }
    return out;
}

std::vector<double> weights_W(std::span<const double> fhat, int N) {
    if (static_cast<int>(fhat.size()) < N) throw std::invalid_argument("weights_W: need F_hat^(3..N+2)");
    std::vector<double> w(N + 1, 0.0);
    w[0] = 1.0;
    for (int m = 1; m <= N; ++m) {
        double acc = 0.0;
        for (int k = 1; k <= m; ++k) { // G_=(k,m) empty for k > m since l(pi) >= k
            double inner = 0.0;
            for (const ExpansionMap& pi : maps_G(k, N, MapFilter::EllEqual, m)) {
                double prod = 1.0;
                for (int v : pi.values) prod *= fhat[v - 3] / static_cast<double>(factorial(v));
                inner += prod;
            }
            const double sign = (k % 2 == 0) ? 1.0 : -1.0;
            acc += sign / static_cast<double>(factorial(k)) * inner;
        }
        w[m] = acc;
    }
    return w;
}

FormalSeries series_multiply(const FormalSeries& a, const FormalSeries& b) {
    FormalSeries out(a.order());
    for (int i = 0; i <= a.order(); ++i)
        for (int j = 0; i + j <= a.order() && j <= b.order(); ++j)
            out.c[i + j] += a.c[i] * b.c[j];
    return out;
}

FormalSeries series_exp_truncate(const FormalSeries& s) {
    if (s.c.empty() || s.c[0] != 0.0)
        throw std::invalid_argument("series_exp_truncate: constant term must be zero");
    FormalSeries out(s.order());
    out.c[0] = 1.0;
    FormalSeries power(s.order());
    power.c[0] = 1.0;
    for (int k = 1; k <= s.order(); ++k) {
        power = series_multiply(power, s);
        const double invfact = 1.0 / static_cast<double>(factorial(k));
        for (int j = 0; j <= s.order(); ++j) out.c[j] += invfact * power.c[j];
    }
    return out;
}

} // namespace gpam
