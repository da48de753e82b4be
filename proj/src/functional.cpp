#include "gpam/functional.hpp"

#include "gpam/combinatorics.hpp"

namespace gpam {

namespace {

// d^k/ds^k arctan(s) = (k-1)! cos^k(y) sin(k(y + pi/2)), y = arctan(s)
double arctan_deriv(double s, int k) {
    if (k == 0) return std::atan(s);
    const double y = std::atan(s);
    return static_cast<double>(factorial(k - 1)) * std::pow(std::cos(y), k) *
           std::sin(k * (y + M_PI / 2.0));
}

// d^k tanh expressed as a polynomial in y = tanh(s):
// P_1 = 1 - y^2, P_{k+1} = P_k' * (1 - y^2)
const std::vector<double>& tanh_poly(int k) {
    static std::vector<std::vector<double>> cache; // cache[k-1] = coeffs of P_k
    if (cache.empty()) cache.push_back({1.0, 0.0, -1.0});
    while (static_cast<int>(cache.size()) < k) {
        const std::vector<double>& p = cache.back();
        std::vector<double> dp(p.size() - 1, 0.0);
        for (std::size_t j = 1; j < p.size(); ++j) dp[j - 1] = p[j] * static_cast<double>(j);
        std::vector<double> next(dp.size() + 2, 0.0);
        for (std::size_t j = 0; j < dp.size(); ++j) {
            next[j] += dp[j];        // * 1
            next[j + 2] -= dp[j];    // * (-y^2)
        }
        cache.push_back(std::move(next));
    }
    return cache[k - 1];
}

double tanh_deriv(double s, int k) {
    const double y = std::tanh(s);
    if (k == 0) return y;
    const std::vector<double>& p = tanh_poly(k);
    double acc = 0.0;
    for (std::size_t j = p.size(); j-- > 0;) acc = acc * y + p[j];
    return acc;
}

// Phi(s) = int_0^s exp(-t^2) dt; Phi^{(k)}(s) = (-1)^{k-1} H_{k-1}(s) e^{-s^2}
double erf_deriv(double s, int k) {
    if (k == 0) return 0.5 * std::sqrt(M_PI) * std::erf(s);
    double hprev = 1.0, h = 2.0 * s; // H_0, H_1
    if (k - 1 == 0) return std::exp(-s * s);
    for (int n = 1; n < k - 1; ++n) {
        const double hnext = 2.0 * s * h - 2.0 * n * hprev;
        hprev = h;
        h = hnext;
    }
    const double sign = ((k - 1) % 2 == 0) ? 1.0 : -1.0;
    return sign * h * std::exp(-s * s);
}

double profile_sup(const std::string& kind, int k) {
    if (kind == "arctan") return k == 0 ? M_PI / 2.0 : static_cast<double>(factorial(k - 1));
    // max over a fine grid; the built-in profiles decay at infinity
    double m = 0.0;
    for (int i = -4000; i <= 4000; ++i) {
        const double s = i / 200.0;
        const double v = (kind == "tanh") ? tanh_deriv(s, k) : erf_deriv(s, k);
        m = std::max(m, std::abs(v));
    }
    return m;
}

} // namespace

TerminalFunctional::TerminalFunctional(std::string kind, Field psi)
    : kind_(std::move(kind)), psi_(std::move(psi)) {
    if (kind_ != "arctan" && kind_ != "tanh" && kind_ != "erf")
        throw std::invalid_argument("TerminalFunctional: unknown kind '" + kind_ + "'");
}

double TerminalFunctional::profile(double s, int order) const {
    if (kind_ == "arctan") return arctan_deriv(s, order);
    if (kind_ == "tanh") return tanh_deriv(s, order);
    return erf_deriv(s, order);
}

double TerminalFunctional::evaluate(const Trajectory& u) const { return profile(observe(u), 0); }

double TerminalFunctional::derivative(const Trajectory& base,
                                      const std::vector<const Trajectory*>& dirs) const {
    const int k = static_cast<int>(dirs.size());
    double out = profile(observe(base), k);
    for (const Trajectory* y : dirs) out *= l2_inner(y->terminal(), psi_);
    return out;
}

std::vector<double> TerminalFunctional::derivative_bounds(int kmax) const {
    // |<y(T),psi>| <= ||y||_inf ||psi||_{L^1}
    double psi_l1 = 0.0;
    for (double x : psi_.v) psi_l1 += std::abs(x);
    psi_l1 *= psi_.grid.spacing() * psi_.grid.spacing();
    std::vector<double> bounds(kmax + 1, 0.0);
    for (int k = 1; k <= kmax; ++k)
        bounds[k] = profile_sup(kind_, k) * std::pow(psi_l1, k);
    return bounds;
}

std::shared_ptr<Functional> builtin_functional(const std::string& kind, Field psi) {
    return std::make_shared<TerminalFunctional>(kind, std::move(psi));
}

double fhat(int m, const Functional& F, const TaylorHierarchy& hier) {
    if (m < 1 || m > hier.order) throw std::invalid_argument("fhat: order not available");
    double total = 0.0;
    for (int k = 1; k <= m; ++k) {
        double inner = 0.0;
        for (const Composition& comp : compositions(k, m)) {
            std::vector<const Trajectory*> dirs(k);
            double invfacts = 1.0;
            for (int j = 0; j < k; ++j) {
                dirs[j] = &hier.terms[comp[j] - 1];
                invfacts /= static_cast<double>(factorial(comp[j]));
            }
            inner += invfacts * F.derivative(hier.skeleton, dirs);
        }
        total += inner / static_cast<double>(factorial(k));
    }
    return static_cast<double>(factorial(m)) * total;
}

FunctionalJet functional_jet(const Functional& F, const TaylorHierarchy& hier, int order) {
    FunctionalJet jet;
    jet.base = F.evaluate(hier.skeleton);
    jet.fhat.resize(order);
    for (int m = 1; m <= order; ++m) jet.fhat[m - 1] = fhat(m, F, hier);
    return jet;
}

double qhat(const Functional& F, const TaylorHierarchy& hier) { return fhat(2, F, hier); }

double qhat_deterministic(const Functional& F, const SolveContext& ctx, const CMFunction& h,
                          const CMFunction& k) {
    const TaylorHierarchy hier = deterministic_hierarchy(ctx, h, k, 2);
    return fhat(2, F, hier);
}

FunctionalRemainder functional_remainder(const Functional& F, const SolveContext& ctx,
                                         const CMFunction& h, double eps,
                                         const NoiseRealization& xi, int N) {
    const Trajectory shifted = solve_shifted(ctx, h, eps, xi);
    FunctionalRemainder rem;
    if (shifted.exploded) {
        rem.exploded = true;
        return rem;
    }
    const TaylorHierarchy hier = taylor_hierarchy(ctx, h, xi, N + 2);
    const FunctionalJet jet = functional_jet(F, hier, N + 2);
    double val = F.evaluate(shifted) - jet.base;
    double epspow = 1.0;
    for (int m = 1; m <= N + 2; ++m) {
        epspow *= eps;
        val -= epspow / static_cast<double>(factorial(m)) * jet.fhat[m - 1];
    }
    rem.value = val;
    return rem;
}

} // namespace gpam
