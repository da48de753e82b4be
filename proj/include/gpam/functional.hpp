#pragma once

#include <memory>

#include "gpam/hierarchy.hpp"

namespace gpam {

// Bounded functional on path space with directional Frechet derivatives.
class Functional {
  public:
    virtual ~Functional() = default;
    virtual double evaluate(const Trajectory& u) const = 0;
    // D^(k)F|_base[dirs[0], ..., dirs[k-1]]
    virtual double derivative(const Trajectory& base,
                              const std::vector<const Trajectory*>& dirs) const = 0;
    // bounds M_k with |D^(k)F[y,..,y]| <= M_k ||y||^k, k = 1..kmax
    virtual std::vector<double> derivative_bounds(int kmax) const = 0;
};

// F(u) = Phi(<u(T), psi>) with Phi in {arctan, tanh, erf}; bounded with
// bounded derivatives of every order, exact 1-D chain rule
class TerminalFunctional : public Functional {
  public:
    TerminalFunctional(std::string kind, Field psi);

    double evaluate(const Trajectory& u) const override;
    double derivative(const Trajectory& base,
                      const std::vector<const Trajectory*>& dirs) const override;
    std::vector<double> derivative_bounds(int kmax) const override;

    double observe(const Trajectory& u) const { return l2_inner(u.terminal(), psi_); }
    double profile(double s, int order) const; // Phi^{(order)}(s)
    const Field& psi() const { return psi_; }
    const std::string& kind() const { return kind_; }

  private:
    std::string kind_;
    Field psi_;
};

std::shared_ptr<Functional> builtin_functional(const std::string& kind, Field psi);

// scalar Taylor data of F(u_hat^eps_h) at eps = 0
struct FunctionalJet {
    double base = 0.0;              // F(w_h)
    std::vector<double> fhat;       // fhat[m-1] = F_hat^(m), m = 1..order
    double qhat() const { return fhat.at(1); }
};

// F_hat^(m) = m! sum_k 1/k! sum_{i in S_k^m} D^(k)F|_{w_h}(u^(i_1)/i_1!, ...)
double fhat(int m, const Functional& F, const TaylorHierarchy& hier);
FunctionalJet functional_jet(const Functional& F, const TaylorHierarchy& hier, int order);

double qhat(const Functional& F, const TaylorHierarchy& hier);
// Q_h(L(k)): quadratic form along the canonical lift of a smooth direction
double qhat_deterministic(const Functional& F, const SolveContext& ctx, const CMFunction& h,
                          const CMFunction& k);

// R^{F;eps;N+3} = F(u_hat^eps) - F(w_h) - sum_{m<=N+2} eps^m/m! F_hat^(m)
struct FunctionalRemainder {
    double value = 0.0;
    bool exploded = false;
};
FunctionalRemainder functional_remainder(const Functional& F, const SolveContext& ctx,
                                         const CMFunction& h, double eps,
                                         const NoiseRealization& xi, int N);

} // namespace gpam
