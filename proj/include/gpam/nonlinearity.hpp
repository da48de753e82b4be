#pragma once

#include <functional>
#include <string>

#include "gpam/field.hpp"

namespace gpam {

// g together with its derivatives g^{(k)}; built-ins are C_b^infinity with
// known sup bounds per derivative order
struct NonlinearitySpec {
    std::string name;
    std::function<double(double u, int k)> deriv; // k = 0 is g itself
    std::function<double(int k)> sup_bound;       // sup_u |g^{(k)}(u)|

    double operator()(double u) const { return deriv(u, 0); }
};

// kinds: "cos", "rational" (1/(1+u^2)), "one", "zero"
NonlinearitySpec builtin_nonlinearity(const std::string& kind);

// pointwise g^{(k)} applied to a field
Field apply_nonlinearity(const NonlinearitySpec& g, const Field& u, int k = 0);

} // namespace gpam
