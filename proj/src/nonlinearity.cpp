#include "gpam/nonlinearity.hpp"

#include <complex>
#include <stdexcept>

#include "gpam/combinatorics.hpp"

namespace gpam {

namespace {

double cos_deriv(double u, int k) { return std::cos(u + k * M_PI / 2.0); }

// d^k/du^k 1/(1+u^2) = (-1)^k k! Im[(u - i)^{-(k+1)}]
double rational_deriv(double u, int k) {
    const std::complex<double> z = 1.0 / std::complex<double>(u, -1.0);
    std::complex<double> p = z;
    for (int j = 0; j < k; ++j) p *= z;
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    return sign * static_cast<double>(factorial(k)) * p.imag();
}

} // namespace

NonlinearitySpec builtin_nonlinearity(const std::string& kind) {
    if (kind == "cos") {
        return NonlinearitySpec{
            "cos", [](double u, int k) { return cos_deriv(u, k); },
            [](int) { return 1.0; }};
    }
    if (kind == "rational") {
        return NonlinearitySpec{
            "rational", [](double u, int k) { return rational_deriv(u, k); },
            // |(u-i)^{-(k+1)}| <= 1
            [](int k) { return static_cast<double>(factorial(k)); }};
    }
    if (kind == "one") {
        return NonlinearitySpec{
            "one", [](double, int k) { return k == 0 ? 1.0 : 0.0; },
            [](int k) { return k == 0 ? 1.0 : 0.0; }};
    }
    if (kind == "zero") {
        return NonlinearitySpec{"zero", [](double, int) { return 0.0; },
                                [](int) { return 0.0; }};
    }
    throw std::invalid_argument("builtin_nonlinearity: unknown kind '" + kind + "'");
}

Field apply_nonlinearity(const NonlinearitySpec& g, const Field& u, int k) {
    Field out(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) out.v[i] = g.deriv(u.v[i], k);
    return out;
}

} // namespace gpam
