#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "gpam/grid.hpp"

namespace gpam {

// Real scalar field on a TorusGrid, row-major node values.
struct Field {
    TorusGrid grid;
    std::vector<double> v;

    Field() = default;
    explicit Field(TorusGrid g, double fill = 0.0) : grid(g), v(g.nodes(), fill) {}

    double& operator()(int i1, int i2) { return v[grid.flat(i1, i2)]; }
    double operator()(int i1, int i2) const { return v[grid.flat(i1, i2)]; }

    std::size_t size() const { return v.size(); }
};

// Complex Fourier coefficient table in FFT storage order, normalised so that
// f(x) = sum_k c(k) exp(2*pi*i k.x). With this convention the coefficients of
// an L^2-normalised plane wave are O(1) and Parseval reads
// <f,g>_{L^2} = sum_k conj(c_f(k)) c_g(k).
struct Spectrum {
    TorusGrid grid;
    std::vector<std::complex<double>> c;

    Spectrum() = default;
    explicit Spectrum(TorusGrid g) : grid(g), c(g.nodes()) {}

    std::complex<double>& at_index(int a1, int a2) { return c[grid.flat(a1, a2)]; }
    const std::complex<double>& at_index(int a1, int a2) const { return c[grid.flat(a1, a2)]; }

    // access by signed wavenumber
    std::complex<double>& at_mode(int k1, int k2) {
        return c[grid.flat(grid.index_of(k1), grid.index_of(k2))];
    }
    const std::complex<double>& at_mode(int k1, int k2) const {
        return c[grid.flat(grid.index_of(k1), grid.index_of(k2))];
    }
};

// elementwise kernels; parallelised over nodes for large grids
void field_add(Field& a, const Field& b);
void field_axpy(Field& a, double s, const Field& b);   // a += s*b
void field_scale(Field& a, double s);
Field field_sum(const Field& a, const Field& b);
Field field_scaled(const Field& a, double s);
Field field_product(const Field& a, const Field& b);   // raw pointwise product
void field_multiply_inplace(Field& a, const Field& b);

bool field_finite(const Field& a);
double field_max_abs(const Field& a);

// discrete L^2(T^2) inner product and norm (spacing^2-weighted sums);
// deterministic serial reductions
double l2_inner(const Field& a, const Field& b);
double l2_norm(const Field& a);

// the Cameron-Martin space H = L^2(T^2) is represented by plain fields
using CMFunction = Field;

inline double h_inner(const CMFunction& a, const CMFunction& b) { return l2_inner(a, b); }
inline double h_norm(const CMFunction& a) { return l2_norm(a); }

// named analytic fields used in configs and tests
Field field_constant(TorusGrid g, double c);
Field field_cos_mode(TorusGrid g, int k1, int k2, double amplitude = 1.0);

} // namespace gpam
