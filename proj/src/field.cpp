#include "gpam/field.hpp"

#include <cstdint>

namespace gpam {

namespace {
// below this size the OpenMP fork/join overhead outweighs the loop
constexpr std::size_t kParallelCutoff = std::size_t(1) << 14;
} // namespace

void field_add(Field& a, const Field& b) {
    const std::size_t n = a.size();
#pragma omp parallel for if (n >= kParallelCutoff)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) a.v[i] += b.v[i];
}

void field_axpy(Field& a, double s, const Field& b) {
    const std::size_t n = a.size();
#pragma omp parallel for if (n >= kParallelCutoff)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) a.v[i] += s * b.v[i];
}

void field_scale(Field& a, double s) {
    const std::size_t n = a.size();
#pragma omp parallel for if (n >= kParallelCutoff)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) a.v[i] *= s;
}

Field field_sum(const Field& a, const Field& b) {
    Field out = a;
    field_add(out, b);
    return out;
}

Field field_scaled(const Field& a, double s) {
    Field out = a;
    field_scale(out, s);
    return out;
}

Field field_product(const Field& a, const Field& b) {
    Field out = a;
    field_multiply_inplace(out, b);
    return out;
}

void field_multiply_inplace(Field& a, const Field& b) {
    const std::size_t n = a.size();
#pragma omp parallel for if (n >= kParallelCutoff)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) a.v[i] *= b.v[i];
}

bool field_finite(const Field& a) {
    for (double x : a.v)
        if (!std::isfinite(x)) return false;
    return true;
}

double field_max_abs(const Field& a) {
    double m = 0.0;
    for (double x : a.v) m = std::max(m, std::abs(x));
    return m;
}

double l2_inner(const Field& a, const Field& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("l2_inner: grid mismatch");
    const double w = a.grid.spacing() * a.grid.spacing();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a.v[i] * b.v[i];
    return w * s;
}

double l2_norm(const Field& a) { return std::sqrt(l2_inner(a, a)); }

Field field_constant(TorusGrid g, double c) { return Field(g, c); }

Field field_cos_mode(TorusGrid g, int k1, int k2, double amplitude) {
    Field f(g);
    const double h = g.spacing();
    for (int i1 = 0; i1 < g.n; ++i1)
        for (int i2 = 0; i2 < g.n; ++i2)
            f(i1, i2) = amplitude * std::cos(2.0 * M_PI * (k1 * i1 * h + k2 * i2 * h));
    return f;
}

} // namespace gpam
