#include "gpam/spectral.hpp"

namespace gpam {

namespace {
double bump_piece(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }
} // namespace

double smooth_cutoff(double r) {
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    const double t = (1.0 - r) / 0.5; // 1 at r=1/2, 0 at r=1
    const double a = bump_piece(t);
    const double b = bump_piece(1.0 - t);
    return a / (a + b);
}

MultiplierTable heat_multiplier(const TorusGrid& g, double dt) {
    MultiplierTable t(g.nodes());
    for (int a1 = 0; a1 < g.n; ++a1) {
        const double k1 = g.wavenumber(a1);
        for (int a2 = 0; a2 < g.n; ++a2) {
            const double k2 = g.wavenumber(a2);
            t[g.flat(a1, a2)] = std::exp(-4.0 * M_PI * M_PI * (k1 * k1 + k2 * k2) * dt);
        }
    }
    return t;
}

MultiplierTable green_multiplier(const TorusGrid& g) {
    MultiplierTable t(g.nodes());
    for (int a1 = 0; a1 < g.n; ++a1) {
        const double k1 = g.wavenumber(a1);
        for (int a2 = 0; a2 < g.n; ++a2) {
            const double k2 = g.wavenumber(a2);
            const double ksq = k1 * k1 + k2 * k2;
            t[g.flat(a1, a2)] = ksq > 0.0 ? 1.0 / (4.0 * M_PI * M_PI * ksq) : 0.0;
        }
    }
    return t;
}

MultiplierTable mollifier_multiplier(const TorusGrid& g, const MollifierSpec& m) {
    m.validate(g);
    MultiplierTable t(g.nodes());
    for (int a1 = 0; a1 < g.n; ++a1) {
        const double k1 = g.wavenumber(a1);
        for (int a2 = 0; a2 < g.n; ++a2) {
            const double k2 = g.wavenumber(a2);
            t[g.flat(a1, a2)] = m.multiplier(std::sqrt(k1 * k1 + k2 * k2));
        }
    }
    return t;
}

MultiplierTable dealias_mask(const TorusGrid& g) {
    MultiplierTable t(g.nodes());
    const int kmax = g.n / 3;
    for (int a1 = 0; a1 < g.n; ++a1) {
        const int k1 = g.wavenumber(a1);
        for (int a2 = 0; a2 < g.n; ++a2) {
            const int k2 = g.wavenumber(a2);
            t[g.flat(a1, a2)] = (std::abs(k1) <= kmax && std::abs(k2) <= kmax) ? 1.0 : 0.0;
        }
    }
    return t;
}

MultiplierTable laplacian_multiplier(const TorusGrid& g) {
    MultiplierTable t(g.nodes());
    for (int a1 = 0; a1 < g.n; ++a1) {
        const double k1 = g.wavenumber(a1);
        for (int a2 = 0; a2 < g.n; ++a2) {
            const double k2 = g.wavenumber(a2);
            t[g.flat(a1, a2)] = -4.0 * M_PI * M_PI * (k1 * k1 + k2 * k2);
        }
    }
    return t;
}

void apply_multiplier(Spectrum& s, const MultiplierTable& t) {
    for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] *= t[i];
}

Field apply_multiplier(const Field& f, const MultiplierTable& t) {
    Spectrum s = forward_transform(f);
    apply_multiplier(s, t);
    return inverse_transform(s);
}

Field heat_step(const Field& f, double dt) {
    if (dt < 0.0) throw std::invalid_argument("heat_step: dt must be >= 0");
    return apply_multiplier(f, heat_multiplier(f.grid, dt));
}

Field green_convolve(const Field& f) { return apply_multiplier(f, green_multiplier(f.grid)); }

Field mollify(const Field& f, const MollifierSpec& m) {
    return apply_multiplier(f, mollifier_multiplier(f.grid, m));
}

Field dealias(const Field& f) { return apply_multiplier(f, dealias_mask(f.grid)); }

} // namespace gpam
