#pragma once

#include "gpam/fft.hpp"

namespace gpam {

// Smooth even cutoff: 1 on [0,1/2], 0 on [1,inf), C^infinity in between.
double smooth_cutoff(double r);

// Mollifier rho_delta = delta^{-2} rho(./delta) given through its Fourier
// multiplier rho_hat_delta(k) = profile(delta*|k|). Mass one since profile(0)=1.
struct MollifierSpec {
    double delta = 0.1;
    double (*profile)(double) = smooth_cutoff;

    void validate(const TorusGrid& g) const {
        if (delta < 2.0 * g.spacing())
            throw std::invalid_argument("MollifierSpec: delta < 2*spacing under-resolves the grid");
    }
    double multiplier(double abs_k) const { return profile(delta * abs_k); }
};

// Fourier multiplier table in FFT storage order (real, even in k)
using MultiplierTable = std::vector<double>;

MultiplierTable heat_multiplier(const TorusGrid& g, double dt);       // exp(-4 pi^2 |k|^2 dt)
MultiplierTable green_multiplier(const TorusGrid& g);                 // 1/(4 pi^2 |k|^2), 0 at k=0
MultiplierTable mollifier_multiplier(const TorusGrid& g, const MollifierSpec& m);
MultiplierTable dealias_mask(const TorusGrid& g);                     // two-thirds rule
MultiplierTable laplacian_multiplier(const TorusGrid& g);             // -4 pi^2 |k|^2

void apply_multiplier(Spectrum& s, const MultiplierTable& t);
Field apply_multiplier(const Field& f, const MultiplierTable& t);

// spec-level operations
Field heat_step(const Field& f, double dt);
Field green_convolve(const Field& f);                 // K * f, zero-mean periodic Green kernel
Field mollify(const Field& f, const MollifierSpec& m);
Field dealias(const Field& f);

} // namespace gpam
