#pragma once

#include <cstdint>

#include "gpam/spectral.hpp"

namespace gpam {

// splitmix64; the documented seed mix for derived streams
std::uint64_t hash64(std::uint64_t seed, std::uint64_t index);

// Deterministic standard-normal stream: xoshiro256++ uniforms through a
// fixed-consumption Box-Muller (two uniforms -> two normals, no rejection),
// so realisations are reproducible bit-for-bit across runs.
class GaussianStream {
  public:
    explicit GaussianStream(std::uint64_t seed);
    double next();

  private:
    std::uint64_t state_[4];
    double cached_ = 0.0;
    bool have_cached_ = false;
    double uniform01();
};

// One sample of spatial white noise: Hermitian-symmetric complex Gaussian
// Fourier coefficients with E|coeff(k)|^2 = 1 per mode, so <xi, f> has
// variance ||f||^2_{L^2}.
struct NoiseRealization {
    TorusGrid grid;
    std::vector<std::complex<double>> coeffs; // FFT storage order
    std::uint64_t seed = 0;
};

NoiseRealization sample_white_noise(const TorusGrid& g, std::uint64_t seed);
NoiseRealization scaled_noise(const NoiseRealization& xi, double eps);

// Paley-Wiener pairing xi(h) = sum_k conj(h_hat(k)) xi_hat(k), real valued
double pair(const NoiseRealization& xi, const CMFunction& h);

// mollified realisation xi_delta as a real-space field
Field mollified_noise_field(const NoiseRealization& xi, const MollifierSpec& m);

struct RenormConstant {
    double delta = 0.0;
    double value = 0.0;
};

// c_delta = <K_delta, rho_delta> = sum_{k != 0} profile(delta|k|)^2 m(k),
// the zero-mean periodic Green multiplier m playing the role of K
RenormConstant renorm_constant(const TorusGrid& g, const MollifierSpec& m);

// (K * xi_delta) xi_delta - c_delta with the dealiased product; base-point-free
// representation, recentring happens in the norm estimate below
struct SecondOrderObject {
    Field value;          // dealias((K*xi_delta) * xi_delta) - c_delta
    Field green_noise;    // K * xi_delta, kept for base-point recentring
    Field noise_delta;    // xi_delta
    double c_delta = 0.0;
};

SecondOrderObject second_order_object(const NoiseRealization& xi, const MollifierSpec& m,
                                      double c_delta);

// finite-frame surrogate of the homogeneous model norm
struct ModelNormEstimate {
    double norm_noise = 0.0;    // first-order part, degree -1-kappa
    double norm_second = 0.0;   // second-order part, degree -2*kappa
    double combined = 0.0;      // max(norm_noise, sqrt(norm_second))
    int scale_levels = 0;
    int base_stride = 0;
};

struct ModelNormOptions {
    int scale_levels = 4; // dyadic scales 2^-1 ... 2^-J
    int base_stride = 4;  // base points on every stride-th node
    double kappa = 0.05;
};

ModelNormEstimate model_norm_approx(const NoiseRealization& xi, const MollifierSpec& m,
                                    double c_delta, const ModelNormOptions& opt = {});

} // namespace gpam
