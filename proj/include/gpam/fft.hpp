#pragma once

#include "gpam/field.hpp"

namespace gpam {

// In-place 2D complex DFT in FFT storage order (unnormalised):
//   forward:  X(a) = sum_j x(j) exp(-2*pi*i a.j / n)
//   inverse:  x(j) = sum_a X(a) exp(+2*pi*i a.j / n)
void fft2(std::vector<std::complex<double>>& data, int n, bool inverse);

// Real-field transforms with the normalisation of Spectrum
// (values -> coefficients divides by n^2). forward_transform enforces exact
// Hermitian symmetry coeff(-k) = conj(coeff(k)) by averaging.
Spectrum forward_transform(const Field& f);
Field inverse_transform(const Spectrum& s);

void enforce_hermitian(Spectrum& s);

namespace ref {
// O(n^4) direct DFT of a real field, serial; test oracle for forward_transform
Spectrum naive_forward_transform(const Field& f);
} // namespace ref

} // namespace gpam
