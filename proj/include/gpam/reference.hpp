#pragma once

#include <functional>

#include "gpam/field.hpp"

namespace gpam::ref {

// Plain serial loops mirroring the OpenMP kernels in field.cpp and
// estimators.cpp. Kept for testing (the parallel paths must reproduce them
// bit-for-bit) and as the baseline in the benchmark target.

void field_axpy(Field& a, double s, const Field& b);
void field_multiply_inplace(Field& a, const Field& b);

// serial counterpart of sample_table: same seeds, same order
std::vector<std::vector<double>> sample_table(int nsamples, int width,
                                              const std::function<std::vector<double>(int, std::uint64_t)>& fn,
                                              std::uint64_t seed);

} // namespace gpam::ref
