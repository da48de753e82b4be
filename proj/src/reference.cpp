#include "gpam/reference.hpp"

#include "gpam/noise.hpp"

namespace gpam::ref {

void field_axpy(Field& a, double s, const Field& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.v[i] += s * b.v[i];
}

void field_multiply_inplace(Field& a, const Field& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a.v[i] *= b.v[i];
}

std::vector<std::vector<double>> sample_table(int nsamples, int width,
                                              const std::function<std::vector<double>(int, std::uint64_t)>& fn,
                                              std::uint64_t seed) {
    std::vector<std::vector<double>> out(nsamples);
    for (int i = 0; i < nsamples; ++i) {
        out[i] = fn(i, hash64(seed, i));
        if (static_cast<int>(out[i].size()) != width)
            throw std::logic_error("ref::sample_table: row width mismatch");
    }
    return out;
}

} // namespace gpam::ref
