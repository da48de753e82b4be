#pragma once

#include <cstddef>
#include <stdexcept>

namespace gpam {

// Uniform grid on the unit torus T^2 with n nodes per axis.
// Wavenumbers run through {-n/2, ..., n/2-1} on each axis; storage order is
// the usual FFT layout (index a <-> wavenumber a for a < n/2, a-n otherwise).
struct TorusGrid {
    int n = 0;

    TorusGrid() = default;
    explicit TorusGrid(int n_) : n(n_) {
        if (n <= 0 || n % 2 != 0)
            throw std::invalid_argument("TorusGrid: n must be positive and even");
        if ((n & (n - 1)) != 0)
            throw std::invalid_argument("TorusGrid: n must be a power of two");
    }

    double spacing() const { return 1.0 / n; }
    std::size_t nodes() const { return static_cast<std::size_t>(n) * n; }

    int wavenumber(int a) const { return a < n / 2 ? a : a - n; }
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    // node (i1,i2) lives at x = (i1/n, i2/n), flattened row-major
    std::size_t flat(int i1, int i2) const {
        return static_cast<std::size_t>(i1) * n + i2;
    }

    bool operator==(const TorusGrid&) const = default;
};

} // namespace gpam
