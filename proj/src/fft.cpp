#include "gpam/fft.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace gpam {

namespace {

struct FftPlan {
    int n = 0;
    std::vector<int> bitrev;
    std::vector<std::complex<double>> twiddle_fwd; // exp(-2*pi*i m / len) per stage, flattened
    std::vector<std::complex<double>> twiddle_inv;

    explicit FftPlan(int n_) : n(n_), bitrev(n_) {
        int logn = 0;
        while ((1 << logn) < n) ++logn;
        for (int i = 0; i < n; ++i) {
            int r = 0;
            for (int b = 0; b < logn; ++b)
                if (i & (1 << b)) r |= 1 << (logn - 1 - b);
            bitrev[i] = r;
        }
        twiddle_fwd.reserve(n);
        twiddle_inv.reserve(n);
        for (int len = 2; len <= n; len <<= 1) {
            for (int m = 0; m < len / 2; ++m) {
                const double ang = 2.0 * M_PI * m / len;
                twiddle_fwd.emplace_back(std::cos(ang), -std::sin(ang));
                twiddle_inv.emplace_back(std::cos(ang), std::sin(ang));
            }
        }
    }
};

const FftPlan& plan_for(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<FftPlan>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
    return *it->second;
}

void fft1(std::complex<double>* x, int n, const FftPlan& plan, bool inverse) {
    for (int i = 0; i < n; ++i) {
        const int r = plan.bitrev[i];
        if (i < r) std::swap(x[i], x[r]);
    }
    const auto& tw = inverse ? plan.twiddle_inv : plan.twiddle_fwd;
    std::size_t toff = 0;
    for (int len = 2; len <= n; len <<= 1) {
        const int half = len / 2;
        for (int i = 0; i < n; i += len) {
            for (int m = 0; m < half; ++m) {
                const std::complex<double> w = tw[toff + m];
                const std::complex<double> u = x[i + m];
                const std::complex<double> t = w * x[i + m + half];
                x[i + m] = u + t;
                x[i + m + half] = u - t;
            }
        }
        toff += half;
    }
}

} // namespace

void fft2(std::vector<std::complex<double>>& data, int n, bool inverse) {
    const FftPlan& plan = plan_for(n);
    // rows
    for (int r = 0; r < n; ++r) fft1(data.data() + static_cast<std::size_t>(r) * n, n, plan, inverse);
    // columns, via transpose-scratch per column
    std::vector<std::complex<double>> col(n);
    for (int c = 0; c < n; ++c) {
        for (int r = 0; r < n; ++r) col[r] = data[static_cast<std::size_t>(r) * n + c];
        fft1(col.data(), n, plan, inverse);
        for (int r = 0; r < n; ++r) data[static_cast<std::size_t>(r) * n + c] = col[r];
    }
}

Spectrum forward_transform(const Field& f) {
    if (!field_finite(f)) throw std::domain_error("forward_transform: non-finite input");
    const int n = f.grid.n;
    Spectrum s(f.grid);
    for (std::size_t i = 0; i < f.size(); ++i) s.c[i] = f.v[i];
    fft2(s.c, n, false);
    const double inv = 1.0 / (static_cast<double>(n) * n);
    for (auto& z : s.c) z *= inv;
    enforce_hermitian(s);
    return s;
}

Field inverse_transform(const Spectrum& s) {
    const int n = s.grid.n;
    std::vector<std::complex<double>> work = s.c;
    fft2(work, n, true);
    Field f(s.grid);
    for (std::size_t i = 0; i < f.size(); ++i) f.v[i] = work[i].real();
    return f;
}

void enforce_hermitian(Spectrum& s) {
    const int n = s.grid.n;
    for (int a1 = 0; a1 < n; ++a1) {
        const int b1 = (n - a1) % n;
        for (int a2 = 0; a2 < n; ++a2) {
            const int b2 = (n - a2) % n;
            if (a1 > b1 || (a1 == b1 && a2 > b2)) continue; // handled by partner
            auto& z = s.c[s.grid.flat(a1, a2)];
            if (a1 == b1 && a2 == b2) {
                z = std::complex<double>(z.real(), 0.0);
            } else {
                auto& w = s.c[s.grid.flat(b1, b2)];
                const std::complex<double> avg = 0.5 * (z + std::conj(w));
                z = avg;
                w = std::conj(avg);
            }
        }
    }
}

namespace ref {

Spectrum naive_forward_transform(const Field& f) {
    const int n = f.grid.n;
    Spectrum s(f.grid);
    for (int a1 = 0; a1 < n; ++a1) {
        for (int a2 = 0; a2 < n; ++a2) {
            std::complex<double> acc = 0.0;
            for (int j1 = 0; j1 < n; ++j1) {
                for (int j2 = 0; j2 < n; ++j2) {
                    const double ang = -2.0 * M_PI * (double(a1) * j1 + double(a2) * j2) / n;
                    acc += f(j1, j2) * std::complex<double>(std::cos(ang), std::sin(ang));
                }
            }
            s.at_index(a1, a2) = acc / (static_cast<double>(n) * n);
        }
    }
    return s;
}

} // namespace ref

} // namespace gpam
