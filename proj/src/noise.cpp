#include "gpam/noise.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace gpam {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

std::uint64_t hash64(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t x = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
    return splitmix64(x);
}

GaussianStream::GaussianStream(std::uint64_t seed) {
    // xoshiro256++ seeded through splitmix64
    std::uint64_t s = seed;
    for (auto& w : state_) w = splitmix64(s);
}

double GaussianStream::uniform01() {
    // xoshiro256++ step
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return (static_cast<double>(result >> 11) + 1.0) * 0x1.0p-53; // in (0,1]
}

double GaussianStream::next() {
    if (have_cached_) {
        have_cached_ = false;
        return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
}

NoiseRealization sample_white_noise(const TorusGrid& g, std::uint64_t seed) {
    NoiseRealization xi{g, std::vector<std::complex<double>>(g.nodes()), seed};
    GaussianStream rng(seed);
    const int n = g.n;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int a1 = 0; a1 < n; ++a1) {
        const int b1 = (n - a1) % n;
        for (int a2 = 0; a2 < n; ++a2) {
            const int b2 = (n - a2) % n;
            if (a1 > b1 || (a1 == b1 && a2 > b2)) continue;
            if (a1 == b1 && a2 == b2) {
                xi.coeffs[g.flat(a1, a2)] = rng.next(); // self-conjugate mode, real
            } else {
                const double re = rng.next();
                const double im = rng.next();
                const std::complex<double> z(re * inv_sqrt2, im * inv_sqrt2);
                xi.coeffs[g.flat(a1, a2)] = z;
                xi.coeffs[g.flat(b1, b2)] = std::conj(z);
            }
        }
    }
    return xi;
}

NoiseRealization scaled_noise(const NoiseRealization& xi, double eps) {
    NoiseRealization out = xi;
    for (auto& z : out.coeffs) z *= eps;
    return out;
}

double pair(const NoiseRealization& xi, const CMFunction& h) {
    if (!(xi.grid == h.grid)) throw std::invalid_argument("pair: grid mismatch");
    const Spectrum hs = forward_transform(h);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < hs.c.size(); ++i) acc += std::conj(hs.c[i]) * xi.coeffs[i];
    return acc.real();
}

Field mollified_noise_field(const NoiseRealization& xi, const MollifierSpec& m) {
    Spectrum s(xi.grid);
    s.c = xi.coeffs;
    apply_multiplier(s, mollifier_multiplier(xi.grid, m));
    return inverse_transform(s);
}

RenormConstant renorm_constant(const TorusGrid& g, const MollifierSpec& m) {
    const MultiplierTable chi = mollifier_multiplier(g, m);
    const MultiplierTable green = green_multiplier(g);
    double c = 0.0;
    for (std::size_t i = 0; i < chi.size(); ++i) c += chi[i] * chi[i] * green[i];
    return RenormConstant{m.delta, c};
}

SecondOrderObject second_order_object(const NoiseRealization& xi, const MollifierSpec& m,
                                      double c_delta) {
    Spectrum s(xi.grid);
    s.c = xi.coeffs;
    apply_multiplier(s, mollifier_multiplier(xi.grid, m));
    Spectrum ks = s;
    apply_multiplier(ks, green_multiplier(xi.grid));

    SecondOrderObject obj;
    obj.noise_delta = inverse_transform(s);
    obj.green_noise = inverse_transform(ks);
    obj.value = dealias(field_product(obj.green_noise, obj.noise_delta));
    for (auto& x : obj.value.v) x -= c_delta;
    obj.c_delta = c_delta;
    return obj;
}

namespace {

// C^2 bump on the unit disk, (1-r^2)^3 scaled to keep |phi|_{C^2} <= 1
double bump_profile(double r) {
    if (r >= 1.0) return 0.0;
    const double q = 1.0 - r * r;
    return q * q * q / 6.0;
}

// spectrum of the rescaled bump lambda^{-2} phi(.|/lambda) centred at 0
const Spectrum& bump_spectrum(const TorusGrid& g, int level) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<Spectrum>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(g.n, level);
    auto it = cache.find(key);
    if (it == cache.end()) {
        const double lambda = std::pow(2.0, -level);
        Field b(g);
        for (int i1 = 0; i1 < g.n; ++i1) {
            double x1 = static_cast<double>(i1) / g.n;
            if (x1 > 0.5) x1 -= 1.0;
            for (int i2 = 0; i2 < g.n; ++i2) {
                double x2 = static_cast<double>(i2) / g.n;
                if (x2 > 0.5) x2 -= 1.0;
                const double r = std::sqrt(x1 * x1 + x2 * x2) / lambda;
                b(i1, i2) = bump_profile(r) / (lambda * lambda);
            }
        }
        it = cache.emplace(key, std::make_unique<Spectrum>(forward_transform(b))).first;
    }
    return *it->second;
}

// P(z) = <f, phi_z^lambda> for every node z at once (cross-correlation)
Field correlate_with_bump(const Spectrum& f, const Spectrum& bump) {
    Spectrum prod(f.grid);
    for (std::size_t i = 0; i < prod.c.size(); ++i) prod.c[i] = f.c[i] * std::conj(bump.c[i]);
    return inverse_transform(prod);
}

} // namespace

ModelNormEstimate model_norm_approx(const NoiseRealization& xi, const MollifierSpec& m,
                                    double c_delta, const ModelNormOptions& opt) {
    const TorusGrid& g = xi.grid;
    const SecondOrderObject obj = second_order_object(xi, m, c_delta);
    const Spectrum noise_spec = forward_transform(obj.noise_delta);
    const Spectrum object_spec = forward_transform(obj.value);

    ModelNormEstimate est;
    est.scale_levels = opt.scale_levels;
    est.base_stride = opt.base_stride;
    for (int level = 1; level <= opt.scale_levels; ++level) {
        const double lambda = std::pow(2.0, -level);
        if (lambda < 2.0 * g.spacing()) break; // unresolvable scale
        const Spectrum& bump = bump_spectrum(g, level);
        const Field p_noise = correlate_with_bump(noise_spec, bump);
        const Field p_object = correlate_with_bump(object_spec, bump);
        const double w_noise = std::pow(lambda, 1.0 + opt.kappa);
        const double w_second = std::pow(lambda, 2.0 * opt.kappa);
        for (int i1 = 0; i1 < g.n; i1 += opt.base_stride) {
            for (int i2 = 0; i2 < g.n; i2 += opt.base_stride) {
                const std::size_t z = g.flat(i1, i2);
                est.norm_noise = std::max(est.norm_noise, w_noise * std::abs(p_noise.v[z]));
                // recentre: subtract (K*xi_delta)(z) <xi_delta, phi_z>
                const double recentred = p_object.v[z] - obj.green_noise.v[z] * p_noise.v[z];
                est.norm_second = std::max(est.norm_second, w_second * std::abs(recentred));
            }
        }
    }
    est.combined = std::max(est.norm_noise, std::sqrt(est.norm_second));
    return est;
}

} // namespace gpam
