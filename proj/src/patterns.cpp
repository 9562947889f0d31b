#include "dpholo/patterns.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dpholo/optics.hpp"

namespace dpholo {

namespace {

struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double symmetric() { return 2.0 * unit() - 1.0; }
};

inline int wrapped_bin(int k, int n) { return k <= n / 2 ? k : k - n; }

}  // namespace

ComplexField band_limited_field(int width, int height, double band_cycles_per_px,
                                std::uint64_t seed, double max_modulus) {
    if (width < 2 || height < 2)
        throw std::invalid_argument("band_limited_field: dimensions must be at least 2x2");
    if (!(band_cycles_per_px > 0.0 && band_cycles_per_px <= 0.5))
        throw std::invalid_argument("band_limited_field: band must be in (0, 0.5]");
    SplitMix64 rng(seed);
    CplxGrid spec(width, height, Cplx(0.0, 0.0));
    double power = 0.0;
    for (int r = 0; r < height; ++r) {
        const double fy = static_cast<double>(wrapped_bin(r, height)) / height;
        for (int c = 0; c < width; ++c) {
            const double fx = static_cast<double>(wrapped_bin(c, width)) / width;
            if (fx * fx + fy * fy > band_cycles_per_px * band_cycles_per_px) continue;
            if (r == 0 && c == 0) continue;
            const Cplx a(rng.symmetric(), rng.symmetric());
            spec(r, c) = a;
            power += std::norm(a);
        }
    }
    // a dominant zero-frequency term keeps the modulus clear of zero
    spec(0, 0) = Cplx(3.0 * std::sqrt(power), 0.0);

    CplxGrid field = inverse_spectrum(spec);
    double peak = 0.0;
    for (std::size_t i = 0; i < field.size(); ++i)
        peak = std::max(peak, std::abs(field.data()[i]));
    const double gain = peak > 0.0 ? max_modulus / peak : 1.0;
    for (std::size_t i = 0; i < field.size(); ++i) field.data()[i] *= gain;
    return ComplexField(std::move(field));
}

AmplitudeMap test_chart(int width, int height, double band_cycles_per_px, std::uint64_t seed) {
    const ComplexField f = band_limited_field(width, height, band_cycles_per_px, seed, 1.0);
    RealGrid a(width, height);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            a(i, j) = std::abs(f(i, j));
            lo = std::min(lo, a(i, j));
            hi = std::max(hi, a(i, j));
        }
    }
    const double out_lo = 0.08 * kAmpMax, out_hi = 0.95 * kAmpMax;
    const double gain = hi > lo ? (out_hi - out_lo) / (hi - lo) : 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        a.data()[i] = out_lo + (a.data()[i] - lo) * gain;
    return AmplitudeMap(std::move(a));
}

PhaseElement ramp_blob_phase(int width, int height, std::uint64_t seed) {
    SplitMix64 rng(seed);
    struct Blob {
        double ci, cj, amp, inv2s2;
    };
    Blob blobs[3];
    for (Blob& b : blobs) {
        b.ci = rng.unit() * height;
        b.cj = rng.unit() * width;
        b.amp = 1.2 * rng.symmetric();
        const double sigma = (0.1 + 0.1 * rng.unit()) * std::min(width, height);
        b.inv2s2 = 1.0 / (2.0 * sigma * sigma);
    }
    RealGrid g(width, height);
    for (int i = 0; i < height; ++i) {
        for (int j = 0; j < width; ++j) {
            double p = -kPi + kTwoPi * j / width;
            for (const Blob& b : blobs) {
                const double d2 = (i - b.ci) * (i - b.ci) + (j - b.cj) * (j - b.cj);
                p += b.amp * std::exp(-d2 * b.inv2s2);
            }
            g(i, j) = wrap_phase(p);
        }
    }
    return PhaseElement(std::move(g));
}

}  // namespace dpholo
