#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "dpholo/encode.hpp"
#include "dpholo/grid.hpp"
#include "dpholo/optics.hpp"
#include "dpholo/retrieve.hpp"
#include "dpholo/slm.hpp"

namespace testutil {

using namespace dpholo;

// deterministic generator for test data
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
};

inline PhaseElement random_phase(int w, int h, std::uint64_t seed) {
    Rng rng(seed);
    RealGrid g(w, h);
    for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] = rng.range(-kPi + 1e-9, kPi);
    return PhaseElement(std::move(g));
}

inline AmplitudeMap random_amplitude(int w, int h, std::uint64_t seed) {
    Rng rng(seed);
    RealGrid g(w, h);
    for (std::size_t i = 0; i < g.size(); ++i) g.data()[i] = rng.range(0.0, kAmpMax);
    return AmplitudeMap(std::move(g));
}

inline double max_abs_diff(const CplxGrid& a, const CplxGrid& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

// Reference path for the flat-amplitude sweep: per beta, build the uniform
// hologram, render, filter, read the camera window. flat_sweep must agree
// with this to numerical precision.
inline SweepResult naive_flat_sweep(int width, int height, const std::vector<double>& betas,
                                    int cell, const CrosstalkModel& model,
                                    const FilterSpec& filter) {
    const int period = 2 * cell;
    const int w = (width / period) * period;
    const int h = (height / period) * period;
    SweepResult result;
    result.betas = betas;
    for (double b : betas) {
        const PhaseElement lead(w, h, wrap_phase(b));
        const PhaseElement lag(w, h, wrap_phase(-b));
        const PhaseElement alpha = multiplex(lead, lag, cell);
        const ComplexField device = render(alpha, cell, model);
        const ComplexField imaged = propagate(device, filter, {model.upsample, false});
        const RealGrid cam = camera_image(imaged, model.upsample);
        const int r0 = h / 4, rows = h / 2, c0 = w / 4, cols = w / 2;
        double sum = 0.0;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) sum += cam(r0 + i, c0 + j);
        result.irradiance.push_back(sum / (static_cast<double>(rows) * cols));
    }
    double peak = 0.0;
    for (double v : result.irradiance) peak = std::max(peak, v);
    if (peak > 0.0)
        for (double& v : result.irradiance) v /= peak;
    return result;
}

// Closed-form sweep irradiance for balanced grids: the iris passes only the
// zero order of the periodic structure, whose amplitude is the area-weighted
// mean of the four zone phasors.
inline double closed_form_irradiance(double beta, double realized, double border_factor) {
    const double wl = wrap_phase(beta), wg = wrap_phase(-beta);
    const Cplx core = 0.5 * (std::polar(1.0, wl) + std::polar(1.0, wg));
    const Cplx edge =
        0.5 * (std::polar(1.0, border_factor * wl) + std::polar(1.0, border_factor * wg));
    return std::norm((1.0 - realized) * core + realized * edge);
}

}  // namespace testutil
