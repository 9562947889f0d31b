#include "dpholo/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dpholo/kernels.hpp"
#include "dpholo/optics.hpp"
#include "dpholo/slm.hpp"

namespace dpholo {

double rmse_amplitude(const RealGrid& ref, const RealGrid& test) {
    if (!ref.same_shape(test))
        throw std::invalid_argument("rmse_amplitude: dimension mismatch");
    const auto [mn, mx] = std::minmax_element(ref.data(), ref.data() + ref.size());
    const double range = *mx - *mn;
    if (!(range > 0.0))
        throw std::invalid_argument("rmse_amplitude: constant reference has no dynamic range");
    const std::size_t n = ref.size();
    const double stt = kernels::dot(test.data(), test.data(), n);
    const double s = stt > 0.0 ? kernels::dot(ref.data(), test.data(), n) / stt : 0.0;
    const double srr = kernels::dot(ref.data(), ref.data(), n);
    const double srt = kernels::dot(ref.data(), test.data(), n);
    const double mse = std::max(0.0, (srr - 2.0 * s * srt + s * s * stt) / static_cast<double>(n));
    return std::sqrt(mse) / range * 100.0;
}

double rmse_phase(const PhaseElement& ref, const PhaseElement& test, const BinaryMask& support) {
    if (!ref.grid().same_shape(test.grid()) || ref.width() != support.width() ||
        ref.height() != support.height())
        throw std::invalid_argument("rmse_phase: dimension mismatch");
    Cplx mean(0.0, 0.0);
    std::size_t count = 0;
    for (int i = 0; i < ref.height(); ++i) {
        for (int j = 0; j < ref.width(); ++j) {
            if (!support(i, j)) continue;
            mean += std::polar(1.0, test(i, j) - ref(i, j));
            ++count;
        }
    }
    if (count == 0)
        throw std::invalid_argument("rmse_phase: empty support");
    const double piston = std::arg(mean);
    double ss = 0.0;
    for (int i = 0; i < ref.height(); ++i) {
        for (int j = 0; j < ref.width(); ++j) {
            if (!support(i, j)) continue;
            const double r = wrap_phase(test(i, j) - ref(i, j) - piston);
            ss += r * r;
        }
    }
    return std::sqrt(ss / static_cast<double>(count)) / kTwoPi * 100.0;
}

BinaryMask support_from_amplitude(const RealGrid& amplitude, double floor_fraction) {
    double peak = 0.0;
    for (std::size_t i = 0; i < amplitude.size(); ++i)
        peak = std::max(peak, amplitude.data()[i]);
    const double floor = peak * floor_fraction;
    Grid<std::uint8_t> g(amplitude.width(), amplitude.height());
    for (int i = 0; i < amplitude.height(); ++i)
        for (int j = 0; j < amplitude.width(); ++j)
            g(i, j) = amplitude(i, j) > floor ? 1 : 0;
    return BinaryMask(std::move(g), 1);
}

SweepResult model_curve(const std::vector<double>& betas, int cell, double eta,
                        const SimParams& sim) {
    CrosstalkModel model{eta, sim.upsample, sim.border_factor};
    FilterSpec filter;
    filter.cutoff = sim.cutoff > 0.0 ? sim.cutoff : default_cutoff(cell, false);
    return flat_sweep(sim.width, sim.height, betas, cell, model, filter);
}

namespace {

// Zone split the candidate eta rounds to; -1 when unrepresentable
// (mirrors the validation in cell_zones).
int zone_core(double eta, int side) {
    if (!(eta >= 0.0 && eta < 1.0)) return -1;
    if (eta > 0.0 && side < 2) return -1;
    const int core = static_cast<int>(std::floor(side * std::sqrt(1.0 - eta) + 0.5));
    if (core < 1) return -1;
    return std::min(core, side);
}

}  // namespace

FitResult fit_eta(const SweepResult& measured, int cell, double search_lo, double search_hi,
                  const SimParams& sim) {
    if (measured.betas.empty() || measured.betas.size() != measured.irradiance.size())
        throw std::invalid_argument("fit_eta: empty or inconsistent measured data");
    if (!(search_lo >= 0.0 && search_lo < search_hi && search_hi <= 0.95))
        throw std::invalid_argument("fit_eta: search interval must lie within [0, 0.95]");
    if (cell < 1 || sim.upsample < 1)
        throw std::invalid_argument("fit_eta: bad cell or upsample");

    // The measured curve is expected normalized to max 1; renormalize so
    // mildly perturbed inputs are still comparable with the model curves.
    double peak = 0.0;
    for (double v : measured.irradiance) peak = std::max(peak, v);
    if (!(peak > 0.0))
        throw std::invalid_argument("fit_eta: measured irradiance is all zero");
    std::vector<double> meas(measured.irradiance);
    for (double& v : meas) v /= peak;

    const int side = cell * sim.upsample;
    const std::size_t n = meas.size();
    int evaluations = 0;
    // Candidates with the same zone split produce the same curve; cache on it.
    std::map<int, double> by_core;
    auto objective = [&](double eta) -> double {
        const int core = zone_core(eta, side);
        if (core < 0) return std::numeric_limits<double>::infinity();
        auto it = by_core.find(core);
        if (it != by_core.end()) return it->second;
        const SweepResult curve = model_curve(measured.betas, cell, eta, sim);
        ++evaluations;
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = curve.irradiance[i] - meas[i];
            ss += d * d;
        }
        const double rmse = std::sqrt(ss / static_cast<double>(n));
        by_core.emplace(core, rmse);
        return rmse;
    };

    double best_eta = search_lo;
    double best_val = objective(search_lo);
    for (double eta = search_lo + 0.01; eta < search_hi + 1e-12; eta += 0.01) {
        const double v = objective(std::min(eta, search_hi));
        if (v < best_val) {
            best_val = v;
            best_eta = std::min(eta, search_hi);
        }
    }
    {
        const double v = objective(search_hi);
        if (v < best_val) {
            best_val = v;
            best_eta = search_hi;
        }
    }

    // golden-section refinement around the best coarse sample
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::max(search_lo, best_eta - 0.01);
    double b = std::min(search_hi, best_eta + 0.01);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = objective(c), fd = objective(d);
    while (b - a > 1e-3) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = objective(d);
        }
    }
    double refined = 0.5 * (a + b);
    if (objective(best_eta) < objective(refined)) refined = best_eta;

    // Report the center of the eta band that realizes the winning zone split.
    FitResult result;
    const int core = zone_core(refined, side);
    if (core >= 0) {
        const double hi_edge = 1.0 - std::pow((core - 0.5) / side, 2);
        const double lo_edge = core >= side ? 0.0 : 1.0 - std::pow((core + 0.5) / side, 2);
        refined = std::clamp(0.5 * (lo_edge + hi_edge), search_lo, search_hi);
    }
    result.eta_hat = refined;
    result.fit_rmse = objective(refined);
    result.evaluations = evaluations;
    return result;
}

}  // namespace dpholo
