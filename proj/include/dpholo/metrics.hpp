#pragma once

#include <vector>

#include "dpholo/grid.hpp"
#include "dpholo/retrieve.hpp"

namespace dpholo {

/// Simulation settings behind model_curve / fit_eta.
struct SimParams {
    int width = 64;
    int height = 64;
    int upsample = 16;
    double border_factor = 0.5;
    double cutoff = 0.0;  // 0 selects default_cutoff(cell, false)
};

struct FitResult {
    double eta_hat = 0.0;
    double fit_rmse = 0.0;  // in normalized-irradiance units
    int evaluations = 0;    // simulated curves computed
};

/// Scale-invariant amplitude error: a least-squares gain is applied to
/// `test`, then the rms residual is reported as a percentage of the
/// reference dynamic range.
double rmse_amplitude(const RealGrid& ref, const RealGrid& test);

/// Offset-invariant phase error: the circular-mean piston of the wrapped
/// difference over `support` is removed, then the rms of the wrapped
/// residual is reported as a percentage of the 2*pi range.
double rmse_phase(const PhaseElement& ref, const PhaseElement& test, const BinaryMask& support);

/// Support mask for phase comparisons: 1 where the amplitude exceeds
/// floor_fraction of its maximum.
BinaryMask support_from_amplitude(const RealGrid& amplitude, double floor_fraction = 0.1);

/// Simulated irradiance curve of the two-zone model at the given eta; a thin
/// wrapper over flat_sweep.
SweepResult model_curve(const std::vector<double>& betas, int cell, double eta,
                        const SimParams& sim);

/// Fits eta to a measured normalized sweep by coarse 0.01-step scanning of
/// [search_lo, search_hi] followed by golden-section refinement below 1e-3.
/// The returned eta is centered on the band of etas that round to the same
/// sub-pixel zone split, which the objective cannot distinguish.
FitResult fit_eta(const SweepResult& measured, int cell, double search_lo, double search_hi,
                  const SimParams& sim);

}  // namespace dpholo
