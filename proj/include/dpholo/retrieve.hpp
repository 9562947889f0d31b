#pragma once

#include <vector>

#include "dpholo/encode.hpp"
#include "dpholo/grid.hpp"
#include "dpholo/optics.hpp"
#include "dpholo/slm.hpp"

namespace dpholo {

struct Interferogram {
    RealGrid irradiance;  // non-negative, at SLM resolution
    double piston = 0.0;  // phase step applied to the object cells
};

struct SweepResult {
    std::vector<double> betas;       // radians in [0, pi]
    std::vector<double> irradiance;  // normalized so the sweep maximum is 1
};

/// Energy-averaging detector: each output pixel is the mean of |value|^2
/// over its upsample x upsample block.
RealGrid camera_image(const ComplexField& field, int upsample);

/// Encodes a uniform hologram (+beta on the even checkerboard, -beta on the
/// odd one) for every requested beta, renders it with the crosstalk model,
/// filters it, and records the mean irradiance over the central half-window
/// of the camera image. The grid is trimmed down to whole 2*cell periods and
/// must hold at least 8 of them.
///
/// A uniform hologram takes only four sub-pixel values, so the sweep is
/// computed by filtering the four zone indicator fields once and recombining
/// them per beta; the result matches the per-beta render/propagate path to
/// numerical precision.
SweepResult flat_sweep(int width, int height, const std::vector<double>& betas, int cell,
                       const CrosstalkModel& model, const FilterSpec& filter);

/// Four-step inversion for pistons {0, pi/2, pi, 3pi/2}: returns
/// ((I0 - I2) + i (I3 - I1)) / 4, the object field relative to the unit flat
/// reference.
ComplexField four_step_retrieve(const Interferogram& i0, const Interferogram& i1,
                                const Interferogram& i2, const Interferogram& i3);

struct RetrievedField {
    RealGrid amplitude;
    PhaseElement phase;
};

/// Full interferometric pipeline: decompose, multiplex, carve the reference
/// cells, apply the four pi/2 pistons (plus the blazed carrier when enabled),
/// render with crosstalk, filter, record the camera images and invert them.
/// Requires cfg.m3_enabled; the iris follows default_cutoff(cell, true) and
/// tracks the carrier unless cutoff_override > 0.
RetrievedField encode_retrieve(const AmplitudeMap& amplitude, const PhaseElement& phase,
                               const EncodingConfig& cfg, const CrosstalkModel& model,
                               const OpticalTrain& train, double cutoff_override = 0.0);

/// n evenly spaced samples of [0, pi], endpoints included.
std::vector<double> uniform_betas(int n);

}  // namespace dpholo
