#pragma once

#include "dpholo/grid.hpp"

// 4f imaging train: forward transform to the Fourier plane, hard circular
// iris, and return to the image plane. Frequencies are booked in cycles per
// SLM pixel so iris settings do not depend on the sub-pixel resolution.

namespace dpholo {

struct FilterSpec {
    double cutoff = 0.25;   // iris radius, cycles per SLM pixel
    double center_u = 0.0;  // iris center along the width axis
    double center_v = 0.0;  // iris center along the height axis
};

struct OpticalTrain {
    int upsample = 1;          // sub-pixels per SLM pixel; must match the render step
    bool flip_output = false;  // point-reflect through the grid center
};

/// Applies the filtered 4f train: inverse-FT(FT(field) * iris). The iris
/// passes bins with (fu - center_u)^2 + (fv - center_v)^2 <= cutoff^2.
/// Energy never increases.
ComplexField propagate(const ComplexField& field, const FilterSpec& filter,
                       const OpticalTrain& train);

/// Iris radius halfway between the zero order and the first diffraction
/// order of the finest active grating: 1/(4*cell), or 1/(8*cell) when the
/// double-period reference grating is in use.
double default_cutoff(int cell, bool m3_active);

/// Unnormalized forward DFT of the field, bin (0,0) at the top-left corner.
CplxGrid forward_spectrum(const ComplexField& field);

/// Normalized inverse DFT (divides by the bin count).
CplxGrid inverse_spectrum(const CplxGrid& spectrum);

}  // namespace dpholo
