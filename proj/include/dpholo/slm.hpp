#pragma once

#include "dpholo/grid.hpp"

// Two-zone pixel-crosstalk model. Each multiplex cell, rendered at sub-pixel
// resolution, is split into a concentric central square whose phase follows
// the programmed value and a border frame whose phase is attenuated by
// border_factor. eta is the border area as a fraction of the whole cell.

namespace dpholo {

struct CrosstalkModel {
    double eta = 0.0;            // border area fraction, in [0, 1)
    int upsample = 16;           // sub-pixels per SLM pixel side
    double border_factor = 0.5;  // phase attenuation on the border frame
};

/// Integer split of one rendered cell of side `side` sub-pixels.
struct CellZones {
    int side;    // cell * upsample
    int core;    // side of the central square, round(side * sqrt(1 - eta))
    int offset;  // top-left inset of the central square; when side - core is
                 // odd the extra sub-pixel row/column goes right/bottom
};

/// Validates the model for the given cell and returns the zone split.
/// Throws when eta > 0 cannot be represented (side < 2, or the rounded
/// central square would vanish).
CellZones cell_zones(int cell, const CrosstalkModel& model);

/// Border area fraction actually realized after rounding the central square
/// to whole sub-pixels: 1 - (core/side)^2.
double realized_eta(int cell, const CrosstalkModel& model);

/// Converts a single-pixel border fraction to the fraction covered on a
/// cell x cell block by the same fixed-width frame:
/// 1 - (cell - w)^2 / cell^2 with w = 1 - sqrt(1 - eta_single_pixel).
/// The frame width is a device property, so the covered fraction shrinks as
/// the sampling cell grows.
double eta_at_cell(double eta_single_pixel, int cell);

/// Renders a phase element onto the simulated device: nearest-neighbour
/// upsampling of exp(i*alpha) with the border frame of every cell attenuated
/// to border_factor * alpha. Output modulus is 1 everywhere. Grid dimensions
/// must be multiples of the cell side.
ComplexField render(const PhaseElement& alpha, int cell, const CrosstalkModel& model);

}  // namespace dpholo
