#pragma once

#include "dpholo/grid.hpp"

// Double-phase encoding: a complex field A*exp(i*phi) is split into two unit
// waves exp(i*lead) + exp(i*lag) with lead/lag = phi +/- acos(A / kAmpMax),
// which are then interleaved on complementary checkerboards into a single
// phase-only element.

namespace dpholo {

enum class BlazeAxis { horizontal, vertical };

struct EncodingConfig {
    int cell = 1;              // pixels per multiplex cell side
    int blazed_period = 0;     // carrier period in pixels, 0 disables it
    BlazeAxis blazed_axis = BlazeAxis::horizontal;
    bool m3_enabled = false;   // carve reference cells for phase shifting
};

struct PhasePair {
    PhaseElement lead;  // phi + acos(A / kAmpMax)
    PhaseElement lag;   // phi - acos(A / kAmpMax)
};

/// Splits amplitude and phase into the two unit-wave phases. Pointwise,
/// exp(i*lead) + exp(i*lag) == A * exp(i*phi).
PhasePair decompose(const AmplitudeMap& amplitude, const PhaseElement& phase);

/// Interleaves the two phases on complementary checkerboards of the given
/// cell side. The even-parity board (block (0,0) included) carries `lead`.
PhaseElement multiplex(const PhaseElement& lead, const PhaseElement& lag, int cell);

/// Adds a sawtooth carrier ramping from -pi to pi over each period along the
/// chosen axis.
PhaseElement add_blazed(const PhaseElement& alpha, int period, BlazeAxis axis);

struct CarvedElement {
    PhaseElement alpha;  // input phases where the mask is 1, exactly 0 elsewhere
    BinaryMask m3;       // checkerboard with twice the multiplex cell side
};

/// Zeroes the phase on a checkerboard of double the multiplex period; the
/// zeroed cells act as a flat reference beam for self-interference.
CarvedElement carve_reference(const PhaseElement& alpha, int cell);

/// Adds `delta` (wrapped) on the object cells (mask 1); reference cells are
/// left untouched.
PhaseElement add_piston(const PhaseElement& alpha, const BinaryMask& m3, double delta);

struct PhaseSplit {
    PhaseElement base;    // the input phase, unchanged
    PhaseElement offset;  // +/- acos(A / kAmpMax) on the two checkerboards
};

/// Splits the multiplexed element into the directly-encoded phase and the
/// amplitude-carrying offset: wrap(base + offset) equals
/// multiplex(decompose(A, phi), cell) pointwise.
PhaseSplit phase_offset_split(const AmplitudeMap& amplitude, const PhaseElement& phase, int cell);

}  // namespace dpholo
