#pragma once

#include <cstdint>

#include "dpholo/grid.hpp"

// Deterministic synthetic targets used by the canned experiments and tests.
// All generators are pure functions of their arguments; identical seeds give
// byte-identical grids on every run.

namespace dpholo {

/// Smooth random complex field whose spectrum is confined to a disk of the
/// given radius (cycles per pixel). A dominant zero-frequency term keeps the
/// modulus away from zero; the peak modulus is scaled to max_modulus.
ComplexField band_limited_field(int width, int height, double band_cycles_per_px,
                                std::uint64_t seed, double max_modulus = 0.9 * kAmpMax);

/// Band-limited amplitude chart with full mid-tone contrast, values in
/// (0, 0.95 * kAmpMax].
AmplitudeMap test_chart(int width, int height, double band_cycles_per_px, std::uint64_t seed);

/// Smooth phase target: a horizontal ramp across the full 2*pi range plus a
/// few Gaussian bumps.
PhaseElement ramp_blob_phase(int width, int height, std::uint64_t seed);

}  // namespace dpholo
