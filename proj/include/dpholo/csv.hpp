#pragma once

#include <string>

#include "dpholo/retrieve.hpp"

namespace dpholo {

/// Writes `beta_rad,irradiance_norm` rows with 8 fixed decimals and LF line
/// endings; the header line is always present.
void save_csv_sweep(const SweepResult& result, const std::string& path);

/// Reads a sweep CSV written by save_csv_sweep (the header line is required).
SweepResult load_csv_sweep(const std::string& path);

}  // namespace dpholo
