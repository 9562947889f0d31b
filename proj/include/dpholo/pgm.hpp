#pragma once

#include <stdexcept>
#include <string>

#include "dpholo/grid.hpp"

// Binary PGM (P5) is the interchange image format: 8- or 16-bit single
// channel, 16-bit samples big-endian.

namespace dpholo {

enum class PgmStatus {
    missing_file = 1,
    bad_header,
    unsupported_depth,
    truncated_data,
    io_failure,
};

class PgmError : public std::runtime_error {
public:
    PgmError(PgmStatus status, const std::string& what)
        : std::runtime_error(what), status_(status) {}
    PgmStatus status() const { return status_; }

private:
    PgmStatus status_;
};

/// Loads a binary P5 image and maps gray levels linearly onto [0, 1].
RealGrid load_grayscale(const std::string& path);

/// Writes an 8-bit P5 image from values in [0, 1] (round half up).
void save_pgm8(const RealGrid& unit, const std::string& path);

/// Writes a 16-bit P5 image from values in [0, 1].
void save_pgm16(const RealGrid& unit, const std::string& path);

/// Exports a phase element as 8-bit gray: g = round((alpha + pi)/(2 pi) * 255).
void save_phase_bitmap(const PhaseElement& alpha, const std::string& path);

/// Unit gray -> amplitude in [0, kAmpMax].
AmplitudeMap amplitude_from_unit(const RealGrid& unit);

/// Unit gray -> phase via g -> -pi + 2*pi*g, wrapped into (-pi, pi].
PhaseElement phase_from_unit(const RealGrid& unit);

}  // namespace dpholo
