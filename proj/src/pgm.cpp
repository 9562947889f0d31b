#include "dpholo/pgm.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <vector>

namespace dpholo {

namespace {

// Skips PGM whitespace and '#' comments, then reads one unsigned decimal.
int read_token(std::istream& in, const std::string& path) {
    int ch = in.get();
    while (ch != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
        } else if (!std::isspace(ch)) {
            break;
        }
        ch = in.get();
    }
    if (ch == EOF || !std::isdigit(ch))
        throw PgmError(PgmStatus::bad_header, "malformed PGM header in " + path);
    long value = 0;
    while (ch != EOF && std::isdigit(ch)) {
        value = value * 10 + (ch - '0');
        if (value > 1 << 30)
            throw PgmError(PgmStatus::bad_header, "absurd header value in " + path);
        ch = in.get();
    }
    if (ch != EOF) in.unget();
    return static_cast<int>(value);
}

std::uint8_t quantize8(double unit) {
    const double g = std::floor(unit * 255.0 + 0.5);
    return static_cast<std::uint8_t>(std::min(255.0, std::max(0.0, g)));
}

}  // namespace

RealGrid load_grayscale(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open())
        throw PgmError(PgmStatus::missing_file, "cannot open " + path);
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (!in || magic[0] != 'P' || magic[1] != '5')
        throw PgmError(PgmStatus::bad_header, path + " is not a binary (P5) PGM");
    const int width = read_token(in, path);
    const int height = read_token(in, path);
    const int maxval = read_token(in, path);
    if (width < 1 || height < 1)
        throw PgmError(PgmStatus::bad_header, "bad dimensions in " + path);
    if (maxval < 1 || maxval > 65535)
        throw PgmError(PgmStatus::unsupported_depth,
                       "unsupported maxval " + std::to_string(maxval) + " in " + path);
    in.get();  // single whitespace byte before the raster

    const bool wide = maxval > 255;
    const std::size_t n = static_cast<std::size_t>(width) * height;
    std::vector<std::uint8_t> raw(n * (wide ? 2 : 1));
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size())
        throw PgmError(PgmStatus::truncated_data, "truncated raster in " + path);

    RealGrid out(width, height);
    const double scale = 1.0 / maxval;
    double* dst = out.data();
    if (wide) {
        for (std::size_t i = 0; i < n; ++i)
            dst[i] = scale * ((raw[2 * i] << 8) | raw[2 * i + 1]);
    } else {
        for (std::size_t i = 0; i < n; ++i) dst[i] = scale * raw[i];
    }
    return out;
}

void save_pgm8(const RealGrid& unit, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.is_open())
        throw PgmError(PgmStatus::io_failure, "cannot write " + path);
    out << "P5\n" << unit.width() << " " << unit.height() << "\n255\n";
    std::vector<std::uint8_t> raw(unit.size());
    for (std::size_t i = 0; i < unit.size(); ++i) raw[i] = quantize8(unit.data()[i]);
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw PgmError(PgmStatus::io_failure, "write failed for " + path);
}

void save_pgm16(const RealGrid& unit, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out.is_open())
        throw PgmError(PgmStatus::io_failure, "cannot write " + path);
    out << "P5\n" << unit.width() << " " << unit.height() << "\n65535\n";
    std::vector<std::uint8_t> raw(unit.size() * 2);
    for (std::size_t i = 0; i < unit.size(); ++i) {
        const double g = std::floor(unit.data()[i] * 65535.0 + 0.5);
        const auto v = static_cast<std::uint16_t>(std::min(65535.0, std::max(0.0, g)));
        raw[2 * i] = static_cast<std::uint8_t>(v >> 8);
        raw[2 * i + 1] = static_cast<std::uint8_t>(v & 0xff);
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out)
        throw PgmError(PgmStatus::io_failure, "write failed for " + path);
}

void save_phase_bitmap(const PhaseElement& alpha, const std::string& path) {
    RealGrid unit(alpha.width(), alpha.height());
    for (int i = 0; i < alpha.height(); ++i)
        for (int j = 0; j < alpha.width(); ++j)
            unit(i, j) = (alpha(i, j) + kPi) / kTwoPi;
    save_pgm8(unit, path);
}

AmplitudeMap amplitude_from_unit(const RealGrid& unit) {
    RealGrid g(unit.width(), unit.height());
    for (std::size_t i = 0; i < unit.size(); ++i)
        g.data()[i] = unit.data()[i] * kAmpMax;
    return AmplitudeMap(std::move(g));
}

PhaseElement phase_from_unit(const RealGrid& unit) {
    RealGrid g(unit.width(), unit.height());
    for (std::size_t i = 0; i < unit.size(); ++i)
        g.data()[i] = wrap_phase(-kPi + kTwoPi * unit.data()[i]);
    return PhaseElement(std::move(g));
}

}  // namespace dpholo
