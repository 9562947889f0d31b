#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace dpholo {

using Cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Largest encodable amplitude: the sum of two unit waves.
inline constexpr double kAmpMax = 2.0;

/// Wraps an angle to (-pi, pi]. Throws on non-finite input.
double wrap_phase(double radians);

/// Row-major 2-D array. Index order is (row, col) with the origin at the
/// top-left pixel.
template <typename T>
class Grid {
public:
    Grid() = default;
    Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
        if (width < 1 || height < 1)
            throw std::invalid_argument("Grid: dimensions must be positive");
        v_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return v_.size(); }

    T& operator()(int row, int col) { return v_[idx(row, col)]; }
    const T& operator()(int row, int col) const { return v_[idx(row, col)]; }

    T* data() { return v_.data(); }
    const T* data() const { return v_.data(); }
    T* row(int r) { return v_.data() + static_cast<std::size_t>(r) * width_; }
    const T* row(int r) const { return v_.data() + static_cast<std::size_t>(r) * width_; }

    bool same_shape(const Grid& o) const { return width_ == o.width_ && height_ == o.height_; }

private:
    std::size_t idx(int row, int col) const {
        return static_cast<std::size_t>(row) * width_ + col;
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> v_;
};

using RealGrid = Grid<double>;
using CplxGrid = Grid<Cplx>;

/// Complex optical field sampled on a pixel grid. All values finite,
/// dimensions at least 2x2.
class ComplexField {
public:
    explicit ComplexField(CplxGrid g);

    int width() const { return g_.width(); }
    int height() const { return g_.height(); }
    const Cplx& operator()(int row, int col) const { return g_(row, col); }
    const CplxGrid& grid() const { return g_; }

private:
    CplxGrid g_;
};

/// Grid of wrapped phases, every value strictly in (-pi, pi].
class PhaseElement {
public:
    explicit PhaseElement(RealGrid g);
    /// Uniform phase over the grid.
    PhaseElement(int width, int height, double phase);

    int width() const { return g_.width(); }
    int height() const { return g_.height(); }
    double operator()(int row, int col) const { return g_(row, col); }
    const RealGrid& grid() const { return g_; }

private:
    RealGrid g_;
};

/// Grid of amplitudes in [0, kAmpMax].
class AmplitudeMap {
public:
    explicit AmplitudeMap(RealGrid g);
    AmplitudeMap(int width, int height, double amplitude);

    int width() const { return g_.width(); }
    int height() const { return g_.height(); }
    double operator()(int row, int col) const { return g_(row, col); }
    const RealGrid& grid() const { return g_; }

private:
    RealGrid g_;
};

/// 0/1 mask whose bits are constant over cell-aligned cell x cell blocks.
/// Edge blocks may be partial when the dimensions are not multiples of the
/// cell side.
class BinaryMask {
public:
    BinaryMask(Grid<std::uint8_t> g, int cell);

    int width() const { return g_.width(); }
    int height() const { return g_.height(); }
    int cell() const { return cell_; }
    std::uint8_t operator()(int row, int col) const { return g_(row, col); }
    const Grid<std::uint8_t>& grid() const { return g_; }

private:
    Grid<std::uint8_t> g_;
    int cell_ = 1;
};

enum class Parity { even, odd };

/// Checkerboard of cell x cell blocks: bit(i,j) = 1 iff floor(i/cell) +
/// floor(j/cell) has the requested parity. The even and odd masks are exact
/// complements.
BinaryMask make_checkerboard(int width, int height, int cell, Parity parity);

/// value(i,j) = amplitude(i,j) * exp(i * phase(i,j))
ComplexField field_from_polar(const AmplitudeMap& amplitude, const PhaseElement& phase);

}  // namespace dpholo
