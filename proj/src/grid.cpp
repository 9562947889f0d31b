#include "dpholo/grid.hpp"

#include <cmath>

namespace dpholo {

double wrap_phase(double radians) {
    if (!std::isfinite(radians))
        throw std::invalid_argument("wrap_phase: non-finite input");
    double y = radians - kTwoPi * std::nearbyint(radians * (1.0 / kTwoPi));
    if (y > kPi) y -= kTwoPi;
    if (y <= -kPi) y += kTwoPi;
    return y;
}

ComplexField::ComplexField(CplxGrid g) : g_(std::move(g)) {
    if (g_.width() < 2 || g_.height() < 2)
        throw std::invalid_argument("ComplexField: dimensions must be at least 2x2");
    const Cplx* p = g_.data();
    for (std::size_t i = 0; i < g_.size(); ++i) {
        if (!std::isfinite(p[i].real()) || !std::isfinite(p[i].imag()))
            throw std::invalid_argument("ComplexField: non-finite value");
    }
}

PhaseElement::PhaseElement(RealGrid g) : g_(std::move(g)) {
    const double* p = g_.data();
    for (std::size_t i = 0; i < g_.size(); ++i) {
        if (!(p[i] > -kPi && p[i] <= kPi))
            throw std::invalid_argument("PhaseElement: phase outside (-pi, pi]");
    }
}

PhaseElement::PhaseElement(int width, int height, double phase)
    : PhaseElement(RealGrid(width, height, phase)) {}

AmplitudeMap::AmplitudeMap(RealGrid g) : g_(std::move(g)) {
    const double* p = g_.data();
    for (std::size_t i = 0; i < g_.size(); ++i) {
        if (!(p[i] >= 0.0 && p[i] <= kAmpMax))
            throw std::invalid_argument("AmplitudeMap: amplitude outside [0, 2]");
    }
}

AmplitudeMap::AmplitudeMap(int width, int height, double amplitude)
    : AmplitudeMap(RealGrid(width, height, amplitude)) {}

BinaryMask::BinaryMask(Grid<std::uint8_t> g, int cell) : g_(std::move(g)), cell_(cell) {
    if (cell_ < 1)
        throw std::invalid_argument("BinaryMask: cell must be at least 1");
    for (int i = 0; i < g_.height(); ++i) {
        for (int j = 0; j < g_.width(); ++j) {
            std::uint8_t b = g_(i, j);
            if (b > 1)
                throw std::invalid_argument("BinaryMask: values must be 0 or 1");
            if (b != g_((i / cell_) * cell_, (j / cell_) * cell_))
                throw std::invalid_argument("BinaryMask: bits vary within a cell block");
        }
    }
}

BinaryMask make_checkerboard(int width, int height, int cell, Parity parity) {
    if (cell < 1)
        throw std::invalid_argument("make_checkerboard: cell must be at least 1");
    if (width < cell || height < cell)
        throw std::invalid_argument("make_checkerboard: dimensions smaller than one cell");
    const int want = parity == Parity::even ? 0 : 1;
    Grid<std::uint8_t> g(width, height);
    for (int i = 0; i < height; ++i) {
        std::uint8_t* r = g.row(i);
        const int bi = i / cell;
        for (int j = 0; j < width; ++j)
            r[j] = static_cast<std::uint8_t>(((bi + j / cell) & 1) == want);
    }
    return BinaryMask(std::move(g), cell);
}

ComplexField field_from_polar(const AmplitudeMap& amplitude, const PhaseElement& phase) {
    if (amplitude.width() != phase.width() || amplitude.height() != phase.height())
        throw std::invalid_argument("field_from_polar: dimension mismatch");
    CplxGrid g(amplitude.width(), amplitude.height());
    for (int i = 0; i < g.height(); ++i)
        for (int j = 0; j < g.width(); ++j)
            g(i, j) = std::polar(amplitude(i, j), phase(i, j));
    return ComplexField(std::move(g));
}

}  // namespace dpholo
