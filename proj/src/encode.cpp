#include "dpholo/encode.hpp"

#include <cmath>
#include <string>

#include "dpholo/kernels.hpp"

namespace dpholo {

namespace {

void require_same_shape(int wa, int ha, int wb, int hb, const char* who) {
    if (wa != wb || ha != hb)
        throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

PhasePair decompose(const AmplitudeMap& amplitude, const PhaseElement& phase) {
    require_same_shape(amplitude.width(), amplitude.height(), phase.width(), phase.height(),
                       "decompose");
    const int w = amplitude.width(), h = amplitude.height();
    RealGrid lead(w, h), lag(w, h);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const double half = std::acos(amplitude(i, j) / kAmpMax);
            lead(i, j) = phase(i, j) + half;
            lag(i, j) = phase(i, j) - half;
        }
    }
    kernels::wrap_inplace(lead.data(), lead.size());
    kernels::wrap_inplace(lag.data(), lag.size());
    return {PhaseElement(std::move(lead)), PhaseElement(std::move(lag))};
}

PhaseElement multiplex(const PhaseElement& lead, const PhaseElement& lag, int cell) {
    require_same_shape(lead.width(), lead.height(), lag.width(), lag.height(), "multiplex");
    const BinaryMask even = make_checkerboard(lead.width(), lead.height(), cell, Parity::even);
    RealGrid out(lead.width(), lead.height());
    for (int i = 0; i < out.height(); ++i)
        for (int j = 0; j < out.width(); ++j)
            out(i, j) = even(i, j) ? lead(i, j) : lag(i, j);
    return PhaseElement(std::move(out));
}

PhaseElement add_blazed(const PhaseElement& alpha, int period, BlazeAxis axis) {
    if (period < 2)
        throw std::invalid_argument("add_blazed: period must be at least 2");
    std::vector<double> ramp(period);
    for (int t = 0; t < period; ++t)
        ramp[t] = -kPi + kTwoPi * t / period;
    RealGrid out(alpha.width(), alpha.height());
    for (int i = 0; i < out.height(); ++i)
        for (int j = 0; j < out.width(); ++j)
            out(i, j) = alpha(i, j) + ramp[(axis == BlazeAxis::horizontal ? j : i) % period];
    kernels::wrap_inplace(out.data(), out.size());
    return PhaseElement(std::move(out));
}

CarvedElement carve_reference(const PhaseElement& alpha, int cell) {
    if (cell < 1)
        throw std::invalid_argument("carve_reference: cell must be at least 1");
    BinaryMask m3 = make_checkerboard(alpha.width(), alpha.height(), 2 * cell, Parity::even);
    RealGrid out(alpha.width(), alpha.height());
    for (int i = 0; i < out.height(); ++i)
        for (int j = 0; j < out.width(); ++j)
            out(i, j) = m3(i, j) ? alpha(i, j) : 0.0;
    return {PhaseElement(std::move(out)), std::move(m3)};
}

PhaseElement add_piston(const PhaseElement& alpha, const BinaryMask& m3, double delta) {
    if (!std::isfinite(delta))
        throw std::invalid_argument("add_piston: non-finite delta");
    require_same_shape(alpha.width(), alpha.height(), m3.width(), m3.height(), "add_piston");
    RealGrid out(alpha.width(), alpha.height());
    for (int i = 0; i < out.height(); ++i)
        for (int j = 0; j < out.width(); ++j)
            out(i, j) = m3(i, j) ? wrap_phase(alpha(i, j) + delta) : alpha(i, j);
    return PhaseElement(std::move(out));
}

PhaseSplit phase_offset_split(const AmplitudeMap& amplitude, const PhaseElement& phase, int cell) {
    require_same_shape(amplitude.width(), amplitude.height(), phase.width(), phase.height(),
                       "phase_offset_split");
    const BinaryMask even =
        make_checkerboard(amplitude.width(), amplitude.height(), cell, Parity::even);
    RealGrid offset(amplitude.width(), amplitude.height());
    for (int i = 0; i < offset.height(); ++i) {
        for (int j = 0; j < offset.width(); ++j) {
            const double half = std::acos(amplitude(i, j) / kAmpMax);
            offset(i, j) = even(i, j) ? half : -half;
        }
    }
    return {phase, PhaseElement(std::move(offset))};
}

}  // namespace dpholo
