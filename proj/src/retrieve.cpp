#include "dpholo/retrieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "dpholo/kernels.hpp"

namespace dpholo {

namespace {

constexpr double kPistonTol = 1e-9;

struct Window {
    int row0, rows, col0, cols;  // in SLM pixels
};

// Central half-window of the camera image, kept clear of filter ringing.
Window central_window(int w, int h) {
    return {h / 4, h / 2, w / 4, w / 2};
}

// Crops the sub-pixel region of `field` covered by the SLM-pixel window.
CplxGrid crop_subpixels(const ComplexField& field, const Window& win, int up) {
    CplxGrid out(win.cols * up, win.rows * up);
    for (int r = 0; r < out.height(); ++r) {
        const Cplx* src = field.grid().row(win.row0 * up + r) + win.col0 * up;
        std::memcpy(out.row(r), src, static_cast<std::size_t>(out.width()) * sizeof(Cplx));
    }
    return out;
}

}  // namespace

RealGrid camera_image(const ComplexField& field, int upsample) {
    if (upsample < 1)
        throw std::invalid_argument("camera_image: upsample must be at least 1");
    if (field.width() % upsample != 0 || field.height() % upsample != 0)
        throw std::invalid_argument("camera_image: dimensions not divisible by upsample");
    const int w = field.width() / upsample, h = field.height() / upsample;
    const double norm = 1.0 / (static_cast<double>(upsample) * upsample);
    RealGrid out(w, h);
    std::vector<double> acc(field.width());
    for (int i = 0; i < h; ++i) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (int a = 0; a < upsample; ++a)
            kernels::accum_abs2(acc.data(), field.grid().row(i * upsample + a), acc.size());
        double* dst = out.row(i);
        for (int j = 0; j < w; ++j) {
            double s = 0.0;
            for (int t = 0; t < upsample; ++t) s += acc[j * upsample + t];
            dst[j] = s * norm;
        }
    }
    return out;
}

SweepResult flat_sweep(int width, int height, const std::vector<double>& betas, int cell,
                       const CrosstalkModel& model, const FilterSpec& filter) {
    for (double b : betas) {
        if (!(b >= -kPistonTol && b <= kPi + kPistonTol))
            throw std::invalid_argument("flat_sweep: beta outside [0, pi]");
    }
    const CellZones z = cell_zones(cell, model);
    const int period = 2 * cell;
    const int w = (width / period) * period;
    const int h = (height / period) * period;
    if (w < 8 * period || h < 8 * period)
        throw std::invalid_argument("flat_sweep: grid holds fewer than 8 grating periods");

    const int up = model.upsample;
    const Window win = central_window(w, h);
    const std::size_t win_n = static_cast<std::size_t>(win.rows) * win.cols * up * up;

    // Sub-pixels of a uniform hologram fall into four groups: even/odd cell
    // parity crossed with core/border zone. Filter each indicator once.
    std::vector<bool> in_core(z.side);
    for (int t = 0; t < z.side; ++t) in_core[t] = t >= z.offset && t < z.offset + z.core;
    const bool has_border = z.core < z.side;

    // per-axis group lookup: 2 * parity-of-cell + in-core-along-this-axis
    auto axis_classes = [&](int pixels) {
        std::vector<std::uint8_t> cls(static_cast<std::size_t>(pixels) * up);
        for (std::size_t t = 0; t < cls.size(); ++t)
            cls[t] = static_cast<std::uint8_t>(2 * ((t / (cell * up)) & 1) +
                                               (in_core[t % z.side] ? 1 : 0));
        return cls;
    };
    const std::vector<std::uint8_t> col_cls = axis_classes(w);
    const std::vector<std::uint8_t> row_cls = axis_classes(h);

    std::vector<CplxGrid> filtered;
    const int ngroups = has_border ? 4 : 2;
    const OpticalTrain train{up, false};
    for (int g = 0; g < ngroups; ++g) {
        const std::uint8_t want_core = g < 2 ? 1 : 0;
        const std::uint8_t want_parity = g & 1;
        CplxGrid ind(w * up, h * up, Cplx(0.0, 0.0));
        for (int r = 0; r < h * up; ++r) {
            Cplx* row = ind.row(r);
            const std::uint8_t rp = row_cls[r] >> 1, rc = row_cls[r] & 1;
            for (int c = 0; c < w * up; ++c) {
                const std::uint8_t core = rc & col_cls[c] & 1;
                const std::uint8_t parity = (rp + (col_cls[c] >> 1)) & 1;
                if (core == want_core && parity == want_parity) row[c] = Cplx(1.0, 0.0);
            }
        }
        filtered.push_back(
            crop_subpixels(propagate(ComplexField(std::move(ind)), filter, train), win, up));
    }

    SweepResult result;
    result.betas = betas;
    result.irradiance.resize(betas.size());
    for (std::size_t k = 0; k < betas.size(); ++k) {
        const double b = std::clamp(betas[k], 0.0, kPi);
        const double wl = wrap_phase(b), wg = wrap_phase(-b);
        const Cplx c1 = std::polar(1.0, wl), c2 = std::polar(1.0, wg);
        double sum;
        if (has_border) {
            const Cplx c3 = std::polar(1.0, model.border_factor * wl);
            const Cplx c4 = std::polar(1.0, model.border_factor * wg);
            sum = kernels::combine4_abs2_sum(filtered[0].data(), filtered[1].data(),
                                             filtered[2].data(), filtered[3].data(), c1, c2, c3,
                                             c4, win_n);
        } else {
            sum = kernels::combine2_abs2_sum(filtered[0].data(), filtered[1].data(), c1, c2,
                                             win_n);
        }
        result.irradiance[k] = sum / static_cast<double>(win_n);
    }

    double peak = 0.0;
    for (double v : result.irradiance) peak = std::max(peak, v);
    if (peak > 0.0)
        for (double& v : result.irradiance) v /= peak;
    return result;
}

ComplexField four_step_retrieve(const Interferogram& i0, const Interferogram& i1,
                                const Interferogram& i2, const Interferogram& i3) {
    const Interferogram* igs[4] = {&i0, &i1, &i2, &i3};
    for (int k = 0; k < 4; ++k) {
        if (!igs[k]->irradiance.same_shape(i0.irradiance))
            throw std::invalid_argument("four_step_retrieve: dimension mismatch");
        if (std::abs(igs[k]->piston - k * kPi / 2.0) > kPistonTol)
            throw std::invalid_argument("four_step_retrieve: pistons must be {0, pi/2, pi, 3pi/2}");
        for (std::size_t t = 0; t < igs[k]->irradiance.size(); ++t) {
            if (!(igs[k]->irradiance.data()[t] >= 0.0))
                throw std::invalid_argument("four_step_retrieve: negative irradiance");
        }
    }
    CplxGrid out(i0.irradiance.width(), i0.irradiance.height());
    kernels::four_step(out.data(), i0.irradiance.data(), i1.irradiance.data(),
                       i2.irradiance.data(), i3.irradiance.data(), out.size());
    return ComplexField(std::move(out));
}

RetrievedField encode_retrieve(const AmplitudeMap& amplitude, const PhaseElement& phase,
                               const EncodingConfig& cfg, const CrosstalkModel& model,
                               const OpticalTrain& train, double cutoff_override) {
    if (!cfg.m3_enabled)
        throw std::invalid_argument("encode_retrieve: reference carving (m3) must be enabled");
    if (model.upsample != train.upsample)
        throw std::invalid_argument("encode_retrieve: model and train upsample differ");
    const int w = amplitude.width(), h = amplitude.height();
    if (w % (2 * cfg.cell) != 0 || h % (2 * cfg.cell) != 0)
        throw std::invalid_argument(
            "encode_retrieve: dimensions must be multiples of twice the cell side");

    const PhasePair pair = decompose(amplitude, phase);
    const PhaseElement alpha = multiplex(pair.lead, pair.lag, cfg.cell);
    const CarvedElement carved = carve_reference(alpha, cfg.cell);

    FilterSpec fs;
    fs.cutoff = cutoff_override > 0.0 ? cutoff_override : default_cutoff(cfg.cell, true);
    if (cfg.blazed_period > 0) {
        const double carrier = 1.0 / cfg.blazed_period;
        if (cfg.blazed_axis == BlazeAxis::horizontal)
            fs.center_u = carrier;
        else
            fs.center_v = carrier;
    }

    Interferogram igs[4] = {{RealGrid(w, h), 0.0},
                            {RealGrid(w, h), kPi / 2.0},
                            {RealGrid(w, h), kPi},
                            {RealGrid(w, h), 3.0 * kPi / 2.0}};
    for (int k = 0; k < 4; ++k) {
        PhaseElement stepped = add_piston(carved.alpha, carved.m3, igs[k].piston);
        if (cfg.blazed_period > 0)
            stepped = add_blazed(stepped, cfg.blazed_period, cfg.blazed_axis);
        const ComplexField device = render(stepped, cfg.cell, model);
        const ComplexField imaged = propagate(device, fs, train);
        igs[k].irradiance = camera_image(imaged, train.upsample);
    }
    const ComplexField obj = four_step_retrieve(igs[0], igs[1], igs[2], igs[3]);

    RealGrid amp(w, h);
    RealGrid ph(w, h);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            amp(i, j) = std::abs(obj(i, j));
            ph(i, j) = wrap_phase(std::arg(obj(i, j)));
        }
    }
    return {std::move(amp), PhaseElement(std::move(ph))};
}

std::vector<double> uniform_betas(int n) {
    if (n < 2)
        throw std::invalid_argument("uniform_betas: need at least 2 samples");
    std::vector<double> betas(n);
    for (int k = 0; k < n; ++k) betas[k] = kPi * k / (n - 1);
    betas.front() = 0.0;
    betas.back() = kPi;
    return betas;
}

}  // namespace dpholo
