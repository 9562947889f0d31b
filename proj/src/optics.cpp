#include "dpholo/optics.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "dpholo/kernels.hpp"

namespace dpholo {

namespace {

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
using AlignedBuf = std::unique_ptr<fftw_complex[], FftwFree>;

AlignedBuf alloc_buf(std::size_t n) {
    fftw_complex* p = fftw_alloc_complex(n);
    if (!p) throw std::bad_alloc();
    return AlignedBuf(p);
}

// In-place plans per grid size, planned once with FFTW_ESTIMATE so repeated
// runs pick the same algorithm. Executed on fftw_malloc'd buffers only, whose
// alignment matches the planning buffer.
class PlanCache {
public:
    struct Plans {
        fftw_plan fwd = nullptr;
        fftw_plan inv = nullptr;
    };

    ~PlanCache() {
        for (auto& [key, p] : plans_) {
            fftw_destroy_plan(p.fwd);
            fftw_destroy_plan(p.inv);
        }
        fftw_cleanup();
    }

    Plans get(int h, int w) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find({h, w});
        if (it != plans_.end()) return it->second;
        AlignedBuf buf = alloc_buf(static_cast<std::size_t>(h) * w);
        Plans p;
        p.fwd = fftw_plan_dft_2d(h, w, buf.get(), buf.get(), FFTW_FORWARD, FFTW_ESTIMATE);
        p.inv = fftw_plan_dft_2d(h, w, buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
        if (!p.fwd || !p.inv) throw std::runtime_error("fftw planning failed");
        plans_.emplace(std::make_pair(h, w), p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, Plans> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

// bin index -> signed frequency index in (-n/2, n/2]
inline int wrapped_bin(int k, int n) { return k <= n / 2 ? k : k - n; }

// Largest frequency magnitude on the grid is the corner bin at
// sqrt(0.5) cycles per sub-pixel; cutoffs up to that radius pass everything.
constexpr double kCornerRadius = 0.70710678118654752440;

void validate_filter(const FilterSpec& filter, int upsample) {
    if (!(filter.cutoff > 0.0))
        throw std::invalid_argument("propagate: cutoff must be positive");
    if (filter.cutoff > upsample * kCornerRadius * (1.0 + 1e-9))
        throw std::invalid_argument("propagate: cutoff beyond the grid's corner frequency");
    if (!std::isfinite(filter.center_u) || !std::isfinite(filter.center_v))
        throw std::invalid_argument("propagate: non-finite iris center");
}

void apply_iris(Cplx* spec, int w, int h, const FilterSpec& filter, int upsample) {
    const double cs = filter.cutoff / upsample;  // cycles per sub-pixel
    const double cu = filter.center_u / upsample;
    const double cv = filter.center_v / upsample;
    std::vector<double> fx(w);
    for (int c = 0; c < w; ++c) fx[c] = static_cast<double>(wrapped_bin(c, w)) / w;
    for (int r = 0; r < h; ++r) {
        Cplx* row = spec + static_cast<std::size_t>(r) * w;
        const double dy = static_cast<double>(wrapped_bin(r, h)) / h - cv;
        const double rem = cs * cs - dy * dy;
        if (rem < 0.0) {
            kernels::fill(row, Cplx(0.0, 0.0), static_cast<std::size_t>(w));
            continue;
        }
        for (int c = 0; c < w; ++c) {
            const double dx = fx[c] - cu;
            if (dx * dx > rem) row[c] = Cplx(0.0, 0.0);
        }
    }
}

}  // namespace

ComplexField propagate(const ComplexField& field, const FilterSpec& filter,
                       const OpticalTrain& train) {
    if (train.upsample < 1)
        throw std::invalid_argument("propagate: upsample must be at least 1");
    const int w = field.width(), h = field.height();
    if (w < 4 || h < 4)
        throw std::invalid_argument("propagate: field dimensions must be at least 4");
    validate_filter(filter, train.upsample);

    const std::size_t n = static_cast<std::size_t>(w) * h;
    const PlanCache::Plans plans = plan_cache().get(h, w);
    AlignedBuf buf = alloc_buf(n);
    std::memcpy(buf.get(), field.grid().data(), n * sizeof(Cplx));

    fftw_execute_dft(plans.fwd, buf.get(), buf.get());
    apply_iris(reinterpret_cast<Cplx*>(buf.get()), w, h, filter, train.upsample);
    fftw_execute_dft(plans.inv, buf.get(), buf.get());
    kernels::scale(reinterpret_cast<Cplx*>(buf.get()), 1.0 / static_cast<double>(n), n);

    const Cplx* src = reinterpret_cast<const Cplx*>(buf.get());
    CplxGrid out(w, h);
    if (!train.flip_output) {
        std::memcpy(out.data(), src, n * sizeof(Cplx));
    } else {
        for (int i = 0; i < h; ++i) {
            const Cplx* srow = src + static_cast<std::size_t>((h - i) % h) * w;
            Cplx* drow = out.row(i);
            for (int j = 0; j < w; ++j) drow[j] = srow[(w - j) % w];
        }
    }
    return ComplexField(std::move(out));
}

double default_cutoff(int cell, bool m3_active) {
    if (cell < 1)
        throw std::invalid_argument("default_cutoff: cell must be at least 1");
    const double fundamental = m3_active ? 1.0 / (4.0 * cell) : 1.0 / (2.0 * cell);
    return 0.5 * fundamental;
}

CplxGrid forward_spectrum(const ComplexField& field) {
    const int w = field.width(), h = field.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const PlanCache::Plans plans = plan_cache().get(h, w);
    AlignedBuf buf = alloc_buf(n);
    std::memcpy(buf.get(), field.grid().data(), n * sizeof(Cplx));
    fftw_execute_dft(plans.fwd, buf.get(), buf.get());
    CplxGrid out(w, h);
    std::memcpy(static_cast<void*>(out.data()), buf.get(), n * sizeof(Cplx));
    return out;
}

CplxGrid inverse_spectrum(const CplxGrid& spectrum) {
    const int w = spectrum.width(), h = spectrum.height();
    const std::size_t n = static_cast<std::size_t>(w) * h;
    const PlanCache::Plans plans = plan_cache().get(h, w);
    AlignedBuf buf = alloc_buf(n);
    std::memcpy(buf.get(), spectrum.data(), n * sizeof(Cplx));
    fftw_execute_dft(plans.inv, buf.get(), buf.get());
    kernels::scale(reinterpret_cast<Cplx*>(buf.get()), 1.0 / static_cast<double>(n), n);
    CplxGrid out(w, h);
    std::memcpy(static_cast<void*>(out.data()), buf.get(), n * sizeof(Cplx));
    return out;
}

}  // namespace dpholo
