#include "dpholo/slm.hpp"

#include <algorithm>
#include <cmath>

namespace dpholo {

namespace {

void validate_model(const CrosstalkModel& m) {
    if (!(m.eta >= 0.0 && m.eta < 1.0))
        throw std::invalid_argument("CrosstalkModel: eta must be in [0, 1)");
    if (m.upsample < 1)
        throw std::invalid_argument("CrosstalkModel: upsample must be at least 1");
    if (!(m.border_factor >= 0.0 && m.border_factor <= 1.0))
        throw std::invalid_argument("CrosstalkModel: border_factor must be in [0, 1]");
}

}  // namespace

CellZones cell_zones(int cell, const CrosstalkModel& model) {
    if (cell < 1)
        throw std::invalid_argument("cell_zones: cell must be at least 1");
    validate_model(model);
    const int side = cell * model.upsample;
    if (model.eta > 0.0 && side < 2)
        throw std::invalid_argument("cell_zones: border not representable at this resolution");
    // round half up
    int core = static_cast<int>(std::floor(side * std::sqrt(1.0 - model.eta) + 0.5));
    if (core < 1)
        throw std::invalid_argument("cell_zones: eta too large, central square vanishes");
    if (core > side) core = side;
    return {side, core, (side - core) / 2};
}

double realized_eta(int cell, const CrosstalkModel& model) {
    const CellZones z = cell_zones(cell, model);
    const double ratio = static_cast<double>(z.core) / z.side;
    return 1.0 - ratio * ratio;
}

double eta_at_cell(double eta_single_pixel, int cell) {
    if (!(eta_single_pixel >= 0.0 && eta_single_pixel < 1.0))
        throw std::invalid_argument("eta_at_cell: eta must be in [0, 1)");
    if (cell < 1)
        throw std::invalid_argument("eta_at_cell: cell must be at least 1");
    const double width = 1.0 - std::sqrt(1.0 - eta_single_pixel);
    const double core = (cell - width) / cell;
    return 1.0 - core * core;
}

ComplexField render(const PhaseElement& alpha, int cell, const CrosstalkModel& model) {
    const CellZones z = cell_zones(cell, model);
    const int w = alpha.width(), h = alpha.height();
    if (w % cell != 0 || h % cell != 0)
        throw std::invalid_argument("render: dimensions must be multiples of the cell side");
    const int up = model.upsample;
    const int ws = w * up, hs = h * up;

    // core membership of a sub-pixel position within its cell
    std::vector<bool> in_core(z.side);
    for (int t = 0; t < z.side; ++t)
        in_core[t] = t >= z.offset && t < z.offset + z.core;

    CplxGrid out(ws, hs);
    // Rows of one SLM pixel row come in two flavours only: all-border, or the
    // core/border mix. Build each once and copy it to the matching sub-rows.
    std::vector<Cplx> row_border(ws), row_mix(ws);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const double p = alpha(i, j);
            const Cplx core_v = std::polar(1.0, p);
            const Cplx edge_v = std::polar(1.0, model.border_factor * p);
            const int base = j * up;
            const int jc = (j % cell) * up;
            for (int t = 0; t < up; ++t) {
                row_border[base + t] = edge_v;
                row_mix[base + t] = in_core[jc + t] ? core_v : edge_v;
            }
        }
        for (int a = 0; a < up; ++a) {
            const int r = i * up + a;
            const std::vector<Cplx>& src = in_core[r % z.side] ? row_mix : row_border;
            std::copy(src.begin(), src.end(), out.row(r));
        }
    }
    return ComplexField(std::move(out));
}

}  // namespace dpholo
