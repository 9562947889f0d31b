#include <doctest.h>

#include "dpholo/kernels.hpp"
#include "dpholo/patterns.hpp"
#include "helpers.hpp"

using namespace dpholo;

namespace {

double rel_l2(const CplxGrid& got, const CplxGrid& want) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        num += std::norm(got.data()[i] - want.data()[i]);
        den += std::norm(want.data()[i]);
    }
    return std::sqrt(num / den);
}

}  // namespace

TEST_SUITE("optics") {

TEST_CASE("default cutoff sits halfway to the first order") {
    CHECK(default_cutoff(1, false) == doctest::Approx(0.25));
    CHECK(default_cutoff(1, true) == doctest::Approx(0.125));
    CHECK(default_cutoff(10, false) == doctest::Approx(0.025));
    CHECK(default_cutoff(4, true) == doctest::Approx(1.0 / 32.0));
    CHECK_THROWS_AS(default_cutoff(0, false), std::invalid_argument);
}

TEST_CASE("uniform field passes any iris unchanged") {
    const ComplexField f = field_from_polar(AmplitudeMap(16, 16, 1.3), PhaseElement(16, 16, 0.4));
    const ComplexField out = propagate(f, FilterSpec{0.01, 0.0, 0.0}, OpticalTrain{1, false});
    CHECK(testutil::max_abs_diff(out.grid(), f.grid()) < 1e-13);
}

TEST_CASE("corner-radius iris is the identity") {
    CplxGrid g(12, 12);
    testutil::Rng rng(501);
    for (std::size_t i = 0; i < g.size(); ++i)
        g.data()[i] = Cplx(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
    const ComplexField f{std::move(g)};
    const ComplexField out =
        propagate(f, FilterSpec{0.70710678118655, 0.0, 0.0}, OpticalTrain{1, false});
    CHECK(testutil::max_abs_diff(out.grid(), f.grid()) < 1e-13);
}

TEST_CASE("the +-pi/2 checkerboard has no zero order") {
    const PhaseElement alpha =
        multiplex(PhaseElement(32, 32, kPi / 2.0), PhaseElement(32, 32, -kPi / 2.0), 1);
    const ComplexField device = render(alpha, 1, CrosstalkModel{0.0, 1, 0.5});
    const ComplexField out =
        propagate(device, FilterSpec{0.25, 0.0, 0.0}, OpticalTrain{1, false});
    double peak = 0.0;
    for (std::size_t i = 0; i < out.grid().size(); ++i)
        peak = std::max(peak, std::abs(out.grid().data()[i]));
    CHECK(peak < 1e-10);
}

TEST_CASE("energy never grows through the iris") {
    testutil::Rng rng(502);
    for (int t = 0; t < 10; ++t) {
        CplxGrid g(24, 18);
        for (std::size_t i = 0; i < g.size(); ++i)
            g.data()[i] = Cplx(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
        const double ein = kernels::sum_abs2(g.data(), g.size());
        const ComplexField f{std::move(g)};
        const FilterSpec fs{rng.range(0.02, 0.7), rng.range(-0.2, 0.2), rng.range(-0.2, 0.2)};
        const ComplexField out = propagate(f, fs, OpticalTrain{1, false});
        const double eout = kernels::sum_abs2(out.grid().data(), out.grid().size());
        CHECK(eout <= ein * (1.0 + 1e-12));
    }
}

TEST_CASE("propagate is linear") {
    testutil::Rng rng(503);
    CplxGrid ga(16, 16), gb(16, 16), gc(16, 16);
    const Cplx wa(0.7, -0.3), wb(-1.1, 0.4);
    for (std::size_t i = 0; i < ga.size(); ++i) {
        ga.data()[i] = Cplx(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
        gb.data()[i] = Cplx(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
        gc.data()[i] = wa * ga.data()[i] + wb * gb.data()[i];
    }
    const FilterSpec fs{0.2, 0.0, 0.0};
    const OpticalTrain tr{1, false};
    const ComplexField pa = propagate(ComplexField{std::move(ga)}, fs, tr);
    const ComplexField pb = propagate(ComplexField{std::move(gb)}, fs, tr);
    const ComplexField pc = propagate(ComplexField{std::move(gc)}, fs, tr);
    double worst = 0.0;
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            worst = std::max(worst, std::abs(pc(i, j) - (wa * pa(i, j) + wb * pb(i, j))));
    CHECK(worst < 1e-13);
}

TEST_CASE("output flip point-reflects through the grid center") {
    CplxGrid g(8, 8);
    testutil::Rng rng(504);
    for (std::size_t i = 0; i < g.size(); ++i)
        g.data()[i] = Cplx(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
    const ComplexField f{std::move(g)};
    const FilterSpec all{0.70710678118655, 0.0, 0.0};
    const ComplexField flipped = propagate(f, all, OpticalTrain{1, true});
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j)
            CHECK(std::abs(flipped(i, j) - f((8 - i) % 8, (8 - j) % 8)) < 1e-13);
}

TEST_CASE("cutoff validation") {
    const ComplexField f = field_from_polar(AmplitudeMap(8, 8, 1.0), PhaseElement(8, 8, 0.0));
    CHECK_THROWS_AS(propagate(f, FilterSpec{0.0, 0.0, 0.0}, OpticalTrain{1, false}),
                    std::invalid_argument);
    CHECK_THROWS_AS(propagate(f, FilterSpec{-0.1, 0.0, 0.0}, OpticalTrain{1, false}),
                    std::invalid_argument);
    CHECK_THROWS_AS(propagate(f, FilterSpec{0.8, 0.0, 0.0}, OpticalTrain{1, false}),
                    std::invalid_argument);
    CHECK_THROWS_AS(propagate(f, FilterSpec{1.5, 0.0, 0.0}, OpticalTrain{2, false}),
                    std::invalid_argument);
}

TEST_CASE("band-limited fields survive encode + filter for every cell") {
    const int n = 160;
    const ComplexField u = band_limited_field(n, n, 0.02, 77);
    AmplitudeMap amp = [&] {
        RealGrid a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a(i, j) = std::abs(u(i, j));
        return AmplitudeMap(std::move(a));
    }();
    PhaseElement ph = [&] {
        RealGrid p(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p(i, j) = wrap_phase(std::arg(u(i, j)));
        return PhaseElement(std::move(p));
    }();

    for (int cell : {1, 2, 4, 5, 10}) {
        const PhasePair pair = decompose(amp, ph);
        const PhaseElement alpha = multiplex(pair.lead, pair.lag, cell);
        const ComplexField device = render(alpha, cell, CrosstalkModel{0.0, 1, 0.5});
        const ComplexField out = propagate(
            device, FilterSpec{default_cutoff(cell, false), 0.0, 0.0}, OpticalTrain{1, false});
        // the passed zero order carries U/2
        CplxGrid half(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) half(i, j) = 0.5 * u(i, j);
        CHECK(rel_l2(out.grid(), half) < 0.01);
    }
}

}  // TEST_SUITE
