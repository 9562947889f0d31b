#include <doctest.h>

#include "dpholo/retrieve.hpp"
#include "helpers.hpp"

using namespace dpholo;

TEST_SUITE("slm") {

TEST_CASE("zone split landmarks") {
    SUBCASE("frozen case: 16 sub-pixels at eta 0.73") {
        // 16 * sqrt(0.27) = 8.3139 rounds to 8; realized border 1 - 64/256
        const CrosstalkModel m{0.73, 16, 0.5};
        const CellZones z = cell_zones(1, m);
        CHECK(z.side == 16);
        CHECK(z.core == 8);
        CHECK(z.offset == 4);
        CHECK(realized_eta(1, m) == doctest::Approx(0.75));
    }
    SUBCASE("eta zero has no border") {
        const CrosstalkModel m{0.0, 4, 0.5};
        CHECK(realized_eta(2, m) == 0.0);
        const CellZones z = cell_zones(2, m);
        CHECK(z.core == z.side);
    }
    SUBCASE("realized eta converges with resolution") {
        const double eta = 0.37;
        double prev_err = 1.0;
        for (int up : {8, 32, 128, 512}) {
            const double err = std::abs(realized_eta(1, CrosstalkModel{eta, up, 0.5}) - eta);
            CHECK(err <= prev_err + 1e-12);
            prev_err = err;
        }
        CHECK(prev_err < 5e-3);
    }
    SUBCASE("one-sub-pixel rounding bound") {
        testutil::Rng rng(41);
        for (int t = 0; t < 200; ++t) {
            const int up = 2 + static_cast<int>(rng.next() % 31);
            const int cell = 1 + static_cast<int>(rng.next() % 4);
            const double eta = rng.range(0.0, 0.9);
            const CrosstalkModel m{eta, up, 0.5};
            const int side = cell * up;
            const double bound = (2.0 * side - 1.0) / (static_cast<double>(side) * side);
            CHECK(std::abs(realized_eta(cell, m) - eta) <= bound + 1e-12);
        }
    }
    SUBCASE("unrepresentable borders are rejected") {
        CHECK_THROWS_AS(cell_zones(1, CrosstalkModel{0.5, 1, 0.5}), std::invalid_argument);
        // side 2, eta past 1 - (0.5/2)^2: the rounded core vanishes
        CHECK_THROWS_AS(cell_zones(1, CrosstalkModel{0.95, 2, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(cell_zones(1, CrosstalkModel{-0.1, 4, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(cell_zones(1, CrosstalkModel{1.0, 4, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(cell_zones(0, CrosstalkModel{0.0, 4, 0.5}), std::invalid_argument);
    }
}

TEST_CASE("render") {
    const PhaseElement alpha = testutil::random_phase(8, 6, 401);
    SUBCASE("eta zero equals nearest-neighbour upsampling, bitwise") {
        const ComplexField r = render(alpha, 2, CrosstalkModel{0.0, 3, 0.5});
        for (int i = 0; i < r.height(); ++i)
            for (int j = 0; j < r.width(); ++j)
                CHECK(r(i, j) == std::polar(1.0, alpha(i / 3, j / 3)));
    }
    SUBCASE("border_factor 1 equals plain upsampling at any eta") {
        const ComplexField a = render(alpha, 2, CrosstalkModel{0.6, 4, 1.0});
        const ComplexField b = render(alpha, 2, CrosstalkModel{0.0, 4, 1.0});
        CHECK(testutil::max_abs_diff(a.grid(), b.grid()) == 0.0);
    }
    SUBCASE("output modulus is 1 everywhere") {
        const ComplexField r = render(alpha, 2, CrosstalkModel{0.5, 4, 0.5});
        for (int i = 0; i < r.height(); ++i)
            for (int j = 0; j < r.width(); ++j)
                CHECK(std::abs(std::norm(r(i, j)) - 1.0) < 5e-16);
    }
    SUBCASE("border frame carries the attenuated phase") {
        const PhaseElement flat(4, 4, 1.0);
        const CrosstalkModel m{0.75, 4, 0.5};  // side 4, core 2, offset 1
        const CellZones z = cell_zones(1, m);
        CHECK(z.core == 2);
        const ComplexField r = render(flat, 1, m);
        for (int i = 0; i < r.height(); ++i) {
            for (int j = 0; j < r.width(); ++j) {
                const bool core = (i % 4 == 1 || i % 4 == 2) && (j % 4 == 1 || j % 4 == 2);
                CHECK(r(i, j) == std::polar(1.0, core ? 1.0 : 0.5));
            }
        }
    }
    SUBCASE("odd frame width leans right and bottom") {
        const CrosstalkModel m{0.51, 5, 0.5};  // side 5, core = round(3.5) = 4
        const CellZones z = cell_zones(1, m);
        CHECK(z.core == 4);
        CHECK(z.offset == 0);
    }
    SUBCASE("dimensions must be cell multiples") {
        CHECK_THROWS_AS(render(alpha, 3, CrosstalkModel{0.0, 2, 0.5}), std::invalid_argument);
    }
}

TEST_CASE("fixed-width border fraction across cell sizes") {
    // one frame width reproduces the whole fitted-ratio family
    CHECK(eta_at_cell(0.73, 1) == doctest::Approx(0.73));
    CHECK(eta_at_cell(0.73, 4) == doctest::Approx(0.22).epsilon(0.03));
    CHECK(eta_at_cell(0.73, 10) == doctest::Approx(0.09).epsilon(0.05));
    CHECK(eta_at_cell(0.0, 7) == 0.0);
    double prev = 1.0;
    for (int cell : {1, 2, 3, 5, 8, 16}) {
        const double e = eta_at_cell(0.5, cell);
        CHECK(e < prev);
        prev = e;
    }
    CHECK_THROWS_AS(eta_at_cell(1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(eta_at_cell(0.5, 0), std::invalid_argument);
}

TEST_CASE("filtered irradiance grows with eta at the null point") {
    // at beta = pi/2 the ideal output is dark; borders break the cancellation
    const FilterSpec filter{default_cutoff(1, false), 0.0, 0.0};
    const std::vector<double> betas{kPi / 2.0};
    double prev = -1.0;
    for (double eta : {0.0, 0.2, 0.4, 0.73}) {
        const CrosstalkModel m{eta, 8, 0.5};
        // single-beta sweep: normalization is a no-op only for the raw value,
        // so read the unnormalized irradiance through a two-point sweep
        const SweepResult s =
            flat_sweep(32, 32, std::vector<double>{0.0, kPi / 2.0}, 1, m, filter);
        const double at_null = s.irradiance[1];
        CHECK(at_null >= prev - 1e-12);
        prev = at_null;
    }
    CHECK(prev > 0.2);  // eta 0.73 lifts the null well above zero
}

TEST_CASE("filtered irradiance is grid-converged in upsample") {
    // etas exactly representable at the base resolution, so the zone split
    // scales with upsample and the comparison isolates sampling effects
    const FilterSpec filter{default_cutoff(1, false), 0.0, 0.0};
    const std::vector<double> betas = uniform_betas(9);
    for (double eta : {0.609375, 0.75}) {  // 1-(5/8)^2 and 1-(4/8)^2
        SweepResult prev;
        for (int up : {8, 16, 32}) {
            const SweepResult s = flat_sweep(32, 32, betas, 1, CrosstalkModel{eta, up, 0.5}, filter);
            if (up != 8) {
                for (std::size_t k = 0; k < betas.size(); ++k)
                    CHECK(std::abs(s.irradiance[k] - prev.irradiance[k]) < 1e-2);
            }
            prev = s;
        }
    }
}

}  // TEST_SUITE
