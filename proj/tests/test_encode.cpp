#include <doctest.h>

#include "dpholo/optics.hpp"
#include "helpers.hpp"

using namespace dpholo;

TEST_SUITE("encode") {

TEST_CASE("decompose at the landmark amplitudes") {
    SUBCASE("full amplitude collapses both phases") {
        const PhasePair p = decompose(AmplitudeMap(2, 2, 2.0), PhaseElement(2, 2, 0.3));
        CHECK(p.lead(0, 0) == doctest::Approx(0.3));
        CHECK(p.lag(0, 0) == doctest::Approx(0.3));
    }
    SUBCASE("zero amplitude gives +-pi/2") {
        const PhasePair p = decompose(AmplitudeMap(2, 2, 0.0), PhaseElement(2, 2, 0.0));
        CHECK(p.lead(1, 1) == doctest::Approx(kPi / 2.0));
        CHECK(p.lag(1, 1) == doctest::Approx(-kPi / 2.0));
    }
    SUBCASE("unit amplitude gives +-pi/3 and sums to 1") {
        const PhasePair p = decompose(AmplitudeMap(2, 2, 1.0), PhaseElement(2, 2, 0.0));
        CHECK(p.lead(0, 1) == doctest::Approx(kPi / 3.0));
        CHECK(p.lag(0, 1) == doctest::Approx(-kPi / 3.0));
        const Cplx sum = std::polar(1.0, p.lead(0, 1)) + std::polar(1.0, p.lag(0, 1));
        CHECK(std::abs(sum - Cplx(1.0, 0.0)) < 1e-14);
    }
}

TEST_CASE("two-wave sum reproduces the field everywhere") {
    const int w = 23, h = 19;
    const AmplitudeMap amp = testutil::random_amplitude(w, h, 301);
    const PhaseElement ph = testutil::random_phase(w, h, 302);
    const PhasePair p = decompose(amp, ph);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const Cplx sum = std::polar(1.0, p.lead(i, j)) + std::polar(1.0, p.lag(i, j));
            const Cplx want = std::polar(amp(i, j), ph(i, j));
            CHECK(std::abs(sum - want) < 1e-12 * kAmpMax);
        }
    }
}

TEST_CASE("multiplex substitutes on the checkerboard") {
    SUBCASE("equal inputs pass through for any cell") {
        const PhaseElement a(8, 8, 0.7);
        for (int cell : {1, 2, 4}) {
            const PhaseElement m = multiplex(a, a, cell);
            for (int i = 0; i < 8; ++i)
                for (int j = 0; j < 8; ++j) CHECK(m(i, j) == 0.7);
        }
    }
    SUBCASE("2x2 single-pixel interleave") {
        const double b = 0.9;
        const PhaseElement m = multiplex(PhaseElement(2, 2, b), PhaseElement(2, 2, -b), 1);
        CHECK(m(0, 0) == b);
        CHECK(m(0, 1) == -b);
        CHECK(m(1, 0) == -b);
        CHECK(m(1, 1) == b);
    }
    SUBCASE("10-pixel cells: uniform inputs give block-constant output") {
        const PhaseElement m = multiplex(PhaseElement(20, 20, 0.8), PhaseElement(20, 20, -0.8), 10);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) CHECK(m(i, j) == m((i / 10) * 10, (j / 10) * 10));
    }
    SUBCASE("selection is pointwise on the checkerboard") {
        const PhaseElement lead = testutil::random_phase(20, 20, 303);
        const PhaseElement lag = testutil::random_phase(20, 20, 304);
        const PhaseElement m = multiplex(lead, lag, 10);
        const BinaryMask even = make_checkerboard(20, 20, 10, Parity::even);
        for (int i = 0; i < 20; ++i)
            for (int j = 0; j < 20; ++j) CHECK(m(i, j) == (even(i, j) ? lead(i, j) : lag(i, j)));
    }
    SUBCASE("dimension mismatch") {
        CHECK_THROWS_AS(multiplex(PhaseElement(4, 4, 0.0), PhaseElement(4, 5, 0.0), 1),
                        std::invalid_argument);
    }
}

TEST_CASE("blazed carrier ramp") {
    SUBCASE("period 2 cycles through {-pi, 0}") {
        const PhaseElement a = add_blazed(PhaseElement(4, 2, 0.0), 2, BlazeAxis::horizontal);
        CHECK(a(0, 0) == doctest::Approx(kPi));  // the -pi ramp start wraps to +pi
        CHECK(a(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(a(0, 2) == a(0, 0));
    }
    SUBCASE("period 4 cycles through the quarter ramp") {
        const PhaseElement a = add_blazed(PhaseElement(4, 2, 0.0), 4, BlazeAxis::horizontal);
        CHECK(a(0, 0) == doctest::Approx(kPi));  // wrapped -pi
        CHECK(a(0, 1) == doctest::Approx(-kPi / 2.0));
        CHECK(a(0, 2) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(a(0, 3) == doctest::Approx(kPi / 2.0));
    }
    SUBCASE("vertical axis ramps along rows") {
        const PhaseElement a = add_blazed(PhaseElement(2, 4, 0.0), 4, BlazeAxis::vertical);
        CHECK(a(1, 0) == doctest::Approx(-kPi / 2.0));
        CHECK(a(1, 1) == a(1, 0));
    }
    SUBCASE("adding then removing the ramp is the identity") {
        const PhaseElement base = testutil::random_phase(12, 12, 305);
        const PhaseElement up = add_blazed(base, 4, BlazeAxis::horizontal);
        for (int i = 0; i < 12; ++i) {
            for (int j = 0; j < 12; ++j) {
                const double ramp = -kPi + kTwoPi * (j % 4) / 4.0;
                CHECK(wrap_phase(up(i, j) - ramp) == doctest::Approx(base(i, j)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("period below 2 is rejected") {
        CHECK_THROWS_AS(add_blazed(PhaseElement(4, 4, 0.0), 1, BlazeAxis::horizontal),
                        std::invalid_argument);
    }
}

TEST_CASE("blazed carrier shifts the spectral peak by 1/period") {
    const int n = 64, period = 8;
    const PhaseElement a = add_blazed(PhaseElement(n, n, 0.0), period, BlazeAxis::horizontal);
    const ComplexField f = field_from_polar(AmplitudeMap(n, n, 1.0), a);
    const CplxGrid spec = forward_spectrum(f);
    int best_r = -1, best_c = -1;
    double best = -1.0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (std::abs(spec(r, c)) > best) {
                best = std::abs(spec(r, c));
                best_r = r;
                best_c = c;
            }
        }
    }
    CHECK(best_r == 0);
    CHECK(best_c == n / period);
}

TEST_CASE("reference carving") {
    SUBCASE("mask has double the multiplex cell") {
        const PhaseElement a = testutil::random_phase(8, 8, 306);
        const CarvedElement c = carve_reference(a, 1);
        CHECK(c.m3.cell() == 2);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                CHECK(c.alpha(i, j) == (c.m3(i, j) ? a(i, j) : 0.0));
    }
    SUBCASE("carving a zero element is the identity") {
        const CarvedElement c = carve_reference(PhaseElement(8, 8, 0.0), 2);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) CHECK(c.alpha(i, j) == 0.0);
    }
    SUBCASE("half the pixels are carved on multiple-of-4-cell grids") {
        for (int cell : {1, 2, 3}) {
            const int n = 8 * cell;
            const CarvedElement c = carve_reference(testutil::random_phase(n, n, 307), cell);
            int kept = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) kept += c.m3(i, j);
            CHECK(kept * 2 == n * n);
        }
    }
}

TEST_CASE("piston steps") {
    const PhaseElement a = testutil::random_phase(8, 8, 308);
    const BinaryMask m3 = make_checkerboard(8, 8, 2, Parity::even);
    SUBCASE("zero and full-turn steps are identities") {
        const PhaseElement z = add_piston(a, m3, 0.0);
        const PhaseElement full = add_piston(a, m3, kTwoPi);
        for (int i = 0; i < 8; ++i) {
            for (int j = 0; j < 8; ++j) {
                CHECK(z(i, j) == a(i, j));
                CHECK(full(i, j) == doctest::Approx(a(i, j)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("two quarter steps equal one half step") {
        const PhaseElement twice = add_piston(add_piston(a, m3, kPi / 2.0), m3, kPi / 2.0);
        const PhaseElement once = add_piston(a, m3, kPi);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                CHECK(wrap_phase(twice(i, j) - once(i, j)) ==
                      doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("reference cells are untouched") {
        const PhaseElement stepped = add_piston(a, m3, 1.234);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (!m3(i, j)) CHECK(stepped(i, j) == a(i, j));
    }
}

TEST_CASE("phase/offset split") {
    SUBCASE("full amplitude leaves no offset") {
        const PhaseSplit s =
            phase_offset_split(AmplitudeMap(4, 4, kAmpMax), PhaseElement(4, 4, 0.4), 1);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) CHECK(s.offset(i, j) == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("zero amplitude gives the +-pi/2 checkerboard") {
        const PhaseSplit s =
            phase_offset_split(AmplitudeMap(4, 4, 0.0), PhaseElement(4, 4, 0.0), 1);
        const BinaryMask even = make_checkerboard(4, 4, 1, Parity::even);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                CHECK(s.offset(i, j) == doctest::Approx(even(i, j) ? kPi / 2.0 : -kPi / 2.0));
    }
    SUBCASE("split agrees with decompose + multiplex pointwise") {
        const int w = 24, h = 16;
        const AmplitudeMap amp = testutil::random_amplitude(w, h, 309);
        const PhaseElement ph = testutil::random_phase(w, h, 310);
        for (int cell : {1, 2, 4}) {
            const PhaseSplit s = phase_offset_split(amp, ph, cell);
            const PhasePair p = decompose(amp, ph);
            const PhaseElement alpha = multiplex(p.lead, p.lag, cell);
            for (int i = 0; i < h; ++i)
                for (int j = 0; j < w; ++j)
                    CHECK(wrap_phase(s.base(i, j) + s.offset(i, j) - alpha(i, j)) ==
                          doctest::Approx(0.0).epsilon(1e-12));
        }
    }
}

}  // TEST_SUITE
