#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gamp/loop.hpp"
#include "gamp/params.hpp"

#include "oracles.hpp"

using namespace gamp;

TEST_CASE("omega on regime examples") {
    CHECK(omega({3.0, 2.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(omega({0.0, 1.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(omega({1.0, 1.0, 1.0}), regime_error); // Y^2 - XZ = 0
    CHECK_THROWS_AS(omega({3.0, 2.0, -1.0}), regime_error); // Z < 0 convention
    CHECK_THROWS_AS(omega({3.0, 2.0, 0.0}), regime_error);
}

TEST_CASE("energy growth rates") {
    CHECK(energy({3.0, 2.0, 1.0}, 0).growth_rate == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(energy({3.0, 2.0, 1.0}, 1).growth_rate == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(energy({0.0, 2.0, 1.0}, 0).growth_rate == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(energy({3.0, 2.0, 1.0}, 2).level == 2);
    CHECK_THROWS_AS(energy({3.0, 2.0, 1.0}, -1), std::invalid_argument);
}

TEST_CASE("ellipse preset validates with the frozen minimum") {
    const ParameterLoop ell = make_ellipse(2.0, 0.5, 1.0, 0.5, 100.0);
    const LoopValidation v = validate_loop(ell);
    CHECK(v.min_discriminant == doctest::Approx(oracles::kEllipseMinDisc).epsilon(1e-12));
    CHECK(v.min_omega == doctest::Approx(oracles::kEllipseOmegaMin).epsilon(1e-12));
    CHECK(v.argmin_s == doctest::Approx(oracles::kEllipseArgminS).epsilon(1e-6));
    CHECK(v.min_z == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("wobble preset stays in regime with disc >= 1/2") {
    const ParameterLoop wob = make_constant_x_wobble(2.0, 1.0, 3.0, 0.5, 100.0);
    const LoopValidation v = validate_loop(wob);
    CHECK(v.min_discriminant == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(v.min_omega == doctest::Approx(oracles::kWobbleOmegaMin).epsilon(1e-10));
}

TEST_CASE("out-of-regime ellipse is rejected with the offending s") {
    CHECK_THROWS_AS(make_ellipse(1.0, 0.5, 1.0, 0.5, 100.0), regime_error);
    try {
        make_ellipse(1.0, 0.5, 1.0, 0.5, 100.0);
    } catch (const regime_error& e) {
        CHECK(std::string(e.what()).find("s = ") != std::string::npos);
    }
}

TEST_CASE("preset derivatives agree with finite differences") {
    const double h = 1e-6;
    for (const ParameterLoop& loop : {make_ellipse(2.0, 0.5, 1.0, 0.5, 10.0),
                                      make_constant_x_wobble(2.0, 1.0, 3.0, 0.5, 10.0)}) {
        for (double s : {0.1, 0.37, 0.62, 0.9}) {
            const auto d = loop.derivative(s);
            const ParameterPoint plus = loop.point(s + h);
            const ParameterPoint minus = loop.point(s - h);
            const double fd[3] = {(plus.X - minus.X) / (2.0 * h),
                                  (plus.Y - minus.Y) / (2.0 * h),
                                  (plus.Z - minus.Z) / (2.0 * h)};
            for (int i = 0; i < 3; ++i) {
                CHECK(std::abs(d[i] - fd[i]) <= 1e-6 * (1.0 + std::abs(d[i])));
            }
        }
    }
}

TEST_CASE("custom fourier loop matches its series") {
    FourierSeries X{3.0, {0.2}, {0.5}};
    FourierSeries Y{2.0, {}, {0.1}};
    FourierSeries Z{1.0, {}, {}};
    const ParameterLoop loop = make_fourier_loop(X, Y, Z, 50.0);
    CHECK(loop.kind() == "custom-fourier");
    const ParameterPoint p = loop.point(0.25);
    CHECK(p.X == doctest::Approx(3.0 + 0.2 * std::cos(std::numbers::pi / 2.0) + 0.5).epsilon(1e-12));
    CHECK(p.Y == doctest::Approx(2.1).epsilon(1e-12));
    CHECK(p.Z == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("non-closed path is rejected") {
    auto point = [](double s) { return ParameterPoint{3.0 + s, 2.0, 1.0}; };
    auto deriv = [](double) { return std::array<double, 3>{1.0, 0.0, 0.0}; };
    const ParameterLoop open("broken", 1.0, point, deriv);
    CHECK_THROWS_AS(validate_loop(open), std::invalid_argument);
}

TEST_CASE("reverse and shift are exact loop symmetries") {
    const ParameterLoop ell = make_ellipse(2.0, 0.5, 1.0, 0.5, 10.0);
    const ParameterLoop rev2 = reverse_loop(reverse_loop(ell));
    const ParameterLoop sh0 = shift_loop(ell, 0.0);
    const ParameterLoop sh = shift_loop(ell, 0.25);
    for (double s : {0.0, 0.2, 0.5, 0.77}) {
        CHECK(rev2.point(s).X == doctest::Approx(ell.point(s).X).epsilon(1e-14));
        CHECK(rev2.point(s).Y == doctest::Approx(ell.point(s).Y).epsilon(1e-14));
        CHECK(sh0.point(s).Y == doctest::Approx(ell.point(s).Y).epsilon(1e-14));
        CHECK(sh.point(s).X == doctest::Approx(ell.point(s + 0.25).X).epsilon(1e-14));
    }
    CHECK(sh.point(0.0).X == doctest::Approx(ell.point(0.25).X).epsilon(1e-14));
    // reversal keeps the image as a set
    const LoopValidation a = validate_loop(ell);
    const LoopValidation b = validate_loop(reverse_loop(ell));
    CHECK(a.min_discriminant == doctest::Approx(b.min_discriminant).epsilon(1e-10));
}

TEST_CASE("period handling") {
    const ParameterLoop ell = make_ellipse(2.0, 0.5, 1.0, 0.5, 10.0);
    CHECK(ell.period() == 10.0);
    CHECK(ell.with_period(25.0).period() == 25.0);
    CHECK_THROWS_AS(ell.with_period(-1.0), std::invalid_argument);
    CHECK(ParameterLoop::wrap(1.25) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(ParameterLoop::wrap(-0.25) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("constant loop is a valid degenerate loop") {
    const ParameterLoop c = make_constant_loop({3.0, 2.0, 1.0}, 5.0);
    CHECK(validate_loop(c).min_discriminant == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(make_constant_loop({1.0, 1.0, 1.0}, 5.0), regime_error);
}
