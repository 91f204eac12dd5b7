#include <cmath>
#include <random>

#include "doctest.h"
#include "wavemaplab/geometry.hpp"
#include "wavemaplab/model.hpp"

using namespace wml;

namespace {

// Independent oracle: the raw three-term remainder in extended precision,
// with no series branches. Only valid where 2 r z is not absurdly small.
long double remainder_three_term_ld(long double r, long double phi, int d) {
    const long double c = std::sqrt((long double)(d - 4));
    const long double ws = 2.0L * std::atan(r / c) / r;
    auto F = [&](long double z) {
        return (long double)(d - 3) / 2.0L * (std::sin(2.0L * r * z) - 2.0L * r * z) / (r * r * r);
    };
    const long double Fp = (long double)(d - 3) * (std::cos(2.0L * r * ws) - 1.0L) / (r * r);
    return F(ws + phi) - F(ws) - Fp * phi;
}

}  // namespace

TEST_CASE("u_star and the static slice profile") {
    CHECK(u_star(1.0, 0.0, 5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(u_star(1.0, 1.0, 5) == doctest::Approx(pi / 2.0).epsilon(1e-14));
    CHECK(u_star(2.0, 0.0, 9) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK_THROWS_AS(u_star(0.0, 1.0, 5), std::domain_error);

    CHECK(w_star_fhsc(0.0, 5) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(w_star_fhsc(1.0, 5) == doctest::Approx(pi / 2.0).epsilon(1e-14));
    CHECK(w_star_fhsc(1.0, 20) == doctest::Approx(2.0 * std::atan(0.25)).epsilon(1e-14));

    // series branch joins the direct branch smoothly
    for (Real r : {0.0999, 0.1001}) {
        CHECK(u_star(1.0, r, 5) == doctest::Approx(2.0 * std::atan(r) / r).epsilon(1e-14));
    }
}

TEST_CASE("potential values") {
    CHECK(potential_v(0.0, 5) == doctest::Approx(-16.0));
    CHECK(potential_v(1.0, 5) == doctest::Approx(-4.0));
    CHECK(potential_v(0.0, 7) == doctest::Approx(-32.0 / 3.0).epsilon(1e-15));
    // smooth, strictly negative, bounded
    for (int i = 0; i <= 100; ++i) {
        const Real y = Real(i) / 100.0;
        CHECK(potential_v(y, 7) < 0.0);
        CHECK(std::abs(potential_v(y, 7)) < 100.0);
    }
}

TEST_CASE("f_tilde family") {
    CHECK(f_tilde(0.3, 0.0, 5) == 0.0);
    CHECK(f_tilde(0.0, 0.7, 7) == doctest::Approx(-2.0 / 3.0 * 4.0 * 0.343).epsilon(1e-13));
    CHECK(f_tilde(1.0, pi / 4.0, 5) == doctest::Approx(1.0 - pi / 2.0).epsilon(1e-14));
    CHECK(f_tilde_second(0.0, 0.4, 5) == doctest::Approx(-8.0 * 0.4).epsilon(1e-14));
    CHECK(f_tilde_second(0.5, 0.4, 5) == doctest::Approx(-2.0 * 2.0 * std::sin(0.4) / 0.5).epsilon(1e-14));
    CHECK(f_tilde_prime(0.5, 0.8, 5) == doctest::Approx(2.0 * (std::cos(0.8) - 1.0) / 0.25).epsilon(1e-13));
}

TEST_CASE("linearization consistency: centered difference of f_tilde at w* equals V") {
    const Real eps = 1e-5;
    for (int d : {5, 7, 9}) {
        Real worst = 0.0;
        for (int i = 0; i <= 64; ++i) {
            const Real r = Real(i) / 64.0;
            const Real ws = w_star_fhsc(r, d);
            const Real diff = (f_tilde(r, ws + eps, d) - f_tilde(r, ws - eps, d)) / (2.0 * eps);
            worst = std::max(worst, std::abs(diff - potential_v(r, d)));
        }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("nonlinear remainder: frozen values and extended-precision oracle") {
    CHECK(nonlinear_remainder(0.37, 0.0, 5) == 0.0);
    CHECK(nonlinear_remainder(1.0, 0.0, 9) == 0.0);

    // closed-form limit at r = 0: -(d-3)(2 phi^3/3 + 2 w*(0) phi^2)
    CHECK(nonlinear_remainder(0.0, 0.1, 5) ==
          doctest::Approx(-0.08133333333333334).epsilon(1e-12));
    const double oracle_near_zero = (double)remainder_three_term_ld(1e-6L, 0.1L, 5);
    CHECK(nonlinear_remainder(0.0, 0.1, 5) == doctest::Approx(oracle_near_zero).epsilon(1e-5));

    const double oracle_at_one = (double)remainder_three_term_ld(1.0L, 0.2L, 5);
    CHECK(nonlinear_remainder(1.0, 0.2, 5) == doctest::Approx(oracle_at_one).epsilon(1e-13));
}

TEST_CASE("nonlinear remainder equals the three-term definition away from r = 0") {
    // The double-precision three-term difference loses digits to
    // cancellation, so the oracle runs in extended precision; the scale
    // floor is the quadratic size of the remainder itself.
    for (int d : {5, 7, 9}) {
        Real worst = 0.0;
        for (int i = 1; i <= 40; ++i) {
            const Real r = 0.01 + (1.0 - 0.01) * Real(i) / 40.0;
            for (Real phi : {-1.0, -0.5, -0.05, 0.05, 0.3, 1.0}) {
                const Real direct = (Real)remainder_three_term_ld((long double)r, (long double)phi, d);
                const Real val = nonlinear_remainder(r, phi, d);
                const Real scale = std::max(std::abs(direct), Real(d - 3) * phi * phi * 1e-3);
                worst = std::max(worst, std::abs(val - direct) / scale);
            }
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("quadratic smallness of the remainder") {
    for (int d : {5, 7, 9}) {
        Real c_measured = 0.0;
        for (int i = 0; i <= 50; ++i) {
            const Real r = Real(i) / 50.0;
            for (Real phi : {-1.0, -0.3, -0.01, 0.01, 0.3, 1.0})
                c_measured = std::max(c_measured, std::abs(nonlinear_remainder(r, phi, d)) / (phi * phi));
        }
        CHECK(c_measured < 10.0 * Real(d - 3));
    }
}

TEST_CASE("weighted remainder") {
    CHECK(weighted_remainder(1.0, 5.0, 5) == 0.0);
    CHECK(weighted_remainder(0.4, 0.0, 5) == 0.0);

    const WeightSpec spec{3, 5};
    const Real r = 0.5, q1 = 0.3;
    const Real composed = weight(spec, r) * nonlinear_remainder(r, weight_reciprocal(spec, r) * q1, 5);
    CHECK(weighted_remainder(r, q1, 5) == doctest::Approx(composed).epsilon(1e-12));

    // d = 7 cross-check of the weighted composition
    const WeightSpec spec7{3, 7};
    const Real composed7 =
        weight(spec7, r) * nonlinear_remainder(r, weight_reciprocal(spec7, r) * q1, 7);
    CHECK(weighted_remainder(r, q1, 7) == doctest::Approx(composed7).epsilon(1e-12));

    // the composition identity holds across the interior for several d
    for (int d : {5, 7, 9}) {
        const WeightSpec sp{3, d};
        Real worst = 0.0;
        for (int i = 1; i <= 30; ++i) {
            const Real rr = Real(i) / 30.0 - 1e-3;
            for (Real q : {-2.0, -0.4, 0.05, 1.3}) {
                const Real direct = weight(sp, rr) * nonlinear_remainder(rr, weight_reciprocal(sp, rr) * q, d);
                const Real scale = std::max(std::abs(direct), 1e-10);
                worst = std::max(worst, std::abs(weighted_remainder(rr, q, d) - direct) / scale);
            }
        }
        CHECK(worst < 1e-11);
    }
}

TEST_CASE("corotational embedding lands on the unit sphere") {
    std::mt19937_64 rng(7);
    std::normal_distribution<Real> gauss(0.0, 1.0);
    std::uniform_real_distribution<Real> uraw(-4.0, 4.0);

    Vector e1 = Vector::Zero(3);
    e1(0) = 1.0;
    CHECK((corotational_embed(0.0, 0.7, e1) - Vector::Unit(4, 3)).norm() == doctest::Approx(0.0));
    CHECK(corotational_embed(pi / 0.7, 0.7, e1)(3) == doctest::Approx(-1.0).epsilon(1e-14));
    Vector mid = corotational_embed(pi / 2.0, 1.0, e1);
    CHECK(mid(0) == doctest::Approx(1.0).epsilon(1e-14));

    Real worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        Vector dir(3);
        for (int j = 0; j < 3; ++j) dir(j) = gauss(rng);
        dir.normalize();
        const Vector U = corotational_embed(uraw(rng), std::abs(uraw(rng)), dir);
        worst = std::max(worst, std::abs(U.norm() - 1.0));
    }
    CHECK(worst < 1e-14);
}

TEST_CASE("cartesian residual of the explicit solution") {
    auto exact5 = [](Real t, Real r) { return u_star(t, std::abs(r), 5); };
    auto exact7 = [](Real t, Real r) { return u_star(t, std::abs(r), 7); };
    auto zero = [](Real, Real) { return 0.0; };

    CHECK(std::abs(cartesian_residual(exact5, 2.0, 0.5, 5, 1e-3)) < 1e-8);
    CHECK(std::abs(cartesian_residual(exact7, 1.5, 1.0, 7, 1e-3)) < 1e-8);
    CHECK(cartesian_residual(zero, 1.0, 0.5, 5, 1e-3) == 0.0);
    CHECK(std::abs(cartesian_residual(exact5, 2.0, 0.0, 5, 1e-3)) < 1e-8);

    CHECK_THROWS_AS(cartesian_residual(zero, 1e-3, 0.5, 5, 1e-3), std::domain_error);
    CHECK_THROWS_AS(cartesian_residual(zero, 1.0, 1e-4, 5, 1e-3), std::domain_error);
}
