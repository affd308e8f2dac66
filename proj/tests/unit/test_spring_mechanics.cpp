#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nlveh/errors.hpp"
#include "nlveh/spring_mechanics.hpp"
#include "support.hpp"

using namespace nlveh;
using test::rel_err;

namespace {

const Material kSilicon(131e9);
const BeamGeometry kRefBeam(1e-2, 1e-3, 100e-6);

}  // namespace

TEST_CASE("linear stiffness of the silicon reference beam") {
    const double k0 = linear_stiffness(kSilicon, kRefBeam);
    CHECK(rel_err(k0, 131.0) < 1e-12);
    // 12 E I / L^3 form
    const double i = kRefBeam.width() * std::pow(kRefBeam.thickness(), 3) / 12.0;
    CHECK(rel_err(k0, 12.0 * 131e9 * i / 1e-6) < 1e-12);
}

TEST_CASE("deflection profile") {
    CHECK(deflection_profile(kSilicon, kRefBeam, 0.131, 0.0) == 0.0);
    CHECK(rel_err(deflection_profile(kSilicon, kRefBeam, 0.131, kRefBeam.length()), -1e-3) < 1e-12);
    const double f = 0.02;
    CHECK(rel_err(std::abs(deflection_profile(kSilicon, kRefBeam, f, kRefBeam.length())) *
                      linear_stiffness(kSilicon, kRefBeam),
                  f) < 1e-12);
    CHECK_THROWS_AS(deflection_profile(kSilicon, kRefBeam, 0.1, -1e-6), DomainError);
    CHECK_THROWS_AS(deflection_profile(kSilicon, kRefBeam, 0.1, 1.0001e-2), DomainError);
}

TEST_CASE("traction and holding stiffness") {
    CHECK(rel_err(traction_stiffness(kSilicon, kRefBeam), 1.31e6) < 1e-12);
    const BeamGeometry half(0.5e-2, 1e-3, 100e-6);
    CHECK(rel_err(traction_stiffness(kSilicon, half), 2.0 * 1.31e6) < 1e-12);
    const BeamGeometry design_1g(0.054978, 2e-2, 200e-6);
    CHECK(rel_err(traction_stiffness(Material(200e9), design_1g), 1.455e7) < 1e-3);

    CHECK(rel_err(holding_stiffness(kSilicon, HShapeGeometry(kRefBeam, 100e-6, 100e-6, 100e-6)), 5.24e8) < 1e-12);
    CHECK(rel_err(holding_stiffness(kSilicon, HShapeGeometry(kRefBeam, 500e-6, 100e-6, 100e-6)), 4.192e6) < 1e-12);
    const double a = 700e-6, l = 150e-6;
    CHECK(rel_err(holding_stiffness(kSilicon, HShapeGeometry(kRefBeam, a, l, l)),
                  4.0 * 131e9 * 1e-3 * l * l * l / (a * a * a)) < 1e-12);
}

TEST_CASE("alpha ratio") {
    CHECK(alpha_ratio(1.31e6, 4.19e6) == doctest::Approx(0.762).epsilon(1e-3));
    CHECK(alpha_ratio(1.31e6, 5.24e8) == doctest::Approx(0.9975).epsilon(1e-4));
    CHECK(alpha_ratio(1.31e6, 0.0) == 0.0);
    CHECK(alpha_ratio(1.31e6, INFINITY) == 1.0);
    CHECK_THROWS_AS(alpha_ratio(0.0, 1.0), DomainError);
}

TEST_CASE("spring law from geometry") {
    const SpringLaw rigid = spring_law_from_geometry(kSilicon, kRefBeam);
    CHECK(rel_err(rigid.k3(), 6.55e9) < 1e-12);
    CHECK(rigid.alpha() == 1.0);

    const SpringLaw row6 = spring_law_from_geometry(kSilicon, HShapeGeometry(kRefBeam, 6e-4, 100e-6, 100e-6));
    CHECK(row6.k3() == doctest::Approx(4.25e9).epsilon(2e-3));
    CHECK(row6.alpha() == doctest::Approx(0.649).epsilon(1e-3));
    CHECK(row6.k0() == doctest::Approx(131.0));
    // beta * 2 e^2 = alpha
    CHECK(rel_err(row6.beta() * 2.0 * 1e-8, row6.alpha()) < 1e-14);

    const SpringLaw linear = SpringLaw::from_alpha(131.0, 0.0, 100e-6);
    CHECK(linear.k3() == 0.0);
}

TEST_CASE("k3 increases with holding stiffness and converges to the rigid limit") {
    double previous = 0.0;
    for (double a = 2e-3; a >= 2e-5; a *= 0.8) {
        const double k3 = spring_law_from_geometry(kSilicon, HShapeGeometry(kRefBeam, a, 100e-6, 100e-6)).k3();
        CHECK(k3 > previous);
        previous = k3;
    }
    CHECK(rel_err(previous, 6.55e9) < 1e-4);
}

TEST_CASE("spring force") {
    const SpringLaw law = spring_law_from_geometry(kSilicon, kRefBeam);
    CHECK(spring_force(law, 0.0) == 0.0);
    CHECK(rel_err(spring_force(law, 100e-6), 0.01965) < 1e-12);
    const SpringLaw lin = SpringLaw::from_alpha(131.0, 0.0, 100e-6);
    CHECK(spring_force(lin, 3e-4) == 131.0 * 3e-4);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e-3, 1e-3);
    double last_f = spring_force(law, -2e-3);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        CHECK(spring_force(law, -x) == -spring_force(law, x));
    }
    for (int i = 1; i <= 400; ++i) {
        const double x = -2e-3 + 4e-3 * i / 400.0;
        const double f = spring_force(law, x);
        CHECK(f > last_f);
        last_f = f;
    }
    const double h = 1e-9;
    CHECK(rel_err((spring_force(law, h) - spring_force(law, -h)) / (2 * h), law.k0()) < 1e-6);
}

TEST_CASE("exact elongation force") {
    CHECK(exact_elongation_force(kSilicon, kRefBeam, 0.0) == 0.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-1e-3, 1e-3);
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng);
        CHECK(exact_elongation_force(kSilicon, kRefBeam, -x) == -exact_elongation_force(kSilicon, kRefBeam, x));
    }
    // Cubic term (E S / L) x^3 / (2 L^2) within 1% for |x| <= L/10.
    const double es_over_l = 131e9 * 1e-3 * 100e-6 / 1e-2;
    for (double x : {1e-6, 1e-5, 1e-4, 5e-4, 1e-3}) {
        const double cubic = es_over_l * x * x * x / (2.0 * 1e-4);
        CHECK(rel_err(exact_elongation_force(kSilicon, kRefBeam, x), cubic) < 0.01);
    }
}

TEST_CASE("cubic fit recovers an exact cubic law") {
    const SpringLaw law = spring_law_from_geometry(kSilicon, kRefBeam);
    std::vector<ForceSample> samples;
    for (int i = -20; i <= 20; ++i) {
        const double x = 5e-4 * i / 20.0;
        samples.push_back({x, spring_force(law, x)});
    }
    const CubicFit fit = fit_cubic_from_samples(samples);
    CHECK(rel_err(fit.k0, 131.0) < 1e-9);
    CHECK(rel_err(fit.k3, 6.55e9) < 1e-9);
    CHECK(fit.residual < 1e-15);
    REQUIRE(fit.d1.size() == fit.x.size());
    // d3F/dx3 = 6 k3 in the interior of a uniform grid
    CHECK(rel_err(fit.d3[fit.x.size() / 2], 6.0 * 6.55e9) < 1e-3);
}

TEST_CASE("cubic fit of linear plus exact elongation force") {
    const double k0 = linear_stiffness(kSilicon, kRefBeam);
    std::vector<ForceSample> samples;
    for (int i = -50; i <= 50; ++i) {
        const double x = 5.0 * 100e-6 * i / 50.0;
        samples.push_back({x, k0 * x + exact_elongation_force(kSilicon, kRefBeam, x)});
    }
    const CubicFit fit = fit_cubic_from_samples(samples);
    CHECK(rel_err(fit.k3, k0 / (2.0 * 1e-8)) < 0.005);
    // Fifth-order terms of the exact force leak slightly into the linear coefficient.
    CHECK(rel_err(fit.k0, k0) < 0.01);
}

TEST_CASE("cubic fit edge cases") {
    std::vector<ForceSample> zeros{{-2e-4, 0}, {-1e-4, 0}, {1e-4, 0}, {2e-4, 0}};
    const CubicFit z = fit_cubic_from_samples(zeros);
    CHECK(z.k0 == 0.0);
    CHECK(z.k3 == 0.0);

    std::vector<ForceSample> too_few{{-1e-4, -1}, {0, 0}, {1e-4, 1}};
    CHECK_THROWS_AS(fit_cubic_from_samples(too_few), FitError);
    std::vector<ForceSample> one_sided{{1e-4, 1}, {2e-4, 2}, {3e-4, 3}, {4e-4, 4}};
    CHECK_THROWS_AS(fit_cubic_from_samples(one_sided), FitError);
    std::vector<ForceSample> repeated{{-1e-4, -1}, {-1e-4, -1}, {1e-4, 1}, {1e-4, 1}, {1e-4, 1}};
    CHECK_THROWS_AS(fit_cubic_from_samples(repeated), FitError);
}

TEST_CASE("invalid geometry is rejected") {
    CHECK_THROWS_AS(Material(0.0), DomainError);
    CHECK_THROWS_AS(BeamGeometry(-1.0, 1e-3, 1e-4), DomainError);
    CHECK_THROWS_AS(HShapeGeometry(kRefBeam, 0.0, 1e-4, 1e-4), DomainError);
    CHECK_THROWS_AS(SpringLaw::from_alpha(131.0, 1.5, 1e-4), DomainError);
}
