#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nlveh/duffing_analysis.hpp"
#include "nlveh/errors.hpp"
#include "support.hpp"

using namespace nlveh;
using test::rel_err;

namespace {

// Composite Simpson on the defining integral of K(m), as an oracle independent
// of the AGM.
double k_by_simpson(double m) {
    const int n = 20000;
    const double h = (std::numbers::pi / 2) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double th = i * h;
        const double f = 1.0 / std::sqrt(1.0 - m * std::sin(th) * std::sin(th));
        s += (i == 0 || i == n) ? f : (i % 2 ? 4.0 * f : 2.0 * f);
    }
    return s * h / 3.0;
}

}  // namespace

TEST_CASE("elliptic K") {
    CHECK(elliptic_k(0.0) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(rel_err(elliptic_k(0.5), 1.854074677301372) < 1e-12);
    // 1.845859843188187 from a 30-digit reference evaluation; 1.8456 is the same
    // value truncated to four decimals.
    CHECK(rel_err(elliptic_k(0.4902), 1.845859843188187) < 1e-12);
    CHECK(std::abs(elliptic_k(0.4902) - 1.8456) < 5e-4);
    for (double m : {0.01, 0.1, 0.25, 0.49, 0.7, 0.9}) {
        CHECK(rel_err(elliptic_k(m), k_by_simpson(m)) < 1e-12);
    }
    CHECK_THROWS_AS(elliptic_k(1.0), DomainError);
    CHECK_THROWS_AS(elliptic_k(-0.1), DomainError);
}

TEST_CASE("quadrature period") {
    const double w0 = 2 * std::numbers::pi * 100.0;
    CHECK(rel_err(equivalent_period_quadrature(0.0, w0, 1e-4), 2 * std::numbers::pi / w0) < 1e-10);
    const double t50 = equivalent_period_quadrature(5e7, w0, 1e-3);
    CHECK(1.0 / t50 / 100.0 == doctest::Approx(6.08).epsilon(0.02 / 6.08));
    const double t05 = equivalent_period_quadrature(5e7, w0, 1e-4);
    CHECK(1.0 / t05 / 100.0 == doctest::Approx(1.17).epsilon(0.005));
    CHECK_THROWS_AS(equivalent_period_quadrature(1.0, w0, 0.0), DomainError);
    CHECK_THROWS_AS(equivalent_period_quadrature(-1.0, w0, 1.0), DomainError);
    CHECK_THROWS_AS(equivalent_period_quadrature(1.0, 0.0, 1.0), DomainError);
}

TEST_CASE("closed form matches quadrature over a wide lambda range") {
    const double w0 = 3.0;
    for (double lambda = 1e-6; lambda <= 1e4 * 1.0001; lambda *= std::pow(10.0, 0.25)) {
        const double f_cf = equivalent_frequency_closed_form(lambda, w0, 1.0);
        const double f_q = 1.0 / equivalent_period_quadrature(lambda, w0, 1.0);
        CHECK(rel_err(f_cf, f_q) < 1e-9);
    }
}

TEST_CASE("frequency ratio examples") {
    CHECK(frequency_ratio(0.0) == 1.0);
    // 2 pi sqrt(51) / (4 K(25/51)) = 6.077248687942695 (30-digit reference).
    CHECK(rel_err(frequency_ratio(50.0), 6.077248687942695) < 1e-12);
    CHECK(std::abs(frequency_ratio(50.0) - 6.078) < 1e-3);
    CHECK(rel_err(frequency_ratio(1.0), 2 * std::numbers::pi * std::sqrt(2.0) / (4 * elliptic_k(0.25))) < 1e-14);
    CHECK(rel_err(equivalent_frequency_closed_form(0.0, 2 * std::numbers::pi * 37.0, 1e-3), 37.0) < 1e-14);
}

TEST_CASE("ratio depends on lambda only and scales like sqrt(lambda)") {
    CHECK(rel_err(equivalent_frequency_closed_form(2.5e7, 10.0, 1e-3) / equivalent_frequency_closed_form(0, 10.0, 1),
                  equivalent_frequency_closed_form(1e8, 10.0, 5e-4) / equivalent_frequency_closed_form(0, 10.0, 1)) <
          1e-12);
    const double c4 = frequency_ratio(1e4) / std::sqrt(1e4);
    const double c6 = frequency_ratio(1e6) / std::sqrt(1e6);
    CHECK(rel_err(c4, c6) < 0.01);
}

TEST_CASE("backbone curve") {
    const double e = 100e-6;
    std::vector<double> amps;
    for (int i = 0; i <= 40; ++i) amps.push_back(e * i / 4.0);

    for (const BackbonePoint& p : backbone_curve(0.0, 100.0, amps)) CHECK(p.f_eq_over_f0 == 1.0);

    const auto alpha1 = backbone_curve(1.0 / (2 * e * e), 100.0, amps);
    for (std::size_t i = 1; i < alpha1.size(); ++i) CHECK(alpha1[i].f_eq_over_f0 > alpha1[i - 1].f_eq_over_f0);
    CHECK(alpha1.back().f_eq_over_f0 == doctest::Approx(6.08).epsilon(0.02 / 6.08));
    CHECK(alpha1.back().f_eq == doctest::Approx(100.0 * alpha1.back().f_eq_over_f0));

    // alpha = 0.25 at 10 e has the same lambda as alpha = 1 at 5 e
    const auto quarter = backbone_curve(0.25 / (2 * e * e), 100.0, amps);
    CHECK(rel_err(quarter.back().f_eq_over_f0, alpha1[20].f_eq_over_f0) < 1e-14);

    const SpringLaw law = SpringLaw::from_alpha(131.0, 1.0, e);
    const auto by_law = backbone_curve(law, 100.0, amps);
    CHECK(by_law.back().lambda == doctest::Approx(50.0));
    CHECK_THROWS_AS(backbone_curve(-1.0, 100.0, amps), DomainError);
}
