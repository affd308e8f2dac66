#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "nlveh/nelder_mead.hpp"

using namespace nlveh;

TEST_CASE("quadratic bowl") {
    const auto f = [](std::span<const double> x) { return (x[0] - 1.0) * (x[0] - 1.0) + 4.0 * (x[1] + 2.0) * (x[1] + 2.0); };
    NelderMeadOptions opt;
    opt.diameter_tolerance = 1e-8;
    const auto r = nelder_mead_minimize(f, {0.0, 0.0}, opt);
    CHECK(r.converged);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.x[1] == doctest::Approx(-2.0).epsilon(1e-6));
    CHECK(r.value < 1e-12);
}

TEST_CASE("Rosenbrock valley") {
    const auto f = [](std::span<const double> x) {
        return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
    };
    NelderMeadOptions opt;
    opt.diameter_tolerance = 1e-9;
    opt.max_evaluations = 5000;
    const auto r = nelder_mead_minimize(f, {-1.2, 1.0}, opt);
    CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("box constraints are respected") {
    const auto f = [](std::span<const double> x) { return (x[0] - 5.0) * (x[0] - 5.0) + x[1] * x[1]; };
    NelderMeadOptions opt;
    opt.lower = {-1.0, -1.0};
    opt.upper = {2.0, 1.0};
    opt.diameter_tolerance = 1e-8;
    std::size_t outside = 0;
    const auto guarded = [&](std::span<const double> x) {
        if (x[0] < -1.0 || x[0] > 2.0 || x[1] < -1.0 || x[1] > 1.0) ++outside;
        return f(x);
    };
    const auto r = nelder_mead_minimize(guarded, {0.0, 0.5}, opt);
    CHECK(outside == 0);
    CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(r.x[1]) < 1e-5);
}

TEST_CASE("evaluation budget") {
    std::size_t calls = 0;
    const auto f = [&](std::span<const double> x) {
        ++calls;
        return std::sin(x[0] * 50.0) + x[0] * x[0];
    };
    NelderMeadOptions opt;
    opt.max_evaluations = 25;
    opt.diameter_tolerance = 0.0;
    const auto r = nelder_mead_minimize(f, {3.0}, opt);
    CHECK(calls <= 25);
    CHECK(r.evaluations == calls);
    CHECK_FALSE(r.converged);
}

TEST_CASE("non-finite values are treated as worst") {
    const auto f = [](std::span<const double> x) {
        if (x[0] > 0.5) return std::numeric_limits<double>::quiet_NaN();
        return (x[0] + 1.0) * (x[0] + 1.0);
    };
    NelderMeadOptions opt;
    opt.diameter_tolerance = 1e-8;
    const auto r = nelder_mead_minimize(f, {0.4}, opt);
    CHECK(r.x[0] == doctest::Approx(-1.0).epsilon(1e-6));
}
