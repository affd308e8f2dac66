#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "nlveh/errors.hpp"
#include "nlveh/sizing.hpp"
#include "nlveh/spring_mechanics.hpp"
#include "support.hpp"

using namespace nlveh;
using test::rel_err;

namespace {

SizingSpec one_gram(double beta = 1.56e5) {
    return {98.77, beta, 1e-3, Material(200e9), 2e-2, 200e-6, 100e-6, 100e-6, 2};
}

SizingSpec ten_gram() { return {98.77, 1.56e5, 10e-3, Material(200e9), 2e-2, 500e-6, 500e-6, 500e-6, 2}; }

CoilSpec coil() { return {10, 1e-2, 1.0, 1e-3, 2 * std::numbers::pi * 98.77}; }

}  // namespace

TEST_CASE("one gram design") {
    const SizingResult r = size_harvester(one_gram());
    CHECK(r.k0_eh == doctest::Approx(385.15).epsilon(1e-3));
    CHECK(r.k0 == doctest::Approx(r.k0_eh / 2.0));
    CHECK(r.length == doctest::Approx(5.5e-2).epsilon(0.01));
    CHECK(r.k_trac == doctest::Approx(1.455e7).epsilon(1e-3));
    CHECK(r.k_parr == doctest::Approx(1.84e5).epsilon(5e-3));
    REQUIRE(r.holding_length.has_value());
    CHECK(*r.holding_length == doctest::Approx(0.44e-2).epsilon(0.01));
    CHECK(r.alpha == doctest::Approx(2 * 200e-6 * 200e-6 * 1.56e5));
    CHECK(rel_err(r.achieved_f0, 98.77) < 1e-6);
    CHECK(rel_err(r.achieved_beta, 1.56e5) < 1e-9);
    CHECK_FALSE(r.notes.empty());  // alpha = 0.0125 is in the soft-holding regime
}

TEST_CASE("ten gram design") {
    const SizingResult r = size_harvester(ten_gram());
    CHECK(r.length == doctest::Approx(6.38e-2).epsilon(0.01));
    REQUIRE(r.holding_length.has_value());
    CHECK(*r.holding_length == doctest::Approx(0.91e-2).epsilon(0.01));
}

TEST_CASE("forward and backward round trip") {
    for (const SizingSpec& spec : {one_gram(), ten_gram(), one_gram(3e6)}) {
        const SizingResult r = size_harvester(spec);
        const auto g = r.geometry(spec);
        REQUIRE(g.has_value());
        const SpringLaw law = spring_law_from_geometry(spec.material, *g);
        CHECK(rel_err(2.0 * law.k0(), r.k0_eh) < 1e-9);
        CHECK(rel_err(law.beta(), spec.beta) < 1e-9);
        CHECK(rel_err(law.k3(), r.k3) < 1e-9);
    }
}

TEST_CASE("linear limit") {
    const SizingResult r = size_harvester(one_gram(0.0));
    CHECK_FALSE(r.holding_length.has_value());
    CHECK(r.alpha == 0.0);
    CHECK(r.k_parr == 0.0);
    CHECK(r.k3 == 0.0);
    CHECK_FALSE(r.geometry(one_gram(0.0)).has_value());
    CHECK(r.length == doctest::Approx(size_harvester(one_gram()).length));
}

TEST_CASE("holding length decreases with beta") {
    double previous = INFINITY;
    for (double beta = 1e4; beta < 1.2e7; beta *= 1.5) {
        const double a = *size_harvester(one_gram(beta)).holding_length;
        CHECK(a < previous);
        previous = a;
    }
}

TEST_CASE("infeasible beta reports the limit") {
    const double limit = 1.0 / (2.0 * 200e-6 * 200e-6);
    for (double beta : {limit, 1.5 * limit, 1e9}) {
        try {
            size_harvester(one_gram(beta));
            FAIL("expected InfeasibleError");
        } catch (const InfeasibleError& e) {
            CHECK(rel_err(e.max_feasible_beta(), limit) < 1e-12);
        }
    }
    CHECK_NOTHROW(size_harvester(one_gram(0.99 * limit)));
}

TEST_CASE("invalid spec") {
    SizingSpec s = one_gram();
    s.e = 0.0;
    CHECK_THROWS_AS(size_harvester(s), DomainError);
    s = one_gram(-1.0);
    CHECK_THROWS_AS(size_harvester(s), DomainError);
}

TEST_CASE("electromagnetic damping") {
    const CoilSpec c = coil();
    CHECK(em_damping_ratio(c, 1.49) == doctest::Approx(0.00539).epsilon(5e-3));
    CHECK(em_damping_ratio(c, INFINITY) == 0.0);
    CoilSpec doubled = c;
    doubled.turns = 20;
    CHECK(rel_err(em_damping_ratio(doubled, 2.0), 4.0 * em_damping_ratio(c, 2.0)) < 1e-14);
    CHECK_THROWS_AS(em_damping_ratio(c, 0.0), DomainError);
}

TEST_CASE("load resistance") {
    const CoilSpec c = coil();
    const LoadResistance r = solve_load_resistance(c, 0.00539);
    CHECK(r.ohms == doctest::Approx(1.49).epsilon(5e-3));
    CHECK_FALSE(r.impractical);
    CHECK(rel_err(em_damping_ratio(c, r.ohms), 0.00539) < 1e-12);
    CHECK(rel_err(solve_load_resistance(c, em_damping_ratio(c, 12.5)).ohms, 12.5) < 1e-12);
    CHECK(solve_load_resistance(c, 1e-9).impractical);
    CHECK_THROWS_AS(solve_load_resistance(c, 0.0), DomainError);
}

TEST_CASE("table rendering") {
    const SizingSpec spec = one_gram();
    const std::string text = render_sizing_table(spec, size_harvester(spec));
    CHECK(text.find("5.5 cm") != std::string::npos);
    CHECK(text.find("0.443 cm") != std::string::npos);
}
