#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "nlveh/errors.hpp"
#include "nlveh/excitation.hpp"
#include "nlveh/harvester_sim.hpp"
#include "nlveh/optimizer.hpp"
#include "support.hpp"

using namespace nlveh;
using test::rel_err;

namespace {

OptSpec quick(OptMode mode) {
    OptSpec s;
    s.mode = mode;
    s.restarts = 4;
    return s;
}

}  // namespace

TEST_CASE("objective basics") {
    const VibrationTrace zero(1e-4, std::vector<double>(10001, 0.0));
    CHECK(objective(HarvesterParams::from_q(1e-3, 80.0, 100.0, 0.01, 3e6), zero) == 0.0);

    const VibrationTrace sine = synth_sine({1.0, 100.0, 2.0}, 1e-4);
    const HarvesterParams lin = HarvesterParams::from_q(1e-3, 100.0, 100.0, 0.005, 0.0);
    CHECK(objective(lin, sine) == objective(lin, sine));
}

TEST_CASE("resonant objective equals steady power diluted by the start-up transient") {
    // From rest the response envelope grows as 1 - exp(-t/tau), tau = 1/(xi w0),
    // so the whole-record mean of P_ss (1 - exp(-t/tau))^2 over T is
    // 1 - 2 tau/T (1 - e^{-T/tau}) + tau/(2T) (1 - e^{-2T/tau}) times P_ss.
    const HarvesterParams p = HarvesterParams::from_q(1e-3, 100.0, 100.0, 0.005, 0.0);
    const double t_end = 10.0;
    const VibrationTrace sine = synth_sine({1.0, 100.0, t_end}, 1e-4);
    const double tau = 1.0 / (p.xi_total() * p.omega0());
    const double t = sine.duration();
    const double dilution =
        1.0 - 2.0 * tau / t * (1.0 - std::exp(-t / tau)) + tau / (2.0 * t) * (1.0 - std::exp(-2.0 * t / tau));
    const double expected = williams_yates_power(1e-3, 1.0, 100.0, p.omega0()) * dilution;
    CHECK(rel_err(objective(p, sine), expected) < 0.005);
}

TEST_CASE("spec validation") {
    OptSpec s;
    CHECK_NOTHROW(s.validate());
    s.f0 = {500.0, 1.0};
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = OptSpec{};
    s.q = 0.0;
    CHECK_THROWS_AS(s.validate(), DomainError);
    s = OptSpec{};
    s.restarts = 0;
    s.spectral_anchor = false;
    CHECK_THROWS_AS(s.validate(), DomainError);
}

TEST_CASE("analytic surrogate recovers the linear optimum") {
    const SineSpec drive{1.0, 100.0, 0.0};
    const PowerFunction surrogate = [&](const HarvesterParams& p) { return linear_response_closed_form(p, drive).power; };
    OptSpec s = quick(OptMode::linear);
    s.spectral_anchor = false;
    const OptResult r = maximize_power(s, surrogate);
    CHECK(rel_err(r.best_params.f0, 100.0) < 1e-3);
    CHECK(rel_err(r.best_params.xi_e, r.best_params.xi_m) < 1e-3);
    CHECK(r.best_params.beta == 0.0);
    CHECK(r.converged);
}

TEST_CASE("failing evaluations") {
    const PowerFunction always = [](const HarvesterParams&) -> double { throw DivergenceError("blown up"); };
    CHECK_THROWS_AS(maximize_power(quick(OptMode::nonlinear), always), DivergenceError);

    std::size_t calls = 0;
    const PowerFunction sometimes = [&](const HarvesterParams& p) -> double {
        if (++calls % 3 == 0) throw DivergenceError("blown up");
        return -std::pow(std::log(p.f0 / 50.0), 2);
    };
    OptSpec s = quick(OptMode::linear);
    s.restarts = 1;
    s.spectral_anchor = false;
    const OptResult r = maximize_power(s, sometimes);
    CHECK(r.diverged_evaluations > 0);
    CHECK(r.diverged_evaluations < r.evaluations);
}

TEST_CASE("linear optimum on a single sine and nonlinear dominance") {
    const VibrationTrace sine = synth_sine({1.0, 100.0, 2.0}, 1e-4);
    const ComparisonReport rep = compare_linear_nonlinear(sine, 1e-3, 100.0, quick(OptMode::linear));
    CHECK(rel_err(rep.linear.best_params.f0, 100.0) < 0.005);
    CHECK(rep.nonlinear.best_power >= rep.linear.best_power * (1.0 - 0.005));
    CHECK(rep.linear.best_params.beta == 0.0);
    CHECK(rep.improvement_percent == doctest::Approx(100.0 * (rep.nonlinear.best_power / rep.linear.best_power - 1.0)));

    // best power is reproduced by re-simulating the best parameters
    CHECK(rel_err(objective(rep.nonlinear.best_params, sine), rep.nonlinear.best_power) < 1e-9);
    CHECK(rel_err(objective(rep.linear.best_params, sine), rep.linear.best_power) < 1e-9);

    const std::string md = render_markdown(rep);
    CHECK(md.find("Optimum for linear devices") != std::string::npos);
    const std::string csv = render_csv(rep);
    CHECK(csv.rfind("source,mode,f0_hz,xi_e,beta_per_m2,power_w,power_uw_per_g,evaluations,converged,improvement_percent\n", 0) == 0);
}

TEST_CASE("fixed seed gives identical history") {
    const VibrationTrace sine = synth_sine({1.0, 100.0, 0.5}, 1e-4);
    OptSpec s = quick(OptMode::nonlinear);
    s.seed = 42;
    s.max_evaluations = 150;
    const OptResult a = optimize(s, sine);
    const OptResult b = optimize(s, sine);
    REQUIRE(a.history.size() == b.history.size());
    for (std::size_t i = 0; i < a.history.size(); ++i) {
        CHECK(a.history[i].power == b.history[i].power);
        CHECK(a.history[i].params.f0 == b.history[i].params.f0);
        CHECK(a.history[i].params.xi_e == b.history[i].params.xi_e);
        CHECK(a.history[i].params.beta == b.history[i].params.beta);
        CHECK(a.history[i].start == b.history[i].start);
    }
    CHECK(a.best_power == b.best_power);

    s.seed = 43;
    const OptResult c = optimize(s, sine);
    bool differs = c.history.size() != a.history.size();
    for (std::size_t i = 0; !differs && i < a.history.size(); ++i) differs = a.history[i].params.f0 != c.history[i].params.f0;
    CHECK(differs);
}

TEST_CASE("parameters stay inside the bounds") {
    const VibrationTrace sine = synth_sine({1.0, 60.0, 0.5}, 1e-4);
    OptSpec s = quick(OptMode::nonlinear);
    s.f0 = {50.0, 150.0};
    s.xi_e = {1e-3, 0.1};
    s.beta = {0.0, 1e7};
    s.max_evaluations = 200;
    const OptResult r = optimize(s, sine);
    for (const Evaluation& e : r.history) {
        CHECK(e.params.f0 >= 50.0);
        CHECK(e.params.f0 <= 150.0);
        CHECK(e.params.xi_e >= 1e-3);
        CHECK(e.params.xi_e <= 0.1);
        CHECK(e.params.beta >= 0.0);
        CHECK(e.params.beta <= 1e7);
    }
}
