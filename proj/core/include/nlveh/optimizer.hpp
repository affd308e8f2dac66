#pragma once

// Trace-driven tuning: maximize the whole-trace mean electrical power over
// (f0, xi_e) for a linear harvester or (f0, xi_e, beta) for a nonlinear one.
//
// Search runs in a transformed space so positivity and bounds hold without
// penalties: log f0, logit of xi_e within its bounds, log(beta + eps). Each
// start is an independent Nelder-Mead run; starts are merged deterministically.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nlveh/excitation.hpp"
#include "nlveh/harvester_sim.hpp"

namespace nlveh {

enum class OptMode { linear, nonlinear };

struct ParamBounds {
    double lo;
    double hi;
};

struct OptSpec {
    OptMode mode = OptMode::linear;
    ParamBounds f0{1.0, 500.0};     ///< Hz
    ParamBounds xi_e{1e-4, 0.5};    ///< dimensionless
    ParamBounds beta{0.0, 1e8};     ///< 1/m^2
    double m = 1e-3;                ///< kg, fixed
    double q = 100.0;               ///< mechanical quality factor, fixed
    std::size_t restarts = 8;
    std::uint64_t seed = 0;
    double diameter_tolerance = 1e-4;
    std::size_t max_evaluations = 2000;  ///< per start
    /// Add a start at the dominant spectral frequency of the trace with xi_e = xi_m.
    bool spectral_anchor = true;
    /// Extra starting points, e.g. a linear optimum seeding a nonlinear search.
    std::vector<HarvesterParams> warm_starts;

    void validate() const;
};

struct Evaluation {
    HarvesterParams params;
    double power;  ///< W; 0 for a diverged evaluation
    std::size_t start;
    bool diverged;
};

struct OptResult {
    HarvesterParams best_params;
    double best_power = 0.0;  ///< W
    std::size_t evaluations = 0;
    std::size_t diverged_evaluations = 0;
    std::vector<Evaluation> history;
    bool converged = false;

    double best_power_uw_per_g() const noexcept { return best_power * 1e6 / (best_params.m * 1e3); }
};

using PowerFunction = std::function<double(const HarvesterParams&)>;

/// Whole-trace mean power from rest; no transient is discarded.
double objective(const HarvesterParams& p, const VibrationTrace& trace);

/// Optimizes any power function over the spec's parameter space. Starts are
/// the anchors, the warm starts, then a seeded Halton sequence filling up to
/// `restarts` starts in total. A function that throws DivergenceError counts
/// as a failed evaluation; if every evaluation of every start fails the call
/// throws DivergenceError listing the failing parameter sets.
OptResult maximize_power(const OptSpec& spec, const PowerFunction& power, std::span<const HarvesterParams> anchors = {});

OptResult optimize(const OptSpec& spec, const VibrationTrace& trace);

struct ComparisonReport {
    std::string label;
    OptResult linear;
    OptResult nonlinear;
    /// 100 * (P_nonlinear / P_linear - 1)
    double improvement_percent;
};

/// Runs the linear search, then the nonlinear search warm-started from the
/// linear optimum (beta = 0 is feasible, so the nonlinear result can only match
/// or beat it). `overrides` supplies bounds, restarts and seed; its mode, m and
/// q are replaced.
ComparisonReport compare_linear_nonlinear(const VibrationTrace& trace, double m, double q, const OptSpec& overrides = {});

std::string render_markdown(const ComparisonReport& report);
std::string render_csv(const ComparisonReport& report);

}  // namespace nlveh
