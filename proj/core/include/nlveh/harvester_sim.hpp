#pragma once

// Velocity-damped harvester under base excitation:
//   x'' + 2(xi_m + xi_e) w0 x' + w0^2 x (1 + beta x^2) = -a_v(t)
// Harvested power is the electrical part only, p = b_e v^2 with b_e = 2 m w0 xi_e.

#include <cstddef>
#include <optional>
#include <vector>

#include "nlveh/excitation.hpp"

namespace nlveh {

struct HarvesterParams {
    double m;     ///< kg
    double f0;    ///< Hz, linear natural frequency
    double xi_m;  ///< mechanical damping ratio, 1/(2Q)
    double xi_e;  ///< electrical damping ratio
    double beta;  ///< k3/k0, 1/m^2

    static HarvesterParams from_q(double m, double f0, double q, double xi_e, double beta = 0.0) {
        return {m, f0, 0.5 / q, xi_e, beta};
    }

    double omega0() const noexcept;
    double q() const noexcept { return 0.5 / xi_m; }
    double xi_total() const noexcept { return xi_m + xi_e; }
    double electrical_damping() const noexcept { return 2.0 * m * omega0() * xi_e; }
    double mechanical_damping() const noexcept { return 2.0 * m * omega0() * xi_m; }

    /// Throws DomainError unless m, f0 > 0 and xi_m, xi_e, beta >= 0.
    void validate() const;
};

struct SimState {
    double x = 0.0;  ///< m, relative displacement
    double v = 0.0;  ///< m/s
    double t = 0.0;  ///< s
};

struct StateRate {
    double dx;
    double dv;
};

StateRate accel_rhs(const HarvesterParams& p, const SimState& s, double a_v) noexcept;

/// Mechanical energy per unit mass: v^2/2 + w0^2 x^2/2 + w0^2 beta x^4/4.
double mechanical_energy(const HarvesterParams& p, const SimState& s) noexcept;

/// Largest admissible w*dt, where w is the tangent frequency w0 sqrt(1 + 3 beta x^2).
inline constexpr double kMaxOmegaStep = 0.15;

struct SimSample {
    double t;
    double x;
    double v;
    double p;  ///< instantaneous electrical power, W
};

struct SimOptions {
    /// Integration step; 0 picks default_step() and refines it automatically
    /// if the response outgrows it. An explicit step is never changed.
    double dt = 0.0;
    /// Start of the power-averaging window, seconds from the trace origin.
    double average_from = 0.0;
    /// Keep every n-th step in SimResult::series; 0 keeps nothing.
    std::size_t record_stride = 0;
};

struct SimResult {
    std::vector<SimSample> series;
    double mean_power = 0.0;             ///< W, electrical
    double mean_mechanical_power = 0.0;  ///< W, dissipated in b_m
    double max_abs_x = 0.0;              ///< m, over the averaging window
    SimState final_state;
    double dt = 0.0;
    std::size_t steps = 0;

    double mean_power_uw_per_g(double mass_kg) const noexcept { return mean_power * 1e6 / (mass_kg * 1e3); }
};

/// Step giving at least 40 steps per period of 5x the highest expected
/// oscillation frequency, taken as the tangent frequency w0 sqrt(1 + 3 beta X^2)
/// at X = expected_amplitude (never below the backbone frequency), rounded
/// down to an integer fraction of trace_dt.
double default_step(const HarvesterParams& p, double trace_dt, double expected_amplitude = 0.0);

/// Fixed-step RK4 over the whole trace, excitation linearly interpolated
/// between samples. The trace origin is placed at initial.t.
/// Throws DomainError for dt > trace.dt or w*dt >= kMaxOmegaStep at the
/// initial state, DivergenceError if the response blows up or (with an
/// explicit dt) outgrows the step.
SimResult simulate(const HarvesterParams& p, const VibrationTrace& trace, const SimState& initial = {},
                   const SimOptions& options = {});

struct SteadyState {
    double power;      ///< W, mean over the retained periods
    double amplitude;  ///< m, max |x| over the retained periods
    SimState final_state;
    double duration;  ///< s simulated
    std::size_t periods;
};

/// Drives the harvester with A sin(w t) for max(200 periods, 20/(xi w0)),
/// rounded up to whole periods, discards the first half and averages the rest.
/// spec.duration is ignored. Requires xi_m + xi_e > 0.
SteadyState steady_state(const HarvesterParams& p, const SineSpec& spec, const SimState& initial = {});
double steady_state_power(const HarvesterParams& p, const SineSpec& spec);

struct LinearResponse {
    double amplitude;  ///< m
    double power;      ///< W
};

/// Closed-form steady response of the linear harvester (beta must be 0).
LinearResponse linear_response_closed_form(const HarvesterParams& p, const SineSpec& spec);

/// m A^2 Q / (8 w0): resonant power with xi_e = xi_m.
double williams_yates_power(double m, double amplitude, double q, double omega0);

}  // namespace nlveh
