#include "nlveh/harvester_sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "nlveh/errors.hpp"

namespace nlveh {
namespace {

constexpr int kMaxRefinements = 8;

std::string describe(const HarvesterParams& p, double dt) {
    std::ostringstream os;
    os.precision(6);
    os << "(m=" << p.m << " kg, f0=" << p.f0 << " Hz, xi_m=" << p.xi_m << ", xi_e=" << p.xi_e
       << ", beta=" << p.beta << " 1/m^2, dt=" << dt << " s)";
    return os.str();
}

double tangent_omega_step_sq(const HarvesterParams& p, double x, double dt) {
    const double w0dt = p.omega0() * dt;
    return w0dt * w0dt * (1.0 + 3.0 * p.beta * x * x);
}

struct Accumulated {
    double v2_integral = 0.0;  // trapezoid integral of v^2 over the averaging window
    double window = 0.0;
    double max_abs_x = 0.0;
    SimState final_state;
    bool lost_resolution = false;
};

// Integrates `steps` RK4 steps of size dt from `s`. Forcing is called with the
// time elapsed since the start of this integration.
template <typename Forcing>
Accumulated integrate(const HarvesterParams& p, const Forcing& forcing, SimState s, double dt, std::size_t steps,
                      std::size_t average_start, std::size_t record_stride, double divergence_limit,
                      std::vector<SimSample>* series) {
    const double w0 = p.omega0();
    const double w0sq = w0 * w0;
    const double damp = 2.0 * (p.xi_m + p.xi_e) * w0;
    const double beta = p.beta;
    const double be = p.electrical_damping();
    const double gate = kMaxOmegaStep * kMaxOmegaStep;
    const double t0 = s.t;

    auto dv = [&](double x, double v, double a) { return -damp * v - w0sq * x * (1.0 + beta * x * x) - a; };

    Accumulated acc;
    double x = s.x;
    double v = s.v;
    double a0 = forcing(0.0);
    if (average_start == 0) acc.max_abs_x = std::abs(x);
    if (series && record_stride > 0) series->push_back({t0, x, v, be * v * v});

    for (std::size_t k = 0; k < steps; ++k) {
        const double tau = dt * static_cast<double>(k);
        const double a_half = forcing(tau + 0.5 * dt);
        const double a1 = forcing(tau + dt);

        const double k1x = v;
        const double k1v = dv(x, v, a0);
        const double x2 = x + 0.5 * dt * k1x;
        const double v2 = v + 0.5 * dt * k1v;
        const double k2x = v2;
        const double k2v = dv(x2, v2, a_half);
        const double x3 = x + 0.5 * dt * k2x;
        const double v3 = v + 0.5 * dt * k2v;
        const double k3x = v3;
        const double k3v = dv(x3, v3, a_half);
        const double x4 = x + dt * k3x;
        const double v4 = v + dt * k3v;
        const double k4x = v4;
        const double k4v = dv(x4, v4, a1);

        const double v_prev = v;
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        a0 = a1;

        if (!std::isfinite(x) || !std::isfinite(v) || std::abs(x) > divergence_limit) {
            throw DivergenceError("simulation diverged at t=" + std::to_string(t0 + tau + dt) + " s " +
                                  describe(p, dt));
        }
        if (tangent_omega_step_sq(p, x, dt) >= gate) {
            acc.lost_resolution = true;
            return acc;
        }
        if (k >= average_start) {
            acc.v2_integral += 0.5 * (v_prev * v_prev + v * v) * dt;
            acc.window += dt;
            acc.max_abs_x = std::max(acc.max_abs_x, std::abs(x));
        }
        if (series && record_stride > 0 && (k + 1) % record_stride == 0) {
            series->push_back({t0 + tau + dt, x, v, be * v * v});
        }
    }
    acc.final_state = {x, v, t0 + dt * static_cast<double>(steps)};
    return acc;
}

}  // namespace

double HarvesterParams::omega0() const noexcept { return 2.0 * std::numbers::pi * f0; }

void HarvesterParams::validate() const {
    auto bad = [](double v) { return !std::isfinite(v); };
    if (bad(m) || !(m > 0.0)) throw DomainError("harvester mass must be positive");
    if (bad(f0) || !(f0 > 0.0)) throw DomainError("harvester f0 must be positive");
    if (bad(xi_m) || !(xi_m >= 0.0)) throw DomainError("xi_m must be non-negative");
    if (bad(xi_e) || !(xi_e >= 0.0)) throw DomainError("xi_e must be non-negative");
    if (bad(beta) || !(beta >= 0.0)) throw DomainError("beta must be non-negative");
}

StateRate accel_rhs(const HarvesterParams& p, const SimState& s, double a_v) noexcept {
    const double w0 = p.omega0();
    return {s.v, -2.0 * (p.xi_m + p.xi_e) * w0 * s.v - w0 * w0 * s.x * (1.0 + p.beta * s.x * s.x) - a_v};
}

double mechanical_energy(const HarvesterParams& p, const SimState& s) noexcept {
    const double w0sq = p.omega0() * p.omega0();
    const double x2 = s.x * s.x;
    return 0.5 * s.v * s.v + 0.5 * w0sq * x2 + 0.25 * w0sq * p.beta * x2 * x2;
}

double default_step(const HarvesterParams& p, double trace_dt, double expected_amplitude) {
    p.validate();
    if (!(trace_dt > 0.0)) throw DomainError("trace_dt must be positive");
    const double amp = std::abs(expected_amplitude);
    // Tangent frequency at the amplitude; it bounds the backbone frequency from above.
    const double ratio = std::sqrt(1.0 + 3.0 * p.beta * amp * amp);
    const double omega_high = 5.0 * p.omega0() * ratio;
    const double dt_max = 2.0 * std::numbers::pi / (40.0 * omega_high);
    auto n = static_cast<std::size_t>(std::ceil(trace_dt / dt_max - 1e-12));
    n = std::max<std::size_t>(n, 1);
    while (tangent_omega_step_sq(p, amp, trace_dt / static_cast<double>(n)) >= kMaxOmegaStep * kMaxOmegaStep) {
        n *= 2;
    }
    return trace_dt / static_cast<double>(n);
}

SimResult simulate(const HarvesterParams& p, const VibrationTrace& trace, const SimState& initial,
                   const SimOptions& options) {
    p.validate();
    if (!std::isfinite(initial.x) || !std::isfinite(initial.v) || !std::isfinite(initial.t)) {
        throw DomainError("initial state must be finite");
    }
    const bool automatic = options.dt == 0.0;
    double dt = automatic ? default_step(p, trace.dt(), initial.x) : options.dt;
    if (!(dt > 0.0)) throw DomainError("integration step must be positive");
    if (dt > trace.dt() * (1.0 + 1e-12)) {
        throw DomainError("integration step " + std::to_string(dt) + " s exceeds trace interval " +
                          std::to_string(trace.dt()) + " s");
    }
    if (tangent_omega_step_sq(p, initial.x, dt) >= kMaxOmegaStep * kMaxOmegaStep) {
        throw DomainError("integration step too coarse: w*dt must stay below " + std::to_string(kMaxOmegaStep) +
                          " " + describe(p, dt));
    }

    const double w0 = p.omega0();
    const double reference = std::max(std::abs(initial.x), trace.peak() / (w0 * w0));
    const double limit = reference > 0.0 ? 1e6 * reference : std::numeric_limits<double>::infinity();
    const double duration = trace.duration();
    const double origin = initial.t;
    auto forcing = [&trace](double tau) { return trace.at(tau); };

    for (int attempt = 0;; ++attempt) {
        const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(duration / dt)));
        const double step = duration / static_cast<double>(steps);
        const auto average_start = std::min(
            steps, static_cast<std::size_t>(std::ceil(std::max(0.0, options.average_from) / step - 1e-9)));

        SimResult result;
        const Accumulated acc = integrate(p, forcing, initial, step, steps, average_start, options.record_stride,
                                          limit, options.record_stride > 0 ? &result.series : nullptr);
        if (acc.lost_resolution) {
            if (!automatic || attempt >= kMaxRefinements) {
                throw DivergenceError("response outgrew the integration step (w*dt >= " +
                                      std::to_string(kMaxOmegaStep) + ") " + describe(p, step));
            }
            dt *= 0.5;
            continue;
        }
        const double mean_v2 = acc.window > 0.0 ? acc.v2_integral / acc.window : 0.0;
        result.mean_power = p.electrical_damping() * mean_v2;
        result.mean_mechanical_power = p.mechanical_damping() * mean_v2;
        result.max_abs_x = acc.max_abs_x;
        result.final_state = acc.final_state;
        result.final_state.t = origin + duration;
        result.dt = step;
        result.steps = steps;
        return result;
    }
}

SteadyState steady_state(const HarvesterParams& p, const SineSpec& spec, const SimState& initial) {
    p.validate();
    if (!(spec.amplitude >= 0.0) || !(spec.frequency > 0.0)) throw DomainError("invalid sine excitation");
    if (!(p.xi_total() > 0.0)) throw DomainError("steady state needs xi_m + xi_e > 0");

    const double w = 2.0 * std::numbers::pi * spec.frequency;
    const double period = 1.0 / spec.frequency;
    const double target = std::max(200.0 * period, 20.0 / (p.xi_total() * p.omega0()));
    const auto periods = static_cast<std::size_t>(std::ceil(target * spec.frequency - 1e-9));
    const std::size_t kept_from = periods / 2;

    HarvesterParams linear = p;
    linear.beta = 0.0;
    const double hint = std::max(std::abs(initial.x), linear_response_closed_form(linear, spec).amplitude);
    auto per_period = static_cast<std::size_t>(std::llround(period / default_step(p, period, hint)));

    const double w0 = p.omega0();
    const double reference = std::max({std::abs(initial.x), spec.amplitude / (w0 * w0), hint});
    const double limit = reference > 0.0 ? 1e6 * reference : std::numeric_limits<double>::infinity();
    const double amplitude = spec.amplitude;
    auto forcing = [amplitude, w](double tau) { return amplitude * std::sin(w * tau); };

    for (int attempt = 0;; ++attempt) {
        const double dt = period / static_cast<double>(per_period);
        const Accumulated acc =
            integrate(p, forcing, initial, dt, periods * per_period, kept_from * per_period, 0, limit, nullptr);
        if (acc.lost_resolution) {
            if (attempt >= kMaxRefinements) {
                throw DivergenceError("steady-state response outgrew the integration step " + describe(p, dt));
            }
            per_period *= 2;
            continue;
        }
        SteadyState out;
        out.power = p.electrical_damping() * acc.v2_integral / acc.window;
        out.amplitude = acc.max_abs_x;
        out.final_state = acc.final_state;
        out.duration = static_cast<double>(periods) * period;
        out.periods = periods;
        return out;
    }
}

double steady_state_power(const HarvesterParams& p, const SineSpec& spec) { return steady_state(p, spec).power; }

LinearResponse linear_response_closed_form(const HarvesterParams& p, const SineSpec& spec) {
    p.validate();
    if (p.beta != 0.0) throw DomainError("closed-form response applies to the linear harvester only (beta = 0)");
    const double w0 = p.omega0();
    const double r = spec.frequency / p.f0;
    const double one_minus = 1.0 - r * r;
    const double damping = 2.0 * p.xi_total() * r;
    const double x = spec.amplitude / (w0 * w0 * std::sqrt(one_minus * one_minus + damping * damping));
    const double w = 2.0 * std::numbers::pi * spec.frequency;
    // mean of b_e (w X cos)^2 = b_e w^2 X^2 / 2 = m xi_e w0 w^2 X^2
    return {x, p.m * p.xi_e * w0 * w * w * x * x};
}

double williams_yates_power(double m, double amplitude, double q, double omega0) {
    return m * amplitude * amplitude * q / (8.0 * omega0);
}

}  // namespace nlveh
