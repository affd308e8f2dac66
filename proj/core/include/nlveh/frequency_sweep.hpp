#pragma once

// Stepped-sine frequency response with state continuation. Each grid point is
// a steady_state() run started from the previous point's final state, so a
// hardening harvester stays on whichever branch it is on until that branch
// ceases to exist; sweeping up and down exposes the hysteresis.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "nlveh/harvester_sim.hpp"

namespace nlveh {

enum class SweepDirection { up, down };

struct SweepPoint {
    double f;          ///< Hz
    double amplitude;  ///< m, steady-state max |x|
    double power;      ///< W
};

struct SweepOptions {
    /// A jump is the largest ratio between mean powers at adjacent grid points,
    /// reported only when it exceeds this factor.
    double jump_factor = 3.0;
    double bandwidth_fraction = 0.5;
};

struct Bandwidth {
    double f_low;   ///< Hz
    double f_high;  ///< Hz
    double width;   ///< Hz
};

struct SweepResult {
    SweepDirection direction;
    std::vector<SweepPoint> points;  ///< in sweep order
    /// Last grid frequency on the branch the sweep was following before it jumped.
    std::optional<double> jump_frequency;
    double jump_ratio = 1.0;
    double bandwidth_at_half_peak = 0.0;

    const SweepPoint& peak() const;
};

/// n log-spaced frequencies from f_lo to f_hi, reversed for a down sweep.
std::vector<double> log_grid(double f_lo, double f_hi, std::size_t n, SweepDirection direction);

/// 200 log-spaced points over [0.5 f0, 3 f0].
std::vector<double> default_grid(double f0, SweepDirection direction);

/// Throws DomainError if the grid is not strictly monotone in `direction`;
/// DivergenceError propagates from the simulator.
SweepResult stepped_sweep(const HarvesterParams& p, double amplitude, std::span<const double> f_grid,
                          SweepDirection direction, const SweepOptions& options = {});

/// Runs the up and down sweeps over the same frequency set concurrently.
std::pair<SweepResult, SweepResult> sweep_both(const HarvesterParams& p, double amplitude,
                                               std::span<const double> ascending_grid,
                                               const SweepOptions& options = {});

/// Contiguous span around the power peak where P >= fraction * max(P). Band
/// edges sit halfway between the last point inside and the first outside, so
/// an isolated peak is one grid step wide.
Bandwidth bandwidth_metrics(const SweepResult& r, double fraction = 0.5);

/// Integral over frequency of |P_up - P_down|, in W*Hz.
double hysteresis_area(const SweepResult& up, const SweepResult& down);

}  // namespace nlveh
