#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace nlveh {

/// Simplex search with the classical coefficients (reflection 1, expansion 2,
/// contraction 0.5, shrink 0.5). Trial points are projected onto the optional
/// box [lower, upper] before evaluation.
struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    /// Stop when every vertex lies within this max-norm distance of the best.
    double diameter_tolerance = 1e-4;
    std::size_t max_evaluations = 2000;  ///< hard cap; no step starts that could exceed it
    /// Edge lengths of the initial simplex, one per coordinate. A vertex that
    /// would leave the box is placed on the opposite side of x0 instead. Empty
    /// means 5% of each coordinate of x0 (0.00025 where it is zero).
    std::vector<double> initial_step;
    std::vector<double> lower;
    std::vector<double> upper;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value;
    std::size_t evaluations;
    bool converged;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimizes f from x0. Non-finite objective values are treated as +infinity.
NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, const NelderMeadOptions& options);

}  // namespace nlveh
