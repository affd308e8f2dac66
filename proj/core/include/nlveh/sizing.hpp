#pragma once

// Inverse design of a two-beam H-spring harvester: given target (f0, beta, m)
// and the process-fixed b, e, l1, l3, solve for the main beam length L and the
// holding beam length a. Also sizes the load resistance of an electromagnetic
// transducer for a target electrical damping ratio.

#include <optional>
#include <string>
#include <vector>

#include "nlveh/spring_mechanics.hpp"

namespace nlveh {

struct SizingSpec {
    double f0;    ///< Hz
    double beta;  ///< 1/m^2, >= 0
    double m;     ///< kg
    Material material;
    double b;   ///< m, beam width
    double e;   ///< m, beam thickness
    double l1;  ///< m, holding beam width
    double l3;  ///< m, holding beam width
    int beam_count = 2;

    void validate() const;
};

struct SizingResult {
    double length;                         ///< L, m
    std::optional<double> holding_length;  ///< a, m; empty when beta = 0 (no holding beams needed)
    double k0_eh;                          ///< total linear stiffness, N/m
    double k0;                             ///< per beam, N/m
    double k_trac;                         ///< N/m
    double k_parr;                         ///< N/m
    double k3;                             ///< per beam, N/m^3
    double alpha;
    double achieved_f0;    ///< Hz, from the forward model
    double achieved_beta;  ///< 1/m^2, from the forward model
    std::vector<std::string> notes;

    /// Forward geometry; only available when holding_length is set.
    std::optional<HShapeGeometry> geometry(const SizingSpec& spec) const;
};

/// Throws InfeasibleError when 2 e^2 beta >= 1 (alpha would reach 1); the
/// error carries the largest feasible beta, 1/(2 e^2).
SizingResult size_harvester(const SizingSpec& spec);

struct CoilSpec {
    int turns;           ///< N
    double side_length;  ///< l, m (square coil)
    double flux_density; ///< B, T
    double m;            ///< kg
    double omega;        ///< rad/s

    void validate() const;
};

/// xi_e = (N l B)^2 / (2 m w R)
double em_damping_ratio(const CoilSpec& coil, double resistance);

struct LoadResistance {
    double ohms;
    bool impractical;  ///< above kMaxPracticalLoad
};

inline constexpr double kMaxPracticalLoad = 1e6;

/// Inverse of em_damping_ratio in R.
LoadResistance solve_load_resistance(const CoilSpec& coil, double target_xi_e);

/// Human-readable two-column rendering of a design.
std::string render_sizing_table(const SizingSpec& spec, const SizingResult& r);

}  // namespace nlveh
