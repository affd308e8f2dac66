#include "nlveh/sizing.hpp"

#include <cmath>
#include <limits>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "nlveh/errors.hpp"

namespace nlveh {
namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(name) + " must be positive");
}

constexpr double kSoftHoldingAlpha = 0.05;

}  // namespace

void SizingSpec::validate() const {
    require_positive(f0, "target f0");
    require_positive(m, "mass");
    require_positive(b, "beam width b");
    require_positive(e, "beam thickness e");
    require_positive(l1, "holding width l1");
    require_positive(l3, "holding width l3");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("target beta must be non-negative");
    if (beam_count < 1) throw DomainError("beam_count must be at least 1");
}

std::optional<HShapeGeometry> SizingResult::geometry(const SizingSpec& spec) const {
    if (!holding_length) return std::nullopt;
    return HShapeGeometry(BeamGeometry(length, spec.b, spec.e), *holding_length, spec.l1, spec.l3);
}

SizingResult size_harvester(const SizingSpec& spec) {
    spec.validate();
    const double E = spec.material.youngs_modulus;
    const double alpha = 2.0 * spec.e * spec.e * spec.beta;
    const double max_beta = 1.0 / (2.0 * spec.e * spec.e);
    if (alpha >= 1.0) {
        std::ostringstream os;
        os << "beta=" << spec.beta << " 1/m^2 needs alpha=" << alpha << " >= 1 with e=" << spec.e
           << " m; the largest feasible beta is " << max_beta << " 1/m^2";
        throw InfeasibleError(os.str(), max_beta);
    }

    SizingResult r;
    const double omega = 2.0 * std::numbers::pi * spec.f0;
    r.k0_eh = spec.m * omega * omega;
    r.k0 = r.k0_eh / spec.beam_count;
    r.length = std::cbrt(E * spec.b * spec.e * spec.e * spec.e / r.k0);
    const BeamGeometry main(r.length, spec.b, spec.e);
    r.k_trac = traction_stiffness(spec.material, main);
    r.alpha = alpha;
    r.k3 = r.k0 * spec.beta;

    if (alpha == 0.0) {
        r.k_parr = 0.0;
        r.achieved_f0 = std::sqrt(spec.beam_count * linear_stiffness(spec.material, main) / spec.m) /
                        (2.0 * std::numbers::pi);
        r.achieved_beta = 0.0;
        r.notes.push_back("beta = 0: linear design, no holding beams needed (H geometry infeasible, a unbounded)");
        return r;
    }

    r.k_parr = alpha * r.k_trac / (1.0 - alpha);
    const double holding = E * spec.b * (2.0 * std::pow(spec.l1, 3) + 2.0 * std::pow(spec.l3, 3));
    r.holding_length = std::cbrt(holding / r.k_parr);

    const HShapeGeometry h(main, *r.holding_length, spec.l1, spec.l3);
    const SpringLaw law = spring_law_from_geometry(spec.material, h);
    r.achieved_f0 = std::sqrt(spec.beam_count * law.k0() / spec.m) / (2.0 * std::numbers::pi);
    r.achieved_beta = law.beta();

    if (alpha < kSoftHoldingAlpha) {
        r.notes.push_back(
            "alpha < 0.05: holding beams are soft compared to the main beam; rotation of the holding beams is "
            "not modeled and FEA has shown k3 errors of 18-28% in this regime, verify the design by FEA");
    }
    return r;
}

void CoilSpec::validate() const {
    if (turns < 1) throw DomainError("coil turns must be at least 1");
    require_positive(side_length, "coil side length");
    require_positive(flux_density, "flux density");
    require_positive(m, "mass");
    require_positive(omega, "angular frequency");
}

double em_damping_ratio(const CoilSpec& coil, double resistance) {
    coil.validate();
    if (resistance == std::numeric_limits<double>::infinity()) return 0.0;
    require_positive(resistance, "load resistance");
    const double nlb = coil.turns * coil.side_length * coil.flux_density;
    return nlb * nlb / (2.0 * coil.m * coil.omega * resistance);
}

LoadResistance solve_load_resistance(const CoilSpec& coil, double target_xi_e) {
    coil.validate();
    require_positive(target_xi_e, "target xi_e");
    const double nlb = coil.turns * coil.side_length * coil.flux_density;
    const double ohms = nlb * nlb / (2.0 * coil.m * coil.omega * target_xi_e);
    return {ohms, ohms > kMaxPracticalLoad};
}

std::string render_sizing_table(const SizingSpec& spec, const SizingResult& r) {
    std::ostringstream os;
    char buf[160];
    auto line = [&](const char* name, const char* what, const char* format, double v) {
        std::snprintf(buf, sizeof buf, format, v);
        char row[256];
        std::snprintf(row, sizeof row, "%-8s %-52s %s\n", name, what, buf);
        os << row;
    };
    line("f0", "natural frequency of the energy harvester", "%.2f Hz", spec.f0);
    line("k0EH", "total linear spring stiffness of the energy harvester", "%.2f N/m", r.k0_eh);
    line("k0", "linear spring stiffness of one beam", "%.2f N/m", r.k0);
    line("b", "width of the beam", "%.3g cm", spec.b * 1e2);
    line("L", "length of the beam", "%.3g cm", r.length * 1e2);
    line("e", "thickness of the beam", "%.3g um", spec.e * 1e6);
    line("l1,l3", "width of the holding beams", "%.3g um", spec.l1 * 1e6);
    if (r.holding_length) {
        line("a", "length of the holding beams", "%.3g cm", *r.holding_length * 1e2);
    } else {
        os << "a        length of the holding beams                          (none)\n";
    }
    line("kpar", "linear spring constant of the holding beams", "%.3g N/m", r.k_parr);
    line("ktrac", "spring constant of the beam in traction", "%.3g N/m", r.k_trac);
    line("k3th", "theoretical spring constant of the beam - order 3", "%.3g N/m^3", r.k3);
    line("alpha", "traction softening ratio", "%.4g", r.alpha);
    for (const auto& n : r.notes) os << "note: " << n << '\n';
    return os.str();
}

}  // namespace nlveh
