#pragma once

// Stiffness of clamped-guided and H-shaped springs.
//
// A clamped-guided beam of length L, width b and thickness e (along the
// deflection direction) bends with k0 = E*b*e^3/L^3. At deflections comparable
// to e, axial stretching of the beam adds a cubic term k3*x^3 with
// k3 = k0/(2e^2). Suspending the anchor on four flexural holding beams puts a
// spring k_parr in series with the traction stiffness k_trac and scales k3 by
// alpha = k_parr/(k_parr + k_trac), leaving k0 untouched.

#include <span>
#include <vector>

namespace nlveh {

struct Material {
    double youngs_modulus;  ///< Pa

    explicit Material(double youngs_modulus_pa);
};

class BeamGeometry {
public:
    BeamGeometry(double length, double width, double thickness);

    double length() const noexcept { return length_; }
    double width() const noexcept { return width_; }
    /// Thickness e, measured along the deflection direction.
    double thickness() const noexcept { return thickness_; }

    /// I = b*e^3/12
    double second_moment() const noexcept { return width_ * thickness_ * thickness_ * thickness_ / 12.0; }
    /// S = e*b
    double section() const noexcept { return thickness_ * width_; }

private:
    double length_;
    double width_;
    double thickness_;
};

/// Main beam plus four holding beams: two of width l1 and two of width l3,
/// all of length a and sharing the main beam's width b.
class HShapeGeometry {
public:
    HShapeGeometry(BeamGeometry main, double holding_length, double l1, double l3);

    const BeamGeometry& main() const noexcept { return main_; }
    double holding_length() const noexcept { return holding_length_; }
    double l1() const noexcept { return l1_; }
    double l3() const noexcept { return l3_; }

private:
    BeamGeometry main_;
    double holding_length_;
    double l1_;
    double l3_;
};

/// Cubic restoring force F(x) = k0*x + k3*x^3 = k0*x*(1 + beta*x^2).
class SpringLaw {
public:
    /// Builds the law from (k0, alpha, e); k3 and beta follow.
    static SpringLaw from_alpha(double k0, double alpha, double thickness);

    double k0() const noexcept { return k0_; }
    double k3() const noexcept { return k3_; }
    double alpha() const noexcept { return alpha_; }
    double thickness() const noexcept { return thickness_; }
    /// beta = k3/k0 = alpha/(2e^2), in 1/m^2.
    double beta() const noexcept { return beta_; }

private:
    SpringLaw(double k0, double k3, double alpha, double thickness, double beta)
        : k0_(k0), k3_(k3), alpha_(alpha), thickness_(thickness), beta_(beta) {}

    double k0_;
    double k3_;
    double alpha_;
    double thickness_;
    double beta_;
};

/// k0 = E*b*e^3/L^3 (= 12*E*I/L^3).
double linear_stiffness(const Material& mat, const BeamGeometry& g);

/// Small-deflection shape x(y) = F/(E*I) * (y^3/6 - L*y^2/4). Throws DomainError
/// for y outside [0, L].
double deflection_profile(const Material& mat, const BeamGeometry& g, double force, double y);

/// k_trac = E*b*e/L.
double traction_stiffness(const Material& mat, const BeamGeometry& g);

/// k_parr = E*b/a^3 * (2*l1^3 + 2*l3^3): four clamped-guided holding beams in parallel.
double holding_stiffness(const Material& mat, const HShapeGeometry& h);

/// alpha = k_parr/(k_parr + k_trac). Returns 0 for k_parr == 0.
double alpha_ratio(double k_trac, double k_parr);

SpringLaw spring_law_from_geometry(const Material& mat, const HShapeGeometry& h);

/// Plain clamped-guided beam (rigid anchor, alpha = 1).
SpringLaw spring_law_from_geometry(const Material& mat, const BeamGeometry& g);

/// Stretching force without the Taylor truncation:
/// (sqrt(1+(x/L)^2) - 1) * E*S*x / (L*sqrt(1+(x/L)^2)).
double exact_elongation_force(const Material& mat, const BeamGeometry& g, double x);

double spring_force(const SpringLaw& law, double x);

struct ForceSample {
    double x;  ///< m
    double f;  ///< N
};

struct CubicFit {
    double k0;        ///< N/m
    double k3;        ///< N/m^3
    double residual;  ///< RMS fit error, N
    /// Sample positions sorted ascending, and the successive finite-difference
    /// derivatives dF/dx, d2F/dx2, d3F/dx3 on that grid. Diagnostic only.
    std::vector<double> x;
    std::vector<double> d1;
    std::vector<double> d2;
    std::vector<double> d3;
};

/// Least-squares fit of F = k0*x + k3*x^3. Requires at least four distinct
/// abscissae with both signs present; throws FitError otherwise.
CubicFit fit_cubic_from_samples(std::span<const ForceSample> samples);

/// Derivative of y(x) on a possibly non-uniform ascending grid: second-order
/// central differences inside, one-sided at the ends.
std::vector<double> finite_difference(std::span<const double> x, std::span<const double> y);

}  // namespace nlveh
