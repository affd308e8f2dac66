#pragma once

// Amplitude-dependent natural frequency of the undamped hardening oscillator
//   x'' + w0^2 * x * (1 + beta*x^2) = 0
// released from rest at x_max. Everything depends on lambda = beta*x_max^2.

#include <span>
#include <vector>

#include "nlveh/spring_mechanics.hpp"

namespace nlveh {

/// Complete elliptic integral of the first kind, parameter convention:
/// K(m) = integral_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta), 0 <= m < 1.
/// Evaluated by the arithmetic-geometric mean.
double elliptic_k(double m);

/// Period from the energy integral, by adaptive Gauss-Kronrod quadrature after
/// the substitution x = x_max*sin(theta). Throws NumericError if the requested
/// accuracy cannot be reached.
double equivalent_period_quadrature(double beta, double omega0, double x_max);

/// Same period in closed form: T = (4/w0) K(m)/sqrt(1+lambda),
/// m = lambda/(2(1+lambda)). Returns the frequency 1/T in Hz.
double equivalent_frequency_closed_form(double beta, double omega0, double x_max);

/// f_eq/f0 as a function of lambda alone (closed form).
double frequency_ratio(double lambda);

struct BackbonePoint {
    double x_max;         ///< m
    double lambda;        ///< beta * x_max^2
    double f_eq_over_f0;  ///< >= 1
    double f_eq;          ///< Hz
};

std::vector<BackbonePoint> backbone_curve(double beta, double f0, std::span<const double> amplitudes);
std::vector<BackbonePoint> backbone_curve(const SpringLaw& law, double f0, std::span<const double> amplitudes);

}  // namespace nlveh
