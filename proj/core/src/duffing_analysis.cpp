#include "nlveh/duffing_analysis.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "nlveh/errors.hpp"

namespace nlveh {
namespace {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double value;
    double error;
};

template <typename F>
Segment gauss_kronrod(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double sum = f(c - dx) + f(c + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    return {kronrod * h, std::abs((kronrod - gauss) * h)};
}

struct QuadStats {
    int intervals = 0;
};

template <typename F>
double adaptive(const F& f, double a, double b, double whole, double tol, int depth, QuadStats& stats) {
    constexpr int kMaxDepth = 40;
    constexpr int kMaxIntervals = 100000;
    const double mid = 0.5 * (a + b);
    const Segment left = gauss_kronrod(f, a, mid);
    const Segment right = gauss_kronrod(f, mid, b);
    stats.intervals += 2;
    const double refined = left.value + right.value;
    if (std::abs(refined - whole) <= tol || left.error + right.error <= 0.1 * tol) {
        return refined;
    }
    if (depth >= kMaxDepth || stats.intervals > kMaxIntervals) {
        throw NumericError("energy-integral quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "] after " + std::to_string(stats.intervals) +
                           " intervals (estimate " + std::to_string(refined) + ")");
    }
    return adaptive(f, a, mid, left.value, 0.5 * tol, depth + 1, stats) +
           adaptive(f, mid, b, right.value, 0.5 * tol, depth + 1, stats);
}

void check_oscillator_args(double beta, double omega0, double x_max) {
    if (!(x_max > 0.0) || !std::isfinite(x_max)) throw DomainError("x_max must be positive");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be positive");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be non-negative");
}

}  // namespace

double elliptic_k(double m) {
    if (!(m >= 0.0 && m < 1.0)) {
        throw DomainError("elliptic_k: parameter m=" + std::to_string(m) + " outside [0, 1)");
    }
    double a = 1.0;
    double g = std::sqrt(1.0 - m);
    for (int i = 0; i < 64 && std::abs(a - g) > 1e-16 * a; ++i) {
        const double next = 0.5 * (a + g);
        g = std::sqrt(a * g);
        a = next;
    }
    return std::numbers::pi / (2.0 * a);
}

double equivalent_period_quadrature(double beta, double omega0, double x_max) {
    check_oscillator_args(beta, omega0, x_max);
    const double half_lambda = 0.5 * beta * x_max * x_max;
    // With x = x_max sin(theta) the integrand of
    //   T = 4 * int_0^x_max dx / (w0 sqrt((x_max^2 - x^2) + beta/2 (x_max^4 - x^4)))
    // becomes 1/sqrt(1 + lambda/2 (1 + sin^2 theta)), smooth on [0, pi/2].
    const auto integrand = [half_lambda](double theta) {
        const double s = std::sin(theta);
        return 1.0 / std::sqrt(1.0 + half_lambda * (1.0 + s * s));
    };
    const double a = 0.0;
    const double b = 0.5 * std::numbers::pi;
    const Segment first = gauss_kronrod(integrand, a, b);
    QuadStats stats;
    const double integral = adaptive(integrand, a, b, first.value, 1e-15 * std::abs(first.value), 0, stats);
    return 4.0 * integral / omega0;
}

double frequency_ratio(double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be non-negative");
    const double m = lambda / (2.0 * (1.0 + lambda));
    // f_eq/f0 = (2 pi / w0) / T with T = (4/w0) K(m)/sqrt(1+lambda)
    return std::numbers::pi * std::sqrt(1.0 + lambda) / (2.0 * elliptic_k(m));
}

double equivalent_frequency_closed_form(double beta, double omega0, double x_max) {
    check_oscillator_args(beta, omega0, x_max);
    return omega0 / (2.0 * std::numbers::pi) * frequency_ratio(beta * x_max * x_max);
}

std::vector<BackbonePoint> backbone_curve(double beta, double f0, std::span<const double> amplitudes) {
    if (!(beta >= 0.0)) throw DomainError("beta must be non-negative");
    if (!(f0 > 0.0)) throw DomainError("f0 must be positive");
    std::vector<BackbonePoint> out;
    out.reserve(amplitudes.size());
    for (double x : amplitudes) {
        if (!(x >= 0.0)) throw DomainError("backbone amplitudes must be non-negative");
        const double lambda = beta * x * x;
        const double ratio = frequency_ratio(lambda);
        out.push_back({x, lambda, ratio, ratio * f0});
    }
    return out;
}

std::vector<BackbonePoint> backbone_curve(const SpringLaw& law, double f0, std::span<const double> amplitudes) {
    return backbone_curve(law.beta(), f0, amplitudes);
}

}  // namespace nlveh
