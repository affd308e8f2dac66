#include "nlveh/spring_mechanics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlveh/errors.hpp"

namespace nlveh {
namespace {

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive and finite, got " + std::to_string(v));
    }
}

double cube(double v) { return v * v * v; }

}  // namespace

Material::Material(double youngs_modulus_pa) : youngs_modulus(youngs_modulus_pa) {
    require_positive(youngs_modulus, "Young's modulus");
}

BeamGeometry::BeamGeometry(double length, double width, double thickness)
    : length_(length), width_(width), thickness_(thickness) {
    require_positive(length_, "beam length");
    require_positive(width_, "beam width");
    require_positive(thickness_, "beam thickness");
}

HShapeGeometry::HShapeGeometry(BeamGeometry main, double holding_length, double l1, double l3)
    : main_(main), holding_length_(holding_length), l1_(l1), l3_(l3) {
    require_positive(holding_length_, "holding beam length a");
    require_positive(l1_, "holding beam width l1");
    require_positive(l3_, "holding beam width l3");
}

SpringLaw SpringLaw::from_alpha(double k0, double alpha, double thickness) {
    require_positive(k0, "k0");
    require_positive(thickness, "thickness");
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw DomainError("alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
    const double beta = alpha / (2.0 * thickness * thickness);
    return SpringLaw(k0, k0 * beta, alpha, thickness, beta);
}

double linear_stiffness(const Material& mat, const BeamGeometry& g) {
    return mat.youngs_modulus * g.width() * cube(g.thickness()) / cube(g.length());
}

double deflection_profile(const Material& mat, const BeamGeometry& g, double force, double y) {
    const double L = g.length();
    if (!(y >= 0.0 && y <= L)) {
        throw DomainError("deflection_profile: y=" + std::to_string(y) + " outside [0, L]");
    }
    const double ei = mat.youngs_modulus * g.second_moment();
    return force / ei * (y * y * y / 6.0 - L * y * y / 4.0);
}

double traction_stiffness(const Material& mat, const BeamGeometry& g) {
    return mat.youngs_modulus * g.width() * g.thickness() / g.length();
}

double holding_stiffness(const Material& mat, const HShapeGeometry& h) {
    const double eb = mat.youngs_modulus * h.main().width();
    return eb / cube(h.holding_length()) * (2.0 * cube(h.l1()) + 2.0 * cube(h.l3()));
}

double alpha_ratio(double k_trac, double k_parr) {
    require_positive(k_trac, "k_trac");
    if (!(k_parr >= 0.0)) throw DomainError("k_parr must be non-negative");
    if (std::isinf(k_parr)) return 1.0;
    return k_parr / (k_parr + k_trac);
}

SpringLaw spring_law_from_geometry(const Material& mat, const HShapeGeometry& h) {
    const double k0 = linear_stiffness(mat, h.main());
    const double alpha = alpha_ratio(traction_stiffness(mat, h.main()), holding_stiffness(mat, h));
    return SpringLaw::from_alpha(k0, alpha, h.main().thickness());
}

SpringLaw spring_law_from_geometry(const Material& mat, const BeamGeometry& g) {
    return SpringLaw::from_alpha(linear_stiffness(mat, g), 1.0, g.thickness());
}

double exact_elongation_force(const Material& mat, const BeamGeometry& g, double x) {
    const double L = g.length();
    const double u = x / L;
    const double root = std::sqrt(1.0 + u * u);
    // sqrt(1+u^2) - 1 rewritten to avoid cancellation for small u.
    const double stretch = u * u / (root + 1.0);
    return stretch * mat.youngs_modulus * g.section() * x / (L * root);
}

double spring_force(const SpringLaw& law, double x) {
    return law.k0() * x * (1.0 + law.beta() * x * x);
}

std::vector<double> finite_difference(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 3) {
        throw DomainError("finite_difference needs matching grids of at least 3 points");
    }
    std::vector<double> d(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = x[i] - x[i - 1];
        const double h1 = x[i + 1] - x[i];
        d[i] = (-h1 / (h0 * (h0 + h1))) * y[i - 1] + ((h1 - h0) / (h0 * h1)) * y[i] +
               (h0 / (h1 * (h0 + h1))) * y[i + 1];
    }
    {
        const double h0 = x[1] - x[0];
        const double h1 = x[2] - x[1];
        d[0] = (-(2.0 * h0 + h1) / (h0 * (h0 + h1))) * y[0] + ((h0 + h1) / (h0 * h1)) * y[1] -
               (h0 / (h1 * (h0 + h1))) * y[2];
    }
    {
        const double h0 = x[n - 2] - x[n - 3];
        const double h1 = x[n - 1] - x[n - 2];
        d[n - 1] = (h1 / (h0 * (h0 + h1))) * y[n - 3] - ((h0 + h1) / (h0 * h1)) * y[n - 2] +
                   ((2.0 * h1 + h0) / (h1 * (h0 + h1))) * y[n - 1];
    }
    return d;
}

CubicFit fit_cubic_from_samples(std::span<const ForceSample> samples) {
    std::vector<ForceSample> sorted(samples.begin(), samples.end());
    for (const auto& s : sorted) {
        if (!std::isfinite(s.x) || !std::isfinite(s.f)) throw FitError("non-finite force sample");
    }
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.x < b.x; });

    std::size_t distinct = 0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i == 0 || sorted[i].x != sorted[i - 1].x) ++distinct;
    }
    if (distinct < 4) {
        throw FitError("cubic fit needs at least 4 distinct x values, got " + std::to_string(distinct));
    }
    if (!(sorted.front().x < 0.0 && sorted.back().x > 0.0)) {
        throw FitError("cubic fit needs samples on both sides of x = 0");
    }

    // Columns are scaled by the largest |x| so the 2x2 normal matrix is O(1).
    const double scale = std::max(-sorted.front().x, sorted.back().x);
    double s11 = 0, s13 = 0, s33 = 0, r1 = 0, r3 = 0;
    for (const auto& s : sorted) {
        const double u = s.x / scale;
        const double u3 = u * u * u;
        s11 += u * u;
        s13 += u * u3;
        s33 += u3 * u3;
        r1 += u * s.f;
        r3 += u3 * s.f;
    }
    const double det = s11 * s33 - s13 * s13;
    if (!(det > 1e-12 * s11 * s33)) {
        throw FitError("rank-deficient sample grid for cubic fit");
    }
    const double c1 = (r1 * s33 - r3 * s13) / det;
    const double c3 = (s11 * r3 - s13 * r1) / det;

    CubicFit fit;
    fit.k0 = c1 / scale;
    fit.k3 = c3 / (scale * scale * scale);

    double sq = 0.0;
    for (const auto& s : sorted) {
        const double e = s.f - (fit.k0 * s.x + fit.k3 * s.x * s.x * s.x);
        sq += e * e;
    }
    fit.residual = std::sqrt(sq / static_cast<double>(sorted.size()));

    // Diagnostics need a strictly increasing grid; repeated abscissae are averaged.
    std::vector<double> f;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        double acc = 0.0;
        while (j < sorted.size() && sorted[j].x == sorted[i].x) acc += sorted[j++].f;
        fit.x.push_back(sorted[i].x);
        f.push_back(acc / static_cast<double>(j - i));
        i = j;
    }
    fit.d1 = finite_difference(fit.x, f);
    fit.d2 = finite_difference(fit.x, fit.d1);
    fit.d3 = finite_difference(fit.x, fit.d2);
    return fit;
}

}  // namespace nlveh
