#include "nlveh/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nlveh/errors.hpp"

namespace nlveh {
namespace {

struct Vertex {
    std::vector<double> x;
    double f;
};

}  // namespace

NelderMeadResult nelder_mead_minimize(const Objective& f, std::vector<double> x0, const NelderMeadOptions& options) {
    const std::size_t n = x0.size();
    if (n == 0) throw DomainError("nelder_mead: empty parameter vector");
    std::vector<double> step = options.initial_step;
    if (step.empty()) {
        // fminsearch's initial simplex: 5% of each coordinate, 0.00025 for zeros.
        for (double xi : x0) step.push_back(xi != 0.0 ? 0.05 * xi : 0.00025);
    }
    if (step.size() != n) throw DomainError("nelder_mead: initial_step has the wrong size");
    const bool boxed = !options.lower.empty();
    if (boxed && (options.lower.size() != n || options.upper.size() != n)) {
        throw DomainError("nelder_mead: bounds have the wrong size");
    }

    auto project = [&](std::vector<double>& x) {
        if (!boxed) return;
        for (std::size_t i = 0; i < n; ++i) x[i] = std::clamp(x[i], options.lower[i], options.upper[i]);
    };
    std::size_t evaluations = 0;
    auto eval = [&](std::vector<double>& x) {
        project(x);
        ++evaluations;
        const double v = f(x);
        return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
    };

    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    project(x0);
    simplex.push_back({x0, eval(x0)});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x = x0;
        x[i] += step[i];
        if (boxed && x[i] > options.upper[i]) x[i] = x0[i] - step[i];
        const double fx = eval(x);
        simplex.push_back({std::move(x), fx});
    }

    auto order = [&] {
        std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    auto diameter = [&] {
        double d = 0.0;
        for (std::size_t j = 1; j <= n; ++j) {
            for (std::size_t i = 0; i < n; ++i) d = std::max(d, std::abs(simplex[j].x[i] - simplex[0].x[i]));
        }
        return d;
    };
    auto affine = [&](const std::vector<double>& base, const std::vector<double>& towards, double t) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i) out[i] = base[i] + t * (towards[i] - base[i]);
        return out;
    };

    order();
    bool converged = false;
    while (true) {
        if (diameter() < options.diameter_tolerance) {
            converged = true;
            break;
        }
        // A step costs at most n + 2 evaluations (reflect, contract, shrink).
        if (evaluations + n + 2 > options.max_evaluations) break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[j].x[i];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        Vertex& worst = simplex[n];
        std::vector<double> xr = affine(centroid, worst.x, -options.reflection);
        const double fr = eval(xr);

        if (fr < simplex[0].f) {
            std::vector<double> xe = affine(centroid, worst.x, -options.reflection * options.expansion);
            const double fe = eval(xe);
            if (fe < fr) {
                worst = {std::move(xe), fe};
            } else {
                worst = {std::move(xr), fr};
            }
        } else if (fr < simplex[n - 1].f) {
            worst = {std::move(xr), fr};
        } else {
            bool accepted = false;
            if (fr < worst.f) {
                std::vector<double> xc = affine(centroid, xr, options.contraction);
                const double fc = eval(xc);
                if (fc <= fr) {
                    worst = {std::move(xc), fc};
                    accepted = true;
                }
            } else {
                std::vector<double> xcc = affine(centroid, worst.x, options.contraction);
                const double fcc = eval(xcc);
                if (fcc < worst.f) {
                    worst = {std::move(xcc), fcc};
                    accepted = true;
                }
            }
            if (!accepted) {
                for (std::size_t j = 1; j <= n; ++j) {
                    simplex[j].x = affine(simplex[0].x, simplex[j].x, options.shrink);
                    simplex[j].f = eval(simplex[j].x);
                }
            }
        }
        order();
    }
    return {simplex[0].x, simplex[0].f, evaluations, converged};
}

}  // namespace nlveh
