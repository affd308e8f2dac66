#include "nlveh/frequency_sweep.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include "nlveh/errors.hpp"

namespace nlveh {
namespace {

std::vector<SweepPoint> ascending(const SweepResult& r) {
    std::vector<SweepPoint> pts = r.points;
    std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.f < b.f; });
    return pts;
}

double interpolate_power(const std::vector<SweepPoint>& pts, double f) {
    if (f <= pts.front().f) return pts.front().power;
    if (f >= pts.back().f) return pts.back().power;
    const auto it = std::lower_bound(pts.begin(), pts.end(), f, [](const auto& p, double v) { return p.f < v; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (f - lo.f) / (hi.f - lo.f);
    return lo.power + w * (hi.power - lo.power);
}

}  // namespace

const SweepPoint& SweepResult::peak() const {
    if (points.empty()) throw DomainError("empty sweep");
    return *std::max_element(points.begin(), points.end(),
                             [](const auto& a, const auto& b) { return a.power < b.power; });
}

std::vector<double> log_grid(double f_lo, double f_hi, std::size_t n, SweepDirection direction) {
    if (!(f_lo > 0.0) || !(f_hi > f_lo) || n < 2) throw DomainError("log_grid needs 0 < f_lo < f_hi and n >= 2");
    std::vector<double> grid(n);
    const double ratio = std::log(f_hi / f_lo);
    for (std::size_t i = 0; i < n; ++i) {
        grid[i] = f_lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1));
    }
    grid.back() = f_hi;
    if (direction == SweepDirection::down) std::reverse(grid.begin(), grid.end());
    return grid;
}

std::vector<double> default_grid(double f0, SweepDirection direction) {
    return log_grid(0.5 * f0, 3.0 * f0, 200, direction);
}

SweepResult stepped_sweep(const HarvesterParams& p, double amplitude, std::span<const double> f_grid,
                          SweepDirection direction, const SweepOptions& options) {
    p.validate();
    if (f_grid.size() < 2) throw DomainError("sweep grid needs at least 2 frequencies");
    for (std::size_t i = 0; i + 1 < f_grid.size(); ++i) {
        const bool ok = direction == SweepDirection::up ? f_grid[i + 1] > f_grid[i] : f_grid[i + 1] < f_grid[i];
        if (!ok || !(f_grid[i] > 0.0)) throw DomainError("sweep grid is not strictly monotone in the sweep direction");
    }

    SweepResult result{direction, {}, std::nullopt, 1.0, 0.0};
    result.points.reserve(f_grid.size());
    SimState state;
    for (double f : f_grid) {
        const SteadyState ss = steady_state(p, SineSpec{amplitude, f, 1.0}, state);
        result.points.push_back({f, ss.amplitude, ss.power});
        state = ss.final_state;
        state.t = 0.0;
    }

    double best_ratio = 1.0;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i + 1 < result.points.size(); ++i) {
        const double a = result.points[i].power;
        const double b = result.points[i + 1].power;
        const double lo = std::min(a, b);
        const double hi = std::max(a, b);
        const double ratio = lo > 0.0 ? hi / lo : (hi > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
        if (ratio > best_ratio) {
            best_ratio = ratio;
            best_index = i;
        }
    }
    result.jump_ratio = best_ratio;
    if (best_ratio > options.jump_factor) result.jump_frequency = result.points[best_index].f;
    result.bandwidth_at_half_peak = bandwidth_metrics(result, options.bandwidth_fraction).width;
    return result;
}

std::pair<SweepResult, SweepResult> sweep_both(const HarvesterParams& p, double amplitude,
                                               std::span<const double> ascending_grid,
                                               const SweepOptions& options) {
    std::vector<double> up(ascending_grid.begin(), ascending_grid.end());
    std::vector<double> down(up.rbegin(), up.rend());
    auto down_future = std::async(std::launch::async, [&] {
        return stepped_sweep(p, amplitude, down, SweepDirection::down, options);
    });
    SweepResult up_result = stepped_sweep(p, amplitude, up, SweepDirection::up, options);
    return {std::move(up_result), down_future.get()};
}

Bandwidth bandwidth_metrics(const SweepResult& r, double fraction) {
    if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("bandwidth fraction must lie in (0, 1]");
    const auto pts = ascending(r);
    if (pts.size() < 2) throw DomainError("bandwidth needs at least 2 sweep points");
    std::size_t peak = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].power > pts[peak].power) peak = i;
    }
    const double threshold = fraction * pts[peak].power;
    std::size_t lo = peak;
    std::size_t hi = peak;
    while (lo > 0 && pts[lo - 1].power >= threshold) --lo;
    while (hi + 1 < pts.size() && pts[hi + 1].power >= threshold) ++hi;

    const double f_low = lo > 0 ? 0.5 * (pts[lo - 1].f + pts[lo].f) : pts[0].f - 0.5 * (pts[1].f - pts[0].f);
    const std::size_t n = pts.size();
    const double f_high =
        hi + 1 < n ? 0.5 * (pts[hi].f + pts[hi + 1].f) : pts[n - 1].f + 0.5 * (pts[n - 1].f - pts[n - 2].f);
    return {f_low, f_high, f_high - f_low};
}

double hysteresis_area(const SweepResult& up, const SweepResult& down) {
    const auto a = ascending(up);
    const auto b = ascending(down);
    if (a.size() < 2 || b.size() < 2) throw DomainError("hysteresis_area needs two non-trivial sweeps");
    double area = 0.0;
    double prev = std::abs(a[0].power - interpolate_power(b, a[0].f));
    for (std::size_t i = 1; i < a.size(); ++i) {
        const double cur = std::abs(a[i].power - interpolate_power(b, a[i].f));
        area += 0.5 * (prev + cur) * (a[i].f - a[i - 1].f);
        prev = cur;
    }
    return area;
}

}  // namespace nlveh
