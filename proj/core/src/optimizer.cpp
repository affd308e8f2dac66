#include "nlveh/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "nlveh/errors.hpp"
#include "nlveh/nelder_mead.hpp"

namespace nlveh {
namespace {

constexpr double kLogitSpan = 14.0;
constexpr std::array<double, 3> kInitialStep{0.05, 0.5, 1.0};

// Maps harvester parameters to and from the unconstrained search coordinates.
class SearchSpace {
public:
    explicit SearchSpace(const OptSpec& spec)
        : spec_(spec),
          dims_(spec.mode == OptMode::linear ? 2 : 3),
          eps_(std::max(1.0, 1e-5 * spec.beta.hi)) {
        lower_ = {std::log(spec.f0.lo), -kLogitSpan};
        upper_ = {std::log(spec.f0.hi), kLogitSpan};
        if (dims_ == 3) {
            lower_.push_back(std::log(spec.beta.lo + eps_));
            upper_.push_back(std::log(spec.beta.hi + eps_));
        }
    }

    std::size_t dims() const { return dims_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }

    std::vector<double> encode(const HarvesterParams& p) const {
        const double f0 = std::clamp(p.f0, spec_.f0.lo, spec_.f0.hi);
        const double s = std::clamp((p.xi_e - spec_.xi_e.lo) / (spec_.xi_e.hi - spec_.xi_e.lo), 1e-9, 1.0 - 1e-9);
        std::vector<double> u{std::log(f0), std::clamp(std::log(s / (1.0 - s)), -kLogitSpan, kLogitSpan)};
        if (dims_ == 3) {
            const double beta = std::clamp(p.beta, spec_.beta.lo, spec_.beta.hi);
            u.push_back(std::clamp(std::log(beta + eps_), lower_[2], upper_[2]));
        }
        return u;
    }

    HarvesterParams decode(std::span<const double> u) const {
        HarvesterParams p = HarvesterParams::from_q(spec_.m, 1.0, spec_.q, 0.0, 0.0);
        p.f0 = std::clamp(std::exp(u[0]), spec_.f0.lo, spec_.f0.hi);
        const double s = 1.0 / (1.0 + std::exp(-u[1]));
        p.xi_e = std::clamp(spec_.xi_e.lo + s * (spec_.xi_e.hi - spec_.xi_e.lo), spec_.xi_e.lo, spec_.xi_e.hi);
        p.beta = dims_ == 3 ? std::clamp(std::exp(u[2]) - eps_, spec_.beta.lo, spec_.beta.hi) : 0.0;
        return p;
    }

    /// Point of the unit cube mapped log-uniformly in f0, xi_e and beta + eps.
    HarvesterParams from_unit(std::span<const double> c) const {
        std::vector<double> u(dims_);
        u[0] = lower_[0] + c[0] * (upper_[0] - lower_[0]);
        const double xi = std::exp(std::log(spec_.xi_e.lo) + c[1] * std::log(spec_.xi_e.hi / spec_.xi_e.lo));
        HarvesterParams p = decode(u);
        p.xi_e = xi;
        if (dims_ == 3) {
            const double ub = lower_[2] + c[2] * (upper_[2] - lower_[2]);
            p.beta = std::clamp(std::exp(ub) - eps_, spec_.beta.lo, spec_.beta.hi);
        }
        return p;
    }

private:
    OptSpec spec_;
    std::size_t dims_;
    double eps_;
    std::vector<double> lower_;
    std::vector<double> upper_;
};

double radical_inverse(std::size_t index, unsigned base) {
    double inv = 1.0 / base;
    double f = inv;
    double r = 0.0;
    while (index > 0) {
        r += f * static_cast<double>(index % base);
        index /= base;
        f *= inv;
    }
    return r;
}

// Halton points with a Cranley-Patterson shift drawn from the seed.
std::vector<std::vector<double>> halton_points(std::size_t count, std::size_t dims, std::uint64_t seed) {
    constexpr std::array<unsigned, 3> kBases{2, 3, 5};
    std::mt19937_64 rng(seed);
    std::vector<double> shift(dims);
    for (auto& s : shift) s = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    std::vector<std::vector<double>> pts(count, std::vector<double>(dims));
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t d = 0; d < dims; ++d) {
            const double v = radical_inverse(i + 1, kBases[d]) + shift[d];
            pts[i][d] = v - std::floor(v);
        }
    }
    return pts;
}

struct StartOutcome {
    std::vector<Evaluation> history;
    HarvesterParams best;
    double best_power = -std::numeric_limits<double>::infinity();
    bool converged = false;
};

std::string describe(const HarvesterParams& p) {
    std::ostringstream os;
    os.precision(6);
    os << "(f0=" << p.f0 << ", xi_e=" << p.xi_e << ", beta=" << p.beta << ")";
    return os.str();
}

bool better(double pa, const HarvesterParams& a, double pb, const HarvesterParams& b) {
    if (pa != pb) return pa > pb;
    return std::tie(a.f0, a.xi_e, a.beta) < std::tie(b.f0, b.xi_e, b.beta);
}

std::size_t periodogram_segment(std::size_t n) {
    std::size_t seg = 4;
    while (seg * 2 <= std::min<std::size_t>(n, 16384)) seg *= 2;
    return seg;
}

}  // namespace

void OptSpec::validate() const {
    auto ordered = [](const ParamBounds& b) { return std::isfinite(b.lo) && std::isfinite(b.hi) && b.lo < b.hi; };
    if (!ordered(f0) || !(f0.lo > 0.0)) throw DomainError("f0 bounds must satisfy 0 < lo < hi");
    if (!ordered(xi_e) || !(xi_e.lo > 0.0)) throw DomainError("xi_e bounds must satisfy 0 < lo < hi");
    if (mode == OptMode::nonlinear && (!ordered(beta) || !(beta.lo >= 0.0))) {
        throw DomainError("beta bounds must satisfy 0 <= lo < hi");
    }
    if (!(m > 0.0)) throw DomainError("mass must be positive");
    if (!(q > 0.0)) throw DomainError("Q must be positive");
    if (restarts == 0 && warm_starts.empty() && !spectral_anchor) throw DomainError("no starting points");
    if (!(diameter_tolerance > 0.0) || max_evaluations < 4) throw DomainError("invalid convergence settings");
}

double objective(const HarvesterParams& p, const VibrationTrace& trace) { return simulate(p, trace).mean_power; }

OptResult maximize_power(const OptSpec& spec, const PowerFunction& power, std::span<const HarvesterParams> anchors) {
    spec.validate();
    const SearchSpace space(spec);

    std::vector<HarvesterParams> starts(anchors.begin(), anchors.end());
    starts.insert(starts.end(), spec.warm_starts.begin(), spec.warm_starts.end());
    if (spec.restarts > starts.size()) {
        for (const auto& c : halton_points(spec.restarts - starts.size(), space.dims(), spec.seed)) {
            starts.push_back(space.from_unit(c));
        }
    }
    if (starts.empty()) throw DomainError("no starting points");

    NelderMeadOptions nm;
    nm.diameter_tolerance = spec.diameter_tolerance;
    nm.max_evaluations = spec.max_evaluations;
    nm.initial_step.assign(kInitialStep.begin(), kInitialStep.begin() + static_cast<long>(space.dims()));
    nm.lower = space.lower();
    nm.upper = space.upper();

    auto run_start = [&](std::size_t index) {
        StartOutcome out;
        auto f = [&](std::span<const double> u) {
            const HarvesterParams p = space.decode(u);
            try {
                const double w = power(p);
                out.history.push_back({p, w, index, false});
                return -w;
            } catch (const DivergenceError&) {
                out.history.push_back({p, 0.0, index, true});
                return std::numeric_limits<double>::infinity();
            }
        };
        const NelderMeadResult r = nelder_mead_minimize(f, space.encode(starts[index]), nm);
        if (std::isfinite(r.value)) {
            out.best = space.decode(r.x);
            out.best_power = -r.value;
        }
        out.converged = r.converged;
        return out;
    };

    std::vector<StartOutcome> outcomes(starts.size());
    if (std::thread::hardware_concurrency() > 1 && starts.size() > 1) {
        std::vector<std::future<StartOutcome>> futures;
        for (std::size_t i = 0; i < starts.size(); ++i) {
            futures.push_back(std::async(std::launch::async, run_start, i));
        }
        for (std::size_t i = 0; i < starts.size(); ++i) outcomes[i] = futures[i].get();
    } else {
        for (std::size_t i = 0; i < starts.size(); ++i) outcomes[i] = run_start(i);
    }

    OptResult result;
    bool found = false;
    for (auto& o : outcomes) {
        for (const auto& e : o.history) result.diverged_evaluations += e.diverged ? 1 : 0;
        result.evaluations += o.history.size();
        if (std::isfinite(o.best_power) &&
            (!found || better(o.best_power, o.best, result.best_power, result.best_params))) {
            result.best_params = o.best;
            result.best_power = o.best_power;
            result.converged = o.converged;
            found = true;
        }
        result.history.insert(result.history.end(), o.history.begin(), o.history.end());
    }
    if (!found) {
        std::string msg = "every optimizer start diverged; failing parameter sets:";
        for (std::size_t i = 0; i < std::min<std::size_t>(result.history.size(), 8); ++i) {
            msg += " " + describe(result.history[i].params);
        }
        throw DivergenceError(msg);
    }
    return result;
}

OptResult optimize(const OptSpec& spec, const VibrationTrace& trace) {
    spec.validate();
    std::vector<HarvesterParams> anchors;
    if (spec.spectral_anchor) {
        const auto spectrum = periodogram(trace, periodogram_segment(trace.size()));
        std::size_t peak = 1;
        for (std::size_t k = 1; k < spectrum.size(); ++k) {
            if (spectrum[k].amplitude > spectrum[peak].amplitude) peak = k;
        }
        HarvesterParams a = HarvesterParams::from_q(spec.m, spectrum[peak].frequency, spec.q, 0.0, spec.beta.lo);
        a.f0 = std::clamp(a.f0, spec.f0.lo, spec.f0.hi);
        a.xi_e = std::clamp(a.xi_m, spec.xi_e.lo, spec.xi_e.hi);
        if (spec.mode == OptMode::linear) a.beta = 0.0;
        anchors.push_back(a);
    }
    return maximize_power(spec, [&trace](const HarvesterParams& p) { return objective(p, trace); }, anchors);
}

ComparisonReport compare_linear_nonlinear(const VibrationTrace& trace, double m, double q, const OptSpec& overrides) {
    OptSpec linear = overrides;
    linear.mode = OptMode::linear;
    linear.m = m;
    linear.q = q;
    linear.warm_starts.clear();

    ComparisonReport report;
    report.label = trace.label();
    report.linear = optimize(linear, trace);

    OptSpec nonlinear = linear;
    nonlinear.mode = OptMode::nonlinear;
    HarvesterParams seed = report.linear.best_params;
    seed.beta = nonlinear.beta.lo;
    nonlinear.warm_starts = {seed};
    report.nonlinear = optimize(nonlinear, trace);

    report.improvement_percent = report.linear.best_power > 0.0
                                     ? 100.0 * (report.nonlinear.best_power / report.linear.best_power - 1.0)
                                     : 0.0;
    return report;
}

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

}  // namespace

std::string render_markdown(const ComparisonReport& r) {
    const auto& lin = r.linear.best_params;
    const auto& nl = r.nonlinear.best_params;
    std::ostringstream os;
    os << "| Source of vibrations | Optimum for linear devices | Optimum for nonlinear devices |\n";
    os << "|---|---|---|\n";
    os << "| " << r.label << " | f0=" << fmt("%.2f", lin.f0) << " Hz, xi_e=" << fmt("%.4g", lin.xi_e)
       << ", P=" << fmt("%.2f", r.linear.best_power * 1e6) << " uW (" << fmt("%.2f", r.linear.best_power_uw_per_g())
       << " uW/g) | f0=" << fmt("%.2f", nl.f0) << " Hz, xi_e=" << fmt("%.4g", nl.xi_e)
       << ", beta=" << fmt("%.4g", nl.beta) << " m^-2, P=" << fmt("%.2f", r.nonlinear.best_power * 1e6) << " uW ("
       << fmt("%.2f", r.nonlinear.best_power_uw_per_g()) << " uW/g) |\n\n";
    os << "Improvement of the nonlinear optimum: " << fmt("%+.2f", r.improvement_percent) << " %\n";
    return os.str();
}

std::string render_csv(const ComparisonReport& r) {
    std::ostringstream os;
    os << "source,mode,f0_hz,xi_e,beta_per_m2,power_w,power_uw_per_g,evaluations,converged,improvement_percent\n";
    auto row = [&](const char* mode, const OptResult& o) {
        os << r.label << ',' << mode << ',' << fmt("%.10g", o.best_params.f0) << ','
           << fmt("%.10g", o.best_params.xi_e) << ',' << fmt("%.10g", o.best_params.beta) << ','
           << fmt("%.10g", o.best_power) << ',' << fmt("%.10g", o.best_power_uw_per_g()) << ',' << o.evaluations
           << ',' << (o.converged ? "true" : "false") << ',' << fmt("%.6g", r.improvement_percent) << '\n';
    };
    row("linear", r.linear);
    row("nonlinear", r.nonlinear);
    return os.str();
}

}  // namespace nlveh
