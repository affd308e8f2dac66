#include "nlveh/excitation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>

#include "nlveh/errors.hpp"

namespace nlveh {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char delim) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delim, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::optional<double> to_double(std::string_view s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::size_t column_index(const std::vector<std::string_view>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ConfigError("trace CSV has no column named '" + name + "'");
}

// FFTW planning is not thread-safe; execution on distinct plans is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

VibrationTrace::VibrationTrace(double dt, std::vector<double> samples, std::string label)
    : dt_(dt), samples_(std::move(samples)), label_(std::move(label)) {
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) throw DomainError("trace sample interval must be positive");
    if (samples_.size() < 2) throw DomainError("trace needs at least 2 samples");
    for (double v : samples_) {
        if (!std::isfinite(v)) throw DomainError("trace contains a non-finite sample");
    }
}

double VibrationTrace::mean() const noexcept {
    return std::accumulate(samples_.begin(), samples_.end(), 0.0) / static_cast<double>(samples_.size());
}

double VibrationTrace::rms() const noexcept {
    double acc = 0.0;
    for (double v : samples_) acc += v * v;
    return std::sqrt(acc / static_cast<double>(samples_.size()));
}

double VibrationTrace::peak() const noexcept {
    double p = 0.0;
    for (double v : samples_) p = std::max(p, std::abs(v));
    return p;
}

void SineSpec::validate() const {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw DomainError("sine amplitude must be >= 0");
    if (!(frequency > 0.0) || !std::isfinite(frequency)) throw DomainError("sine frequency must be > 0");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw DomainError("sine duration must be > 0");
}

double SweepSpec::duration() const {
    if (f_start == f_end) {
        if (!hold) throw DomainError("a sweep with f_start == f_end needs an explicit hold duration");
        return *hold;
    }
    return std::abs(f_end - f_start) / rate;
}

void SweepSpec::validate() const {
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) throw DomainError("sweep amplitude must be >= 0");
    if (!(f_start > 0.0) || !(f_end > 0.0)) throw DomainError("sweep frequencies must be > 0");
    if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("sweep rate must be > 0");
    if (!(duration() > 0.0)) throw DomainError("sweep duration must be > 0");
}

VibrationTrace parse_trace(std::istream& in, const TraceLoadOptions& options) {
    if (!(options.accel_scale > 0.0) || !std::isfinite(options.accel_scale)) {
        throw ConfigError("accel_scale must be positive");
    }
    std::vector<double> times;
    std::vector<double> values;
    std::size_t tcol = options.time_column;
    std::size_t acol = options.accel_column;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const char delim = view.find(';') != std::string_view::npos ? ';' : ',';
        const auto fields = split(view, delim);
        if (first_content) {
            first_content = false;
            const bool numeric = std::all_of(fields.begin(), fields.end(),
                                             [](std::string_view f) { return to_double(f).has_value(); });
            if (!numeric) {
                if (options.time_name) tcol = column_index(fields, *options.time_name);
                if (options.accel_name) acol = column_index(fields, *options.accel_name);
                continue;
            }
        }
        if (fields.size() <= std::max(tcol, acol)) {
            throw ConfigError("trace CSV line " + std::to_string(line_no) + " has too few columns");
        }
        const auto t = to_double(fields[tcol]);
        const auto a = to_double(fields[acol]);
        if (!t || !a || !std::isfinite(*t) || !std::isfinite(*a)) {
            throw ConfigError("trace CSV line " + std::to_string(line_no) + " is not numeric");
        }
        if (!times.empty() && !(*t > times.back())) {
            throw ConfigError("trace time is not strictly increasing at line " + std::to_string(line_no));
        }
        times.push_back(*t);
        values.push_back(*a * options.accel_scale);
    }
    if (times.size() < 2) throw ConfigError("trace CSV needs at least 2 data rows");

    const std::size_t n = times.size();
    std::vector<double> steps(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) steps[i] = times[i + 1] - times[i];
    std::vector<double> sorted_steps = steps;
    std::nth_element(sorted_steps.begin(), sorted_steps.begin() + sorted_steps.size() / 2, sorted_steps.end());
    const double median = sorted_steps[sorted_steps.size() / 2];
    const bool uniform = std::all_of(steps.begin(), steps.end(),
                                     [median](double s) { return std::abs(s - median) <= 1e-9 * median; });

    std::vector<double> samples;
    double dt = median;
    if (uniform) {
        dt = (times.back() - times.front()) / static_cast<double>(n - 1);
        samples = std::move(values);
    } else {
        const double span = times.back() - times.front();
        const auto count = static_cast<std::size_t>(std::floor(span / dt + 1e-9)) + 1;
        samples.resize(count);
        std::size_t j = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = times.front() + dt * static_cast<double>(i);
            while (j + 2 < n && times[j + 1] < t) ++j;
            const double w = std::clamp((t - times[j]) / (times[j + 1] - times[j]), 0.0, 1.0);
            samples[i] = values[j] + w * (values[j + 1] - values[j]);
        }
        if (samples.size() < 2) throw ConfigError("resampled trace has fewer than 2 samples");
    }
    if (options.remove_dc) {
        const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
        for (double& v : samples) v -= mean;
    }
    return VibrationTrace(dt, std::move(samples), options.label);
}

VibrationTrace load_trace(const std::filesystem::path& path, const TraceLoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open trace file '" + path.string() + "'");
    TraceLoadOptions opts = options;
    if (opts.label.empty()) opts.label = path.stem().string();
    return parse_trace(in, opts);
}

void write_trace(const VibrationTrace& trace, std::ostream& out) {
    out << "time_s,accel_ms2\n";
    char buf[64];
    const auto samples = trace.samples();
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double t = trace.dt() * static_cast<double>(i);
        auto* p = std::to_chars(buf, buf + sizeof buf, t).ptr;
        *p++ = ',';
        p = std::to_chars(p, buf + sizeof buf, samples[i]).ptr;
        *p++ = '\n';
        out.write(buf, p - buf);
    }
}

void save_trace(const VibrationTrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write trace file '" + path.string() + "'");
    write_trace(trace, out);
    if (!out) throw ConfigError("error while writing trace file '" + path.string() + "'");
}

VibrationTrace synth_sine(const SineSpec& spec, double dt) {
    spec.validate();
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(spec.duration / dt)));
    std::vector<double> s(n);
    const double w = 2.0 * std::numbers::pi * spec.frequency;
    for (std::size_t i = 0; i < n; ++i) s[i] = spec.amplitude * std::sin(w * dt * static_cast<double>(i));
    return VibrationTrace(dt, std::move(s), "sine");
}

VibrationTrace synth_sweep(const SweepSpec& spec, double dt) {
    spec.validate();
    if (!(dt > 0.0)) throw DomainError("dt must be positive");
    const double duration = spec.duration();
    const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(duration / dt)));
    const double k = spec.f_end == spec.f_start ? 0.0 : std::copysign(spec.rate, spec.f_end - spec.f_start);
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = dt * static_cast<double>(i);
        // phase = 2 pi (f_start t + k t^2 / 2); integrated, so no jumps
        s[i] = spec.amplitude * std::sin(2.0 * std::numbers::pi * (spec.f_start * t + 0.5 * k * t * t));
    }
    return VibrationTrace(dt, std::move(s), "sweep");
}

VibrationTrace synth_multitone(std::span<const Tone> tones, double duration, double dt, std::string label) {
    if (!(dt > 0.0) || !(duration > 0.0)) throw DomainError("duration and dt must be positive");
    const auto n = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(duration / dt)));
    std::vector<double> s(n, 0.0);
    for (const auto& tone : tones) {
        SineSpec{tone.amplitude, tone.frequency, duration}.validate();
        const double w = 2.0 * std::numbers::pi * tone.frequency;
        for (std::size_t i = 0; i < n; ++i) {
            s[i] += tone.amplitude * std::sin(w * dt * static_cast<double>(i) + tone.phase);
        }
    }
    return VibrationTrace(dt, std::move(s), label.empty() ? "multitone" : std::move(label));
}

std::vector<SpectrumBin> periodogram(const VibrationTrace& trace, std::size_t segment_length) {
    const std::size_t n = segment_length;
    if (n < 4) throw DomainError("periodogram segment length must be at least 4");
    if (n > trace.size()) {
        throw DomainError("periodogram segment length " + std::to_string(n) + " exceeds trace length " +
                          std::to_string(trace.size()));
    }
    const std::size_t bins = n / 2 + 1;
    std::vector<double> window(n);
    double window_power = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n)));
        window_power += window[i] * window[i];
    }

    auto* in = static_cast<double*>(fftw_malloc(sizeof(double) * n));
    auto* out = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins));
    fftw_plan plan;
    {
        std::lock_guard lock(fftw_planner_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }

    std::vector<double> power(bins, 0.0);
    const auto samples = trace.samples();
    const std::size_t hop = std::max<std::size_t>(1, n / 2);
    std::size_t segments = 0;
    for (std::size_t start = 0; start + n <= samples.size(); start += hop) {
        const double mean =
            std::accumulate(samples.begin() + start, samples.begin() + start + n, 0.0) / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) in[i] = window[i] * (samples[start + i] - mean);
        fftw_execute(plan);
        for (std::size_t k = 0; k < bins; ++k) {
            const double mag2 = out[k][0] * out[k][0] + out[k][1] * out[k][1];
            const bool edge = k == 0 || (n % 2 == 0 && k == n / 2);
            power[k] += (edge ? 1.0 : 2.0) * mag2 / (static_cast<double>(n) * window_power);
        }
        ++segments;
    }

    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);

    std::vector<SpectrumBin> spectrum(bins);
    const double df = 1.0 / (static_cast<double>(n) * trace.dt());
    for (std::size_t k = 0; k < bins; ++k) {
        spectrum[k] = {df * static_cast<double>(k), std::sqrt(power[k] / static_cast<double>(segments))};
    }
    return spectrum;
}

}  // namespace nlveh
