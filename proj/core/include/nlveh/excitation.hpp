#pragma once

// Base-acceleration signals a_v(t): synthetic sines and chirps, recorded
// traces loaded from CSV, and a Welch spectrum for reporting.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace nlveh {

/// Uniformly sampled acceleration, m/s^2. Immutable once built.
class VibrationTrace {
public:
    VibrationTrace(double dt, std::vector<double> samples, std::string label = {});

    double dt() const noexcept { return dt_; }
    double sample_rate() const noexcept { return 1.0 / dt_; }
    std::size_t size() const noexcept { return samples_.size(); }
    std::span<const double> samples() const noexcept { return samples_; }
    const std::string& label() const noexcept { return label_; }

    /// Time of the last sample, (n-1)*dt.
    double duration() const noexcept { return dt_ * static_cast<double>(samples_.size() - 1); }

    /// Linear interpolation between samples; clamped to the end values outside the record.
    double at(double t) const noexcept {
        const double pos = t / dt_;
        if (pos <= 0.0) return samples_.front();
        const auto i = static_cast<std::size_t>(pos);
        if (i + 1 >= samples_.size()) return samples_.back();
        const double w = pos - static_cast<double>(i);
        return samples_[i] + w * (samples_[i + 1] - samples_[i]);
    }

    double mean() const noexcept;
    double rms() const noexcept;
    double peak() const noexcept;

private:
    double dt_;
    std::vector<double> samples_;
    std::string label_;
};

/// a_v(t) = A sin(2 pi f t) for t in [0, duration).
struct SineSpec {
    double amplitude;  ///< m/s^2
    double frequency;  ///< Hz
    double duration;   ///< s

    void validate() const;
};

/// Constant-amplitude linear chirp from f_start to f_end at |df/dt| = rate.
/// When f_start == f_end the chirp degenerates to a sine and `hold` gives its length.
struct SweepSpec {
    double amplitude;  ///< m/s^2
    double f_start;    ///< Hz
    double f_end;      ///< Hz
    double rate;       ///< Hz/s
    std::optional<double> hold;

    double duration() const;
    void validate() const;
};

struct Tone {
    double amplitude;  ///< m/s^2
    double frequency;  ///< Hz
    double phase = 0.0;
};

struct TraceLoadOptions {
    std::size_t time_column = 0;
    std::size_t accel_column = 1;
    /// When set and the file has a header row, columns are looked up by name.
    std::optional<std::string> time_name;
    std::optional<std::string> accel_name;
    /// Multiplies every acceleration value (e.g. 9.80665 for data in g).
    double accel_scale = 1.0;
    bool remove_dc = true;
    std::string label;
};

/// Reads (time_s, accel) CSV with optional header; ',' or ';' delimited.
/// Non-uniform time grids are linearly resampled at the median step. Throws
/// ConfigError for unreadable files, non-increasing time or fewer than 2 rows.
VibrationTrace load_trace(const std::filesystem::path& path, const TraceLoadOptions& options = {});
VibrationTrace parse_trace(std::istream& in, const TraceLoadOptions& options = {});

/// Writes "time_s,accel_ms2" with round-trip precision.
void save_trace(const VibrationTrace& trace, const std::filesystem::path& path);
void write_trace(const VibrationTrace& trace, std::ostream& out);

VibrationTrace synth_sine(const SineSpec& spec, double dt);
VibrationTrace synth_sweep(const SweepSpec& spec, double dt);
VibrationTrace synth_multitone(std::span<const Tone> tones, double duration, double dt, std::string label = {});

struct SpectrumBin {
    double frequency;  ///< Hz
    double amplitude;  ///< RMS amplitude in the bin, m/s^2
};

/// Welch-averaged one-sided spectrum: Hann window, 50% overlap, per-segment
/// mean removal. Bins are normalized so that the sum of squared amplitudes
/// equals the signal variance.
std::vector<SpectrumBin> periodogram(const VibrationTrace& trace, std::size_t segment_length);

}  // namespace nlveh
