#include "nlveh/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <string>

#include "nlveh/errors.hpp"

namespace nlveh::units {
namespace {

struct Suffix {
    std::string_view name;
    Dimension dim;
    double scale;
    double divisor;  ///< dividing by an exact power of ten keeps "100 um" at 1e-4
};

constexpr std::array<Suffix, 30> kSuffixes{{
    {"m", Dimension::length, 1.0, 1.0},
    {"cm", Dimension::length, 1.0, 100.0},
    {"mm", Dimension::length, 1.0, 1e3},
    {"um", Dimension::length, 1.0, 1e6},
    {"\xC2\xB5m", Dimension::length, 1.0, 1e6},  // µm (U+00B5)
    {"\xCE\xBCm", Dimension::length, 1.0, 1e6},  // μm (U+03BC)
    {"nm", Dimension::length, 1.0, 1e9},
    {"Pa", Dimension::pressure, 1.0, 1.0},
    {"kPa", Dimension::pressure, 1e3, 1.0},
    {"MPa", Dimension::pressure, 1e6, 1.0},
    {"GPa", Dimension::pressure, 1e9, 1.0},
    {"kg", Dimension::mass, 1.0, 1.0},
    {"g", Dimension::mass, 1.0, 1e3},
    {"mg", Dimension::mass, 1.0, 1e6},
    {"Hz", Dimension::frequency, 1.0, 1.0},
    {"kHz", Dimension::frequency, 1e3, 1.0},
    {"rpm", Dimension::frequency, 1.0, 60.0},
    {"m/s2", Dimension::acceleration, 1.0, 1.0},
    {"m/s^2", Dimension::acceleration, 1.0, 1.0},
    {"g0", Dimension::acceleration, 9.80665, 1.0},
    {"mg0", Dimension::acceleration, 9.80665, 1e3},
    {"Ohm", Dimension::resistance, 1.0, 1.0},
    {"ohm", Dimension::resistance, 1.0, 1.0},
    {"kOhm", Dimension::resistance, 1e3, 1.0},
    {"MOhm", Dimension::resistance, 1e6, 1.0},
    {"\xCE\xA9", Dimension::resistance, 1.0, 1.0},  // Ω
    {"T", Dimension::flux_density, 1.0, 1.0},
    {"mT", Dimension::flux_density, 1.0, 1e3},
    {"G", Dimension::flux_density, 1.0, 1e4},
    {"%", Dimension::none, 1.0, 100.0},
}};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

double parse(std::string_view text, Dimension dim) {
    const std::string_view s = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr == s.data()) {
        throw ConfigError("cannot parse quantity '" + std::string(text) + "'");
    }
    if (!std::isfinite(value)) {
        throw ConfigError("non-finite quantity '" + std::string(text) + "'");
    }
    const std::string_view suffix = trim(std::string_view(ptr, s.data() + s.size() - ptr));
    if (suffix.empty()) return value;
    for (const auto& entry : kSuffixes) {
        if (entry.name == suffix) {
            if (entry.dim != dim) {
                throw ConfigError("unit '" + std::string(suffix) + "' has the wrong dimension in '" +
                                  std::string(text) + "'");
            }
            return value * entry.scale / entry.divisor;
        }
    }
    throw ConfigError("unknown unit '" + std::string(suffix) + "' in '" + std::string(text) + "'");
}

}  // namespace nlveh::units
