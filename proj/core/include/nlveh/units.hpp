#pragma once

#include <string_view>

namespace nlveh::units {

enum class Dimension { length, pressure, mass, frequency, acceleration, resistance, flux_density, none };

/// Parses "1 cm", "100um", "131 GPa", "2.5e-3" into an SI value.
///
/// A bare number is taken as already SI. A suffix must belong to the requested
/// dimension; "100 um" where a pressure is expected is rejected with ConfigError.
/// Both "um" and "µm" are accepted for micrometres.
double parse(std::string_view text, Dimension dim);

}  // namespace nlveh::units
