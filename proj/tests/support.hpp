#pragma once

#include <cmath>

namespace nlveh::test {

inline double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

}  // namespace nlveh::test
