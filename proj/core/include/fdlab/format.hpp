#pragma once

#include <string>

namespace fdlab {

/// Shortest round-trip decimal form of a double; locale independent, so
/// output is byte-stable across runs.
std::string format_double(double v);

}  // namespace fdlab
