#pragma once

#include <string>

namespace matching {

/// Shortest-independent fixed format: 17 significant digits, so values round-trip exactly.
std::string format_double(double v);

}  // namespace matching
