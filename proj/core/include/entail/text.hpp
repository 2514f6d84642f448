#pragma once

#include <string>

namespace entail {

/// Shortest decimal form that round-trips ("0.5", "17.75", "2").
std::string format_number(double value);

}  // namespace entail
