#include "entail/text.hpp"

#include <charconv>
#include <cmath>

namespace entail {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

}  // namespace entail
