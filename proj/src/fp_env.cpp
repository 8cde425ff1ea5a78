#include "crscl/fp_env.hpp"

#include <string>

namespace crscl {

std::string_view to_string(Precision p) {
  return p == Precision::Binary32 ? "binary32" : "binary64";
}

Precision parse_precision(std::string_view text) {
  if (text == "binary32" || text == "single" || text == "f32") return Precision::Binary32;
  if (text == "binary64" || text == "double" || text == "f64") return Precision::Binary64;
  throw std::invalid_argument("unsupported precision '" + std::string(text) + "'");
}

}  // namespace crscl
