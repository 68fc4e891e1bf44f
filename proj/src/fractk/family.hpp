#pragma once

#include <stdexcept>
#include <string>

namespace fractk {

enum class Family { Classical, Square };

inline std::string family_name(Family f) {
  return f == Family::Classical ? "classical" : "square";
}

inline Family family_from_name(const std::string& s) {
  if (s == "classical") return Family::Classical;
  if (s == "square") return Family::Square;
  throw std::invalid_argument("unknown family: " + s);
}

}  // namespace fractk
