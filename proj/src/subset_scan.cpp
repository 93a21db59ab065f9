#include "asymparb/subset_scan.hpp"

namespace asymparb {

std::string subset_to_string(std::uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if ((mask >> i) & 1u) {
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
  }
  s += "}";
  return s;
}

}  // namespace asymparb
