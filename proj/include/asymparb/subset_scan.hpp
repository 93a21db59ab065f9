#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace asymparb {

/// Visits every nonempty subset of {0, ..., k-1} exactly once in Gray-code
/// order, flipping one element per step so callers can maintain incremental
/// sums. fn(mask, flipped_index, added) runs after each flip.
template <class F>
void gray_scan(int k, F&& fn) {
  std::uint32_t mask = 0;
  const std::uint64_t total = 1ull << k;
  for (std::uint64_t i = 1; i < total; ++i) {
    int bit = std::countr_zero(i);
    bool added = ((mask >> bit) & 1u) == 0;
    mask ^= 1u << bit;
    fn(mask, bit, added);
  }
}

/// Renders a subset bitmask as "{1,3,4}" with 1-based outcome labels.
std::string subset_to_string(std::uint32_t mask);

}  // namespace asymparb
