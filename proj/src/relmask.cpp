#include "doctrina/relmask.hpp"

#include <algorithm>
#include <functional>

namespace doctrina {
namespace relmask {

std::vector<uint64_t> all_equivalences(uint32_t n) {
  std::vector<uint64_t> out;
  if (n == 0) {
    out.push_back(0);
    return out;
  }
  // restricted-growth strings: cls[0] = 0, cls[i] <= max(cls[0..i-1]) + 1
  std::vector<uint8_t> cls(n, 0);
  std::function<void(uint32_t, uint8_t)> rec = [&](uint32_t i, uint8_t mx) {
    if (i == n) {
      out.push_back(from_classes(cls, n));
      return;
    }
    for (uint8_t c = 0; c <= mx + 1 && c <= i; ++c) {
      cls[i] = c;
      rec(i + 1, std::max(mx, c));
    }
  };
  cls[0] = 0;
  rec(1, 0);
  return out;
}

} // namespace relmask
} // namespace doctrina
