#pragma once

#include <cstdint>
#include <vector>

namespace doctrina {

/// Relations on a finite carrier encoded as bitmasks over n*n pairs,
/// row-major: pair (x, y) sits at bit x*n + y. Used for model-level
/// reasoning about equivalence relations where a window lacks squares.
namespace relmask {

inline uint64_t bit(uint32_t x, uint32_t y, uint32_t n) {
  return 1ull << (x * n + y);
}
inline bool has(uint64_t rel, uint32_t x, uint32_t y, uint32_t n) {
  return (rel >> (x * n + y)) & 1;
}

inline uint64_t full(uint32_t n) {
  return n * n >= 64 ? ~0ull : (1ull << (n * n)) - 1;
}

inline uint64_t diagonal(uint32_t n) {
  uint64_t d = 0;
  for (uint32_t x = 0; x < n; ++x) d |= bit(x, x, n);
  return d;
}

inline bool reflexive(uint64_t rel, uint32_t n) {
  return (rel & diagonal(n)) == diagonal(n);
}

inline bool symmetric(uint64_t rel, uint32_t n) {
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y)
      if (has(rel, x, y, n) && !has(rel, y, x, n)) return false;
  return true;
}

inline bool transitive(uint64_t rel, uint32_t n) {
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y) {
      if (!has(rel, x, y, n)) continue;
      for (uint32_t z = 0; z < n; ++z)
        if (has(rel, y, z, n) && !has(rel, x, z, n)) return false;
    }
  return true;
}

inline bool is_equivalence(uint64_t rel, uint32_t n) {
  return reflexive(rel, n) && symmetric(rel, n) && transitive(rel, n);
}

/// (f x f)^{-1}(rel) for f : m -> n given pointwise.
inline uint64_t pullback(const std::vector<uint8_t>& f, uint64_t rel, uint32_t m,
                         uint32_t n) {
  uint64_t out = 0;
  for (uint32_t x = 0; x < m; ++x)
    for (uint32_t y = 0; y < m; ++y)
      if (has(rel, f[x], f[y], n)) out |= bit(x, y, m);
  return out;
}

/// Class ids (canonical: first-seen order) of an equivalence relation.
inline std::vector<uint8_t> classes(uint64_t rel, uint32_t n) {
  std::vector<uint8_t> cls(n, 0xff);
  uint8_t next = 0;
  for (uint32_t x = 0; x < n; ++x) {
    if (cls[x] != 0xff) continue;
    cls[x] = next;
    for (uint32_t y = x + 1; y < n; ++y)
      if (has(rel, x, y, n)) cls[y] = next;
    ++next;
  }
  return cls;
}

inline uint32_t class_count(uint64_t rel, uint32_t n) {
  auto c = classes(rel, n);
  uint32_t m = 0;
  for (uint8_t v : c) m = std::max<uint32_t>(m, v + 1u);
  return n == 0 ? 0 : m;
}

inline uint64_t from_classes(const std::vector<uint8_t>& cls, uint32_t n) {
  uint64_t rel = 0;
  for (uint32_t x = 0; x < n; ++x)
    for (uint32_t y = 0; y < n; ++y)
      if (cls[x] == cls[y]) rel |= bit(x, y, n);
  return rel;
}

/// All equivalence relations on an n-element carrier, as masks, in the
/// order induced by restricted-growth strings. Independent of any window.
std::vector<uint64_t> all_equivalences(uint32_t n);

} // namespace relmask
} // namespace doctrina
