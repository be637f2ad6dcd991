#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "doctrina/errors.hpp"
#include "doctrina/report.hpp"

namespace doctrina {

using Elem = uint16_t;
constexpr Elem kNoElem = 0xffff;

/// A finite inf-semilattice: a poset with a top element and binary meets.
/// Carriers are small (fibers of doctrine windows); capped at 64 elements
/// so the order fits in one bitmask row per element.
class InfSemilattice {
 public:
  static constexpr size_t kMaxElems = 64;

  InfSemilattice() = default;

  /// Build from an explicit carrier and order; computes the meet table.
  /// `leq_pairs` lists (a, b) with a <= b; reflexivity and transitivity
  /// are closed over automatically. Throws StructuralError on bad ids,
  /// Error when the data is not a semilattice (no top / missing meet).
  static InfSemilattice make(std::vector<std::string> labels,
                             const std::vector<std::pair<Elem, Elem>>& leq_pairs);

  /// The powerset of `atoms` atoms ordered by inclusion; element e is the
  /// subset with bitmask e. Labels are "{i,j,...}".
  static InfSemilattice powerset(unsigned atoms);

  /// Raw constructor that skips all validation; for tests and fault
  /// injection. check_infsl is the judge of what comes out.
  static InfSemilattice make_unchecked(std::vector<std::string> labels,
                                       std::vector<uint64_t> leq_rows,
                                       std::vector<Elem> meet_table, Elem top);

  size_t size() const { return labels_.size(); }
  Elem top() const { return top_; }
  bool leq(Elem a, Elem b) const { return (row(a) >> b) & 1u; }
  Elem meet(Elem a, Elem b) const;

  const std::string& label(Elem e) const { return labels_.at(e); }
  Elem find_label(const std::string& l) const; // kNoElem if absent

  /// Optional payload tying an element to a model mask (subset doctrines).
  void set_mask(Elem e, uint64_t m) { masks_.at(e) = m; }
  uint64_t mask(Elem e) const { return masks_.at(e); }
  Elem find_mask(uint64_t m) const; // kNoElem if absent

  void check_elem(Elem e) const {
    if (e >= size()) throw StructuralError("element id out of range");
  }

 private:
  uint64_t row(Elem a) const { return leq_rows_.at(a); }

  std::vector<std::string> labels_;
  std::vector<uint64_t> leq_rows_;  // bit b of row a set iff a <= b
  std::vector<Elem> meet_;          // size() x size() table
  std::vector<uint64_t> masks_;     // model payload, 0 when unused
  Elem top_ = 0;

  friend Report check_infsl(const InfSemilattice&);
};

/// A meet- and top-preserving monotone map between two semilattices.
struct InfSLHom {
  const InfSemilattice* src = nullptr;
  const InfSemilattice* dst = nullptr;
  std::vector<Elem> map; // indexed by src element

  Elem operator()(Elem e) const { return map.at(e); }
};

Elem meet(const InfSemilattice& l, Elem a, Elem b);

/// Verifies the partial-order laws, the top, and existence of all binary
/// meets against the stored tables. Structural problems (bad ids, ragged
/// tables) are reported distinctly from law failures.
Report check_infsl(const InfSemilattice& l);

/// Verifies monotonicity, preservation of top and of all binary meets.
Report check_hom(const InfSLHom& h);

/// Result of restricting a semilattice to a sub-carrier.
struct SubLattice {
  InfSemilattice sub;
  std::vector<Elem> incl;  // new element -> old element (the inclusion)
  std::vector<Elem> index; // old element -> new element, kNoElem if dropped
};

/// Restricts `l` to the elements satisfying `keep`. The carrier must
/// contain top and be closed under meet; a violation throws Error naming
/// the offending pair.
SubLattice sub_infsl(const InfSemilattice& l,
                     const std::function<bool(Elem)>& keep);

} // namespace doctrina
