#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "doctrina/errors.hpp"
#include "doctrina/report.hpp"

namespace doctrina {

using ObjId = uint32_t;
using ArrId = uint32_t;
constexpr uint32_t kNone = 0xffffffffu;

/// Chosen binary product: apex with its two projections.
struct ProductCell {
  ObjId apex = kNone;
  ArrId pr1 = kNone;
  ArrId pr2 = kNone;
};

/// Optional concrete finite-set semantics for a window: carrier sizes and
/// the function each arrow denotes. Builders supply it; completions derive
/// it. Checks consult it only where the window itself cannot state a
/// condition, and report lines say so.
struct SetModel {
  bool present = false;
  std::vector<uint32_t> size;               // per object
  std::vector<std::vector<uint8_t>> fn;     // per arrow, dom-indexed

  uint64_t preimage(ArrId a, uint64_t cod_mask, uint32_t dom_size) const {
    uint64_t m = 0;
    const auto& f = fn[a];
    for (uint32_t x = 0; x < dom_size; ++x)
      if ((cod_mask >> f[x]) & 1) m |= 1ull << x;
    return m;
  }
};

/// A finite fragment of a category: objects, arrows, a composition table
/// total on composable pairs, identities, and a partial chosen product
/// structure. Arrow equality is by id; nothing is quotiented here.
class CatWindow {
 public:
  struct Arrow {
    std::string name;
    ObjId dom = kNone, cod = kNone;
    uint32_t local = 0; // position inside hom(dom, cod)
  };

  // -- construction ---------------------------------------------------
  ObjId add_object(const std::string& name);
  ArrId add_arrow(const std::string& name, ObjId dom, ObjId cod);
  void set_identity(ObjId o, ArrId a);
  void add_comp(ArrId g, ArrId f, ArrId h); // g after f equals h
  void set_product(ObjId a, ObjId b, ProductCell cell);
  /// Rule-backed composition for windows too large to materialize.
  void set_comp_rule(std::function<ArrId(const CatWindow&, ArrId, ArrId)> rule);
  /// Builds hom/composition tables and the pairing index. Call once, after
  /// all data is added. Throws StructuralError on dangling references.
  void finalize();

  // -- access ---------------------------------------------------------
  size_t num_objects() const { return obj_names_.size(); }
  size_t num_arrows() const { return arrows_.size(); }
  const std::string& object_name(ObjId o) const { return obj_names_.at(o); }
  const Arrow& arrow(ArrId a) const { return arrows_.at(a); }
  ObjId dom(ArrId a) const { return arrows_.at(a).dom; }
  ObjId cod(ArrId a) const { return arrows_.at(a).cod; }
  ArrId identity(ObjId o) const { return ids_.at(o); }
  ObjId find_object(const std::string& name) const;
  ArrId find_arrow(const std::string& name) const;

  const std::vector<ArrId>& hom(ObjId a, ObjId b) const;
  const std::map<std::pair<ObjId, ObjId>, std::vector<ArrId>>& homs() const {
    return hom_;
  }

  bool composable(ArrId g, ArrId f) const { return cod(f) == dom(g); }
  /// g after f. Throws StructuralError if not composable, Error if the
  /// table has a hole.
  ArrId compose(ArrId g, ArrId f) const;
  bool materialized() const { return !blocks_.empty() || comp_list_.empty(); }

  const std::map<std::pair<ObjId, ObjId>, ProductCell>& products() const {
    return products_;
  }
  const ProductCell* product(ObjId a, ObjId b) const;

  /// Mediating arrow for the cone (f, g) into the chosen product of
  /// (cod-of-f, cod-of-g); kNone when no or multiple candidates exist.
  ArrId pairing(ObjId a, ObjId b, ArrId f, ArrId g) const;

  SetModel model; // optional semantics

  /// Per-(A,B,C) dense composition blocks; row-major g.local x f.local.
  const std::vector<ArrId>* comp_block(ObjId a, ObjId b, ObjId c) const;

  uint64_t composable_pairs() const;

 private:
  friend class WindowChecks;
  std::vector<std::string> obj_names_;
  std::vector<Arrow> arrows_;
  std::vector<ArrId> ids_;
  std::map<std::pair<ObjId, ObjId>, std::vector<ArrId>> hom_;
  std::map<std::pair<ObjId, ObjId>, ProductCell> products_;
  std::vector<std::array<ArrId, 3>> comp_list_; // staged (g, f, h)
  std::map<std::array<ObjId, 3>, std::vector<ArrId>> blocks_;
  std::function<ArrId(const CatWindow&, ArrId, ArrId)> rule_;
  // per product cell: (f << 32 | g) -> pairing arrow; kNone marks ambiguity
  std::map<std::pair<ObjId, ObjId>, std::unordered_map<uint64_t, ArrId>> pair_idx_;
  bool finalized_ = false;
};

/// Functor data between two windows.
struct FunctorData {
  std::vector<ObjId> obj; // per source object
  std::vector<ArrId> arr; // per source arrow
  bool product_preserving = true;
};

struct CheckBudget {
  uint64_t max_assoc_triples = 200'000'000; // exhaustive below, sampled above
  uint64_t max_pair_checks = 50'000'000;
  uint64_t sample_stride = 97; // deterministic sampling stride
};

/// Verifies the CatWindow invariants: id/dom/cod consistency, totality and
/// associativity of composition, unit laws, and the universal property of
/// every chosen product cell against every cone in the window.
Report check_category(const CatWindow& w, const CheckBudget& budget = {});

/// The unique h with pr1.h = f and pr2.h = g for the chosen product of
/// (A, B) where A = cod f, B = cod g. Throws ProductUndefinedError when the
/// cell is absent, Error when the mediating arrow is missing or ambiguous.
ArrId pair_arrows(const CatWindow& w, ArrId f, ArrId g);

/// Arrow selecting components of a left-associated iterated product.
/// `spec` lists 1-based projection indices; `src` is the iterated product
/// object of `factors`. tuple_map(w, {2,1}, {A,A}) is the swap on A x A.
ArrId tuple_map(const CatWindow& w, const std::vector<ObjId>& factors,
                const std::vector<int>& spec);

/// Iterated left-associated product object of `factors`; throws
/// ProductUndefinedError when a needed cell is missing.
ObjId iterated_product(const CatWindow& w, const std::vector<ObjId>& factors);
/// j-th (1-based) projection from the iterated product of `factors`.
ArrId iterated_projection(const CatWindow& w, const std::vector<ObjId>& factors,
                          int j);

struct PullbackSquare {
  ObjId apex;
  ArrId p1, p2; // p1 into dom(f), p2 into dom(g)
};

/// All strong (limit) or weak (weakly terminal cone) pullback squares of
/// the cospan f : A -> C <- B : g present in the window.
std::vector<PullbackSquare> find_pullbacks(const CatWindow& w, ArrId f, ArrId g,
                                           bool weak);

/// Verifies FunctorData: dom/cod, identities, composition, and (if flagged)
/// that images of chosen product cells satisfy the universal property in
/// the codomain window.
Report check_functor(const FunctorData& F, const CatWindow& C, const CatWindow& D,
                     const CheckBudget& budget = {});

} // namespace doctrina
