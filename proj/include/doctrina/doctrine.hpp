#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "doctrina/fincat.hpp"
#include "doctrina/infsl.hpp"
#include "doctrina/report.hpp"

namespace doctrina {

/// An indexed inf-semilattice on a category window: a fiber per object and
/// a meet-preserving reindexing hom per arrow, contravariantly functorial,
/// optionally with the elementary structure delta.
struct Doctrine {
  std::string name;
  CatWindow base;
  std::vector<InfSemilattice> fibers;      // per object
  std::vector<std::vector<Elem>> reindex;  // per arrow f: P(cod f) -> P(dom f)
  std::vector<Elem> delta;                 // per object, kNoElem when undefined

  const InfSemilattice& fiber(ObjId o) const { return fibers.at(o); }
  /// P_f(e) for e in the fiber of cod(f).
  Elem rx(ArrId f, Elem e) const { return reindex.at(f).at(e); }

  bool has_square(ObjId a) const { return base.product(a, a) != nullptr; }
  ObjId square(ObjId a) const;            // throws ProductUndefinedError
  Elem delta_of(ObjId a) const;           // throws DeltaMissingError
  ArrId diagonal(ObjId a) const;          // <id, id> : A -> A x A
  /// <f o pr1, f o pr2> : A x A -> B x B; kNone when not in the window.
  ArrId times_square(ArrId f) const;

  bool modeled() const { return base.model.present; }
  /// Model mask of a fiber element (modeled doctrines only).
  uint64_t elem_mask(ObjId o, Elem e) const { return fibers.at(o).mask(e); }
};

using DoctrinePtr = std::shared_ptr<const Doctrine>;

/// A 1-arrow (F, b) of elementary doctrines.
struct DoctrineArrow {
  DoctrinePtr src, dst;
  FunctorData F;
  std::vector<std::vector<Elem>> b; // per src object A: P(A) -> R(F A)
};

/// A 2-arrow: a natural transformation between the functors of two
/// parallel 1-arrows, lax over the fibers.
struct Doctrine2Cell {
  std::vector<ArrId> component; // per src object A: F(A) -> G(A) in dst
};

/// Functoriality of reindexing plus fiber/hom law checks. When a model is
/// attached, fiber masks, preimage reindexing and diagonal deltas are
/// cross-checked against it.
Report check_doctrine(const Doctrine& P, const CheckBudget& budget = {});

/// Left-adjoint value along the diagonal of A: P_pr1(a) meet delta_A.
Elem exists_along_diagonal(const Doctrine& P, ObjId A, Elem a);

/// Left-adjoint value along e = <pr1,pr2,pr2> : X x A -> X x A x A for
/// a in P(X x A); returns an element of P(X x A x A).
Elem exists_along_e(const Doctrine& P, ObjId X, ObjId A, Elem a);

/// a1 boxtimes a2 in P(X1 x X2 x Y1 x Y2) for a1 in P(X1 x Y1),
/// a2 in P(X2 x Y2).
Elem boxtimes(const Doctrine& P, ObjId X1, ObjId Y1, Elem a1, ObjId X2, ObjId Y2,
              Elem a2);

/// Both adjunction conditions as finite biconditionals, the derived facts
/// (top below reindexed delta, delta below every kernel of delta), the
/// boxtimes law for delta, and an informational Frobenius line.
Report check_elementary(const Doctrine& P);

/// All DoctrineArrow invariants: functor laws, fiber homs, naturality and
/// the delta-compatibility equation.
Report check_one_arrow(const DoctrineArrow& arr, const CheckBudget& budget = {});

/// Whether every condition of check_one_arrow was stateable in the windows.
bool one_arrow_fully_stateable(const DoctrineArrow& arr);

Report check_two_arrow(const DoctrineArrow& f, const DoctrineArrow& g,
                       const Doctrine2Cell& cell);

DoctrineArrow identity_arrow(DoctrinePtr P);
DoctrineArrow compose_arrows(const DoctrineArrow& inner, const DoctrineArrow& outer);

struct EnumBudget {
  uint64_t max_nodes = 2'000'000;
};

struct OneArrowEnum {
  std::vector<DoctrineArrow> arrows;
  bool exhaustive = true;
};

/// All 1-arrows from P to R whose conditions are fully stateable, up to
/// the budget; partial results are flagged non-exhaustive.
OneArrowEnum enumerate_one_arrows(DoctrinePtr P, DoctrinePtr R, const EnumBudget& budget);

std::vector<Doctrine2Cell> enumerate_two_cells(const DoctrineArrow& f,
                                               const DoctrineArrow& g,
                                               const EnumBudget& budget,
                                               bool* exhaustive = nullptr);

} // namespace doctrina
