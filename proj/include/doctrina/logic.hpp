#pragma once

#include <optional>
#include <vector>

#include "doctrina/doctrine.hpp"

namespace doctrina {

/// A fiber element of P(A x A), viewed through the window (an element of
/// the square's fiber) and/or the model (a relation bitmask). At least one
/// view is always present.
struct Rel {
  ObjId obj = kNone;
  Elem elem = kNoElem; // fiber element of square(obj), when stateable
  uint64_t mask = 0;   // model relation mask, when modeled
  bool window = false;
  bool model = false;

  static Rel from_elem(const Doctrine& P, ObjId A, Elem e);
  static Rel from_mask(const Doctrine& P, ObjId A, uint64_t m);
};

struct EqRelWitness {
  Rel rel;
  Status reflexive = Status::Unstateable;
  Status symmetric = Status::Unstateable;
  Status transitive = Status::Unstateable;
  Basis basis = Basis::Window;
  std::string witness;

  bool holds() const {
    return reflexive != Status::Fail && symmetric != Status::Fail &&
           transitive != Status::Fail;
  }
};

struct LogicOpts {
  bool use_model = true;       // decide by model where the window cannot state
  uint64_t search_budget = 50'000'000; // elementary ops allowed in UP sweeps
};

/// Reflexivity, symmetry and transitivity of rho relative to delta and
/// reindexing; clauses the window cannot state fall back to the model when
/// allowed, and are reported unstateable otherwise.
EqRelWitness is_equivalence_relation(const Doctrine& P, const Rel& rho,
                                     const LogicOpts& opts = {});

/// P_{f x f}(delta_B) as a Rel on dom(f); window view filled when the
/// squares and the pairing are present, model view when modeled.
Rel kernel(const Doctrine& P, ArrId f, const LogicOpts& opts = {});

/// rho <= kernel(f); decided window-first.
bool below_kernel(const Doctrine& P, const Rel& rho, ArrId f,
                  const LogicOpts& opts = {});

struct QuotientWitness {
  ArrId q = kNone;
  bool effective = false; // rho equals the kernel of q
  Basis basis = Basis::Window;
  // sample of verified factorizations (g, unique h with h.q = g)
  std::vector<std::pair<ArrId, ArrId>> factorizations;
};

/// Every arrow out of rho's object that is a quotient of rho: compatible
/// and universal among compatible arrows. Exhaustive over the window.
std::vector<QuotientWitness> find_quotients(const Doctrine& P, const Rel& rho,
                                            const LogicOpts& opts = {});

/// Decides the quotient property for one candidate arrow.
bool is_quotient(const Doctrine& P, const Rel& rho, ArrId q,
                 const LogicOpts& opts = {});

bool is_effective(const Doctrine& P, const Rel& rho, ArrId q,
                  const LogicOpts& opts = {});

/// In every in-window pullback of q along any arrow, the pulled-back arrow
/// is a quotient of the pulled-back relation. Vacuous when no squares
/// exist, and says so.
Report is_stable_quotient(const Doctrine& P, const Rel& rho, ArrId q,
                          const LogicOpts& opts = {});

/// The sub-semilattice of P(A) of predicates compatible with rho.
SubLattice descent_data(const Doctrine& P, const Rel& rho,
                        const LogicOpts& opts = {});

/// Membership of a single fiber element in the descent data of rho.
bool descends(const Doctrine& P, const Rel& rho, Elem alpha,
              const LogicOpts& opts = {});

Report is_descent(const Doctrine& P, ArrId f, const LogicOpts& opts = {});
Report is_effective_descent(const Doctrine& P, ArrId f, const LogicOpts& opts = {});

enum class ComprehensionMode { Strong, Weak };

/// All arrows realizing alpha as a comprehension (unique factorization) or
/// weak comprehension (existence only).
std::vector<ArrId> find_comprehension(const Doctrine& P, ObjId A, Elem alpha,
                                      ComprehensionMode mode,
                                      const LogicOpts& opts = {});

/// One comprehension of alpha if any exists; model-screened candidate order
/// on modeled doctrines, each candidate verified against the window.
std::optional<ArrId> find_one_comprehension(const Doctrine& P, ObjId A, Elem alpha,
                                            ComprehensionMode mode,
                                            const LogicOpts& opts = {});

/// Checks one candidate: is c a (weak) comprehension of alpha?
bool is_comprehension(const Doctrine& P, ObjId A, Elem alpha, ArrId c,
                      ComprehensionMode mode);

/// Every fiber element has a comprehension, and factorization order
/// reflects predicate order.
Report has_full_comprehensions(const Doctrine& P, const LogicOpts& opts = {});

/// Every in-window diagonal is a comprehension; also records the
/// equivalence "diagonal is a comprehension iff it is one of delta".
Report has_comprehensive_diagonals(const Doctrine& P, const LogicOpts& opts = {});

} // namespace doctrina
