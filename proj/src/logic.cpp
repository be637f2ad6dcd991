#include "doctrina/logic.hpp"

#include <algorithm>
#include <bit>

#include "doctrina/relmask.hpp"

namespace doctrina {

namespace {

// number of g with through . g = f, counted up to `cap`
int factor_count(const CatWindow& w, ArrId through, ArrId f, int cap) {
  int n = 0;
  for (ArrId g : w.hom(w.dom(f), w.dom(through))) {
    if (w.compose(through, g) == f && ++n >= cap) return n;
  }
  return n;
}

} // namespace

Rel Rel::from_elem(const Doctrine& P, ObjId A, Elem e) {
  Rel r;
  r.obj = A;
  r.elem = e;
  r.window = true;
  if (P.modeled() && P.has_square(A)) {
    r.mask = P.fiber(P.square(A)).mask(e);
    r.model = true;
  }
  return r;
}

Rel Rel::from_mask(const Doctrine& P, ObjId A, uint64_t m) {
  Rel r;
  r.obj = A;
  r.mask = m;
  r.model = true;
  if (!P.modeled()) throw StructuralError("mask relation on an unmodeled doctrine");
  if (P.has_square(A)) {
    Elem e = P.fiber(P.square(A)).find_mask(m);
    if (e != kNoElem) {
      r.elem = e;
      r.window = true;
    }
  }
  return r;
}

EqRelWitness is_equivalence_relation(const Doctrine& P, const Rel& rho,
                                     const LogicOpts& opts) {
  EqRelWitness out;
  out.rel = rho;
  const CatWindow& w = P.base;
  ObjId A = rho.obj;
  uint32_t n = P.modeled() ? w.model.size[A] : 0;
  bool model_ok = rho.model && opts.use_model && P.modeled();
  bool win = rho.window;
  Basis used_window = Basis::Window, used_model = Basis::Model;
  int window_clauses = 0, model_clauses = 0;

  // reflexivity
  if (win && P.delta[A] != kNoElem) {
    const InfSemilattice& fs = P.fiber(P.square(A));
    out.reflexive = fs.leq(P.delta[A], rho.elem) ? Status::Pass : Status::Fail;
    if (out.reflexive == Status::Fail) out.witness = "delta not below the relation";
    ++window_clauses;
  } else if (model_ok) {
    out.reflexive = relmask::reflexive(rho.mask, n) ? Status::Pass : Status::Fail;
    if (out.reflexive == Status::Fail) out.witness = "a pair (x,x) is missing";
    ++model_clauses;
  }

  // symmetry
  bool sym_done = false;
  if (win) {
    try {
      ArrId swap = tuple_map(w, {A, A}, {2, 1});
      const InfSemilattice& fs = P.fiber(P.square(A));
      out.symmetric = fs.leq(rho.elem, P.rx(swap, rho.elem)) ? Status::Pass : Status::Fail;
      if (out.symmetric == Status::Fail && out.witness.empty())
        out.witness = "relation not below its swap";
      sym_done = true;
      ++window_clauses;
    } catch (const ProductUndefinedError&) {
    }
  }
  if (!sym_done && model_ok) {
    out.symmetric = relmask::symmetric(rho.mask, n) ? Status::Pass : Status::Fail;
    if (out.symmetric == Status::Fail && out.witness.empty())
      out.witness = "an unmatched asymmetric pair exists";
    ++model_clauses;
  }

  // transitivity
  bool tr_done = false;
  if (win) {
    try {
      ObjId cube = iterated_product(w, {A, A, A});
      ArrId t12 = tuple_map(w, {A, A, A}, {1, 2});
      ArrId t23 = tuple_map(w, {A, A, A}, {2, 3});
      ArrId t13 = tuple_map(w, {A, A, A}, {1, 3});
      const InfSemilattice& fc = P.fiber(cube);
      Elem lhs = fc.meet(P.rx(t12, rho.elem), P.rx(t23, rho.elem));
      out.transitive = fc.leq(lhs, P.rx(t13, rho.elem)) ? Status::Pass : Status::Fail;
      if (out.transitive == Status::Fail && out.witness.empty())
        out.witness = "composable pairs escape the relation";
      tr_done = true;
      ++window_clauses;
    } catch (const ProductUndefinedError&) {
    }
  }
  if (!tr_done && model_ok) {
    out.transitive = relmask::transitive(rho.mask, n) ? Status::Pass : Status::Fail;
    if (out.transitive == Status::Fail && out.witness.empty())
      out.witness = "a composable pair escapes the relation";
    ++model_clauses;
  }

  (void)used_window;
  (void)used_model;
  out.basis = model_clauses == 0 ? Basis::Window
              : window_clauses == 0 ? Basis::Model
                                    : Basis::Mixed;
  return out;
}

Rel kernel(const Doctrine& P, ArrId f, const LogicOpts& opts) {
  const CatWindow& w = P.base;
  ObjId A = w.dom(f), B = w.cod(f);
  Rel r;
  r.obj = A;
  if (P.has_square(A) && P.has_square(B) && P.delta[B] != kNoElem) {
    ArrId ff = P.times_square(f);
    if (ff != kNone) {
      r.elem = P.rx(ff, P.delta[B]);
      r.window = true;
    }
  }
  if (P.modeled() && opts.use_model) {
    uint32_t m = w.model.size[A], n = w.model.size[B];
    r.mask = relmask::pullback(w.model.fn[f], relmask::diagonal(n), m, n);
    r.model = true;
    if (r.window) {
      // the two views must agree
      if (P.fiber(P.square(A)).mask(r.elem) != r.mask)
        throw EngineInvariantError("kernel views disagree at " + w.arrow(f).name);
    }
  }
  if (!r.window && !r.model)
    throw ProductUndefinedError("kernel of " + w.arrow(f).name +
                                " not stateable in the window");
  return r;
}

bool below_kernel(const Doctrine& P, const Rel& rho, ArrId f, const LogicOpts& opts) {
  Rel ker = kernel(P, f, opts);
  if (rho.window && ker.window)
    return P.fiber(P.square(rho.obj)).leq(rho.elem, ker.elem);
  if (rho.model && ker.model) return (rho.mask & ~ker.mask) == 0;
  throw ProductUndefinedError("relation and kernel have no common view");
}

bool is_quotient(const Doctrine& P, const Rel& rho, ArrId q, const LogicOpts& opts) {
  const CatWindow& w = P.base;
  if (w.dom(q) != rho.obj) return false;
  if (!below_kernel(P, rho, q, opts)) return false;
  ObjId A = rho.obj, C = w.cod(q);
  for (ObjId Z = 0; Z < w.num_objects(); ++Z) {
    for (ArrId g : w.hom(A, Z)) {
      if (!below_kernel(P, rho, g, opts)) continue;
      int med = 0;
      for (ArrId h : w.hom(C, Z)) {
        if (w.compose(h, q) == g && ++med >= 2) break;
      }
      if (med != 1) return false;
    }
  }
  return true;
}

bool is_effective(const Doctrine& P, const Rel& rho, ArrId q, const LogicOpts& opts) {
  Rel ker = kernel(P, q, opts);
  if (rho.window && ker.window) return rho.elem == ker.elem;
  if (rho.model && ker.model) return rho.mask == ker.mask;
  throw ProductUndefinedError("relation and kernel have no common view");
}

std::vector<QuotientWitness> find_quotients(const Doctrine& P, const Rel& rho,
                                            const LogicOpts& opts) {
  const CatWindow& w = P.base;
  std::vector<QuotientWitness> out;
  for (ObjId C = 0; C < w.num_objects(); ++C) {
    for (ArrId q : w.hom(rho.obj, C)) {
      if (!is_quotient(P, rho, q, opts)) continue;
      QuotientWitness wit;
      wit.q = q;
      wit.effective = is_effective(P, rho, q, opts);
      wit.basis = rho.window ? Basis::Window : Basis::Model;
      // record a few verified factorizations
      for (ObjId Z = 0; Z < w.num_objects() && wit.factorizations.size() < 4; ++Z)
        for (ArrId g : w.hom(rho.obj, Z)) {
          if (!below_kernel(P, rho, g, opts)) continue;
          for (ArrId h : w.hom(C, Z))
            if (w.compose(h, q) == g) {
              wit.factorizations.emplace_back(g, h);
              break;
            }
          break;
        }
      out.push_back(std::move(wit));
    }
  }
  return out;
}

namespace {

// relation on P' obtained by reindexing rho along a leg a : P' -> A,
// i.e. P_{a x a}(rho)
std::optional<Rel> pull_relation(const Doctrine& P, const Rel& rho, ObjId Pp,
                                 ArrId leg, const LogicOpts& opts) {
  const CatWindow& w = P.base;
  if (rho.window && P.has_square(Pp) && P.has_square(rho.obj)) {
    const ProductCell* cp = w.product(Pp, Pp);
    ArrId u = w.compose(leg, cp->pr1);
    ArrId v = w.compose(leg, cp->pr2);
    ArrId t = w.pairing(rho.obj, rho.obj, u, v);
    if (t != kNone) return Rel::from_elem(P, Pp, P.rx(t, rho.elem));
  }
  if (rho.model && P.modeled() && opts.use_model) {
    uint32_t np = w.model.size[Pp];
    const auto& fl = w.model.fn[leg];
    uint64_t m = 0;
    uint32_t na = w.model.size[rho.obj];
    for (uint32_t x = 0; x < np; ++x)
      for (uint32_t y = 0; y < np; ++y)
        if (relmask::has(rho.mask, fl[x], fl[y], na)) m |= relmask::bit(x, y, np);
    return Rel::from_mask(P, Pp, m);
  }
  return std::nullopt;
}

} // namespace

Report is_stable_quotient(const Doctrine& P, const Rel& rho, ArrId q,
                          const LogicOpts& opts) {
  Report rep("stable quotient");
  const CatWindow& w = P.base;
  uint64_t squares = 0, unstateable = 0;
  std::string wit;
  for (ObjId Z = 0; Z < w.num_objects() && wit.empty(); ++Z) {
    for (ArrId f : w.hom(Z, w.cod(q))) {
      std::vector<PullbackSquare> pbs = find_pullbacks(w, f, q, false);
      for (const auto& sq : pbs) {
        // p1 : P' -> Z is the pulled-back arrow, p2 : P' -> A the leg
        // carrying the relation
        auto pulled = pull_relation(P, rho, sq.apex, sq.p2, opts);
        if (!pulled) {
          ++unstateable;
          continue;
        }
        ++squares;
        if (!is_quotient(P, *pulled, sq.p1, opts)) {
          wit = "pullback of " + w.arrow(q).name + " along " + w.arrow(f).name +
                " at apex " + w.object_name(sq.apex) + " is not a quotient";
          break;
        }
      }
      if (!wit.empty()) break;
    }
  }
  auto& l = rep.line("quot.stable", "every in-window pullback of the quotient is a quotient",
                     wit.empty() ? (squares ? Status::Pass : Status::Vacuous) : Status::Fail,
                     wit, squares);
  l.unstateable = unstateable;
  if (!squares && wit.empty()) l.note = "no in-window pullback squares";
  return rep;
}

SubLattice descent_data(const Doctrine& P, const Rel& rho, const LogicOpts& opts) {
  const CatWindow& w = P.base;
  ObjId A = rho.obj;
  if (rho.window && P.has_square(A)) {
    const ProductCell* c = w.product(A, A);
    const InfSemilattice& fs = P.fiber(c->apex);
    const InfSemilattice& fa = P.fiber(A);
    return sub_infsl(fa, [&](Elem a) {
      return fs.leq(fs.meet(P.rx(c->pr1, a), rho.elem), P.rx(c->pr2, a));
    });
  }
  if (rho.model && P.modeled() && opts.use_model) {
    const InfSemilattice& fa = P.fiber(A);
    uint32_t n = w.model.size[A];
    return sub_infsl(fa, [&](Elem a) {
      uint64_t m = fa.mask(a);
      for (uint32_t x = 0; x < n; ++x)
        for (uint32_t y = 0; y < n; ++y)
          if (relmask::has(rho.mask, x, y, n) && ((m >> x) & 1) && !((m >> y) & 1))
            return false;
      return true;
    });
  }
  throw ProductUndefinedError("descent data not stateable");
}

bool descends(const Doctrine& P, const Rel& rho, Elem alpha, const LogicOpts& opts) {
  const CatWindow& w = P.base;
  ObjId A = rho.obj;
  if (rho.window && P.has_square(A)) {
    const ProductCell* c = w.product(A, A);
    const InfSemilattice& fs = P.fiber(c->apex);
    return fs.leq(fs.meet(P.rx(c->pr1, alpha), rho.elem), P.rx(c->pr2, alpha));
  }
  if (rho.model && P.modeled() && opts.use_model) {
    uint64_t m = P.fiber(A).mask(alpha);
    uint32_t n = w.model.size[A];
    for (uint32_t x = 0; x < n; ++x)
      for (uint32_t y = 0; y < n; ++y)
        if (relmask::has(rho.mask, x, y, n) && ((m >> x) & 1) && !((m >> y) & 1))
          return false;
    return true;
  }
  throw ProductUndefinedError("descent membership not stateable");
}

Report is_descent(const Doctrine& P, ArrId f, const LogicOpts& opts) {
  Report rep("descent arrow");
  const CatWindow& w = P.base;
  Rel chi = kernel(P, f, opts);
  ObjId A = w.dom(f), B = w.cod(f);
  const InfSemilattice& fb = P.fiber(B);
  const InfSemilattice& fa = P.fiber(A);
  std::string wit;
  uint64_t checked = 0;
  for (Elem b = 0; b < fb.size() && wit.empty(); ++b) {
    ++checked;
    if (!descends(P, chi, P.rx(f, b), opts))
      wit = "image of " + fb.label(b) + " leaves the descent data of the kernel";
  }
  rep.line("descent.into", "reindexing lands in the kernel's descent data",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  wit.clear();
  checked = 0;
  for (Elem b1 = 0; b1 < fb.size() && wit.empty(); ++b1)
    for (Elem b2 = 0; b2 < fb.size(); ++b2) {
      ++checked;
      if (fa.leq(P.rx(f, b1), P.rx(f, b2)) && !fb.leq(b1, b2)) {
        wit = "order not reflected at (" + fb.label(b1) + ", " + fb.label(b2) + ")";
        break;
      }
    }
  rep.line("descent.full", "reindexing reflects order into the descent data",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  return rep;
}

Report is_effective_descent(const Doctrine& P, ArrId f, const LogicOpts& opts) {
  Report rep = is_descent(P, f, opts);
  const CatWindow& w = P.base;
  Rel chi = kernel(P, f, opts);
  const InfSemilattice& fb = P.fiber(w.cod(f));
  const InfSemilattice& fa = P.fiber(w.dom(f));
  std::string wit;
  uint64_t checked = 0;
  for (Elem a = 0; a < fa.size() && wit.empty(); ++a) {
    if (!descends(P, chi, a, opts)) continue;
    ++checked;
    bool hit = false;
    for (Elem b = 0; b < fb.size(); ++b)
      if (P.rx(f, b) == a) { hit = true; break; }
    if (!hit) wit = "descent datum " + fa.label(a) + " has no preimage";
  }
  rep.line("descent.onto", "every descent datum of the kernel is an image",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  return rep;
}

bool is_comprehension(const Doctrine& P, ObjId A, Elem alpha, ArrId c,
                      ComprehensionMode mode) {
  const CatWindow& w = P.base;
  if (w.cod(c) != A) return false;
  const InfSemilattice& fx = P.fiber(w.dom(c));
  if (P.rx(c, alpha) != fx.top()) return false;
  for (ObjId Z = 0; Z < w.num_objects(); ++Z) {
    for (ArrId f : w.hom(Z, A)) {
      if (P.rx(f, alpha) != P.fiber(Z).top()) continue;
      int med = factor_count(w, c, f, 2);
      if (mode == ComprehensionMode::Strong ? med != 1 : med < 1) return false;
    }
  }
  return true;
}

std::vector<ArrId> find_comprehension(const Doctrine& P, ObjId A, Elem alpha,
                                      ComprehensionMode mode, const LogicOpts& opts) {
  (void)opts;
  const CatWindow& w = P.base;
  std::vector<ArrId> out;
  for (ObjId X = 0; X < w.num_objects(); ++X)
    for (ArrId c : w.hom(X, A))
      if (is_comprehension(P, A, alpha, c, mode)) out.push_back(c);
  return out;
}

std::optional<ArrId> find_one_comprehension(const Doctrine& P, ObjId A, Elem alpha,
                                            ComprehensionMode mode,
                                            const LogicOpts& opts) {
  const CatWindow& w = P.base;
  if (P.modeled() && opts.use_model) {
    // candidates screened by the model: monic onto exactly alpha
    uint64_t am = P.fiber(A).mask(alpha);
    for (ObjId X = 0; X < w.num_objects(); ++X) {
      if (w.model.size[X] != uint32_t(std::popcount(am))) continue;
      for (ArrId c : w.hom(X, A)) {
        const auto& fn = w.model.fn[c];
        uint64_t im = 0;
        bool inj = true;
        for (uint8_t v : fn) {
          if ((im >> v) & 1) inj = false;
          im |= 1ull << v;
        }
        if (!inj || im != am) continue;
        if (is_comprehension(P, A, alpha, c, mode)) return c;
      }
    }
    return std::nullopt;
  }
  for (ObjId X = 0; X < w.num_objects(); ++X)
    for (ArrId c : w.hom(X, A))
      if (is_comprehension(P, A, alpha, c, mode)) return c;
  return std::nullopt;
}

Report has_full_comprehensions(const Doctrine& P, const LogicOpts& opts) {
  Report rep("comprehensions");
  const CatWindow& w = P.base;
  std::string wit;
  uint64_t checked = 0;
  std::vector<std::vector<ArrId>> reps(w.num_objects());
  for (ObjId A = 0; A < w.num_objects() && wit.empty(); ++A) {
    const InfSemilattice& fa = P.fiber(A);
    reps[A].assign(fa.size(), kNone);
    for (Elem a = 0; a < fa.size(); ++a) {
      ++checked;
      auto c = find_one_comprehension(P, A, a, ComprehensionMode::Strong, opts);
      if (!c) {
        wit = "no comprehension for " + fa.label(a) + " over " + w.object_name(A);
        break;
      }
      reps[A][a] = *c;
    }
  }
  rep.line("compr.exist", "every fiber element has a comprehension",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  if (!wit.empty()) return rep;

  wit.clear();
  checked = 0;
  for (ObjId A = 0; A < w.num_objects() && wit.empty(); ++A) {
    const InfSemilattice& fa = P.fiber(A);
    for (Elem a = 0; a < fa.size() && wit.empty(); ++a)
      for (Elem b = 0; b < fa.size(); ++b) {
        ++checked;
        bool factors = factor_count(w, reps[A][b], reps[A][a], 1) >= 1;
        if (factors && !fa.leq(a, b)) {
          wit = "factorization without order at (" + fa.label(a) + ", " + fa.label(b) +
                ") over " + w.object_name(A);
          break;
        }
      }
  }
  rep.line("compr.full", "factorization between comprehensions reflects order",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  return rep;
}

Report has_comprehensive_diagonals(const Doctrine& P, const LogicOpts& opts) {
  (void)opts;
  Report rep("comprehensive diagonals");
  const CatWindow& w = P.base;
  std::string wit;
  uint64_t checked = 0, unstateable = 0;
  for (ObjId A = 0; A < w.num_objects() && wit.empty(); ++A) {
    if (!P.has_square(A) || P.delta[A] == kNoElem) { ++unstateable; continue; }
    ArrId diag = w.pairing(A, A, w.identity(A), w.identity(A));
    if (diag == kNone) { ++unstateable; continue; }
    ++checked;
    if (!is_comprehension(P, P.square(A), P.delta[A], diag, ComprehensionMode::Strong))
      wit = "diagonal of " + w.object_name(A) + " is not a comprehension of delta";
  }
  {
    auto& l = rep.line("diag.compr", "every diagonal is a comprehension of delta",
                       wit.empty() ? (checked ? Status::Pass : Status::Vacuous)
                                   : Status::Fail,
                       wit, checked);
    l.unstateable = unstateable;
  }

  // sanity: diagonal comprehends something iff it comprehends delta
  wit.clear();
  checked = 0;
  for (ObjId A = 0; A < w.num_objects() && wit.empty(); ++A) {
    if (!P.has_square(A) || P.delta[A] == kNoElem) continue;
    ArrId diag = w.pairing(A, A, w.identity(A), w.identity(A));
    if (diag == kNone) continue;
    ObjId sq = P.square(A);
    bool of_delta =
        is_comprehension(P, sq, P.delta[A], diag, ComprehensionMode::Strong);
    bool of_any = of_delta;
    const InfSemilattice& fs = P.fiber(sq);
    for (Elem b = 0; b < fs.size() && !of_any; ++b)
      of_any = is_comprehension(P, sq, b, diag, ComprehensionMode::Strong);
    ++checked;
    if (of_any != of_delta)
      wit = "diagonal of " + w.object_name(A) +
            " comprehends some element but not delta";
  }
  rep.line("diag.iff", "a diagonal comprehension is necessarily one of delta",
           wit.empty() ? (checked ? Status::Pass : Status::Vacuous) : Status::Fail,
           wit, checked);
  return rep;
}

} // namespace doctrina
