#include "doctrina/doctrine.hpp"

#include <algorithm>

namespace doctrina {

namespace {

using HomEntry = std::pair<const std::pair<ObjId, ObjId>, std::vector<ArrId>>;

std::vector<std::vector<const HomEntry*>> homs_from(const CatWindow& w) {
  std::vector<std::vector<const HomEntry*>> out(w.num_objects());
  for (const auto& e : w.homs()) out[e.first.first].push_back(&e);
  return out;
}

} // namespace

ObjId Doctrine::square(ObjId a) const {
  const ProductCell* c = base.product(a, a);
  if (!c)
    throw ProductUndefinedError("product-undefined: no square for " +
                                base.object_name(a));
  return c->apex;
}

Elem Doctrine::delta_of(ObjId a) const {
  Elem d = delta.at(a);
  if (d == kNoElem)
    throw DeltaMissingError("delta missing at " + base.object_name(a));
  return d;
}

ArrId Doctrine::diagonal(ObjId a) const {
  ArrId id = base.identity(a);
  ArrId h = base.pairing(a, a, id, id);
  if (h == kNone)
    throw ProductUndefinedError("diagonal of " + base.object_name(a) +
                                " not in window");
  return h;
}

ArrId Doctrine::times_square(ArrId f) const {
  ObjId a = base.dom(f), b = base.cod(f);
  const ProductCell* ca = base.product(a, a);
  const ProductCell* cb = base.product(b, b);
  if (!ca || !cb) return kNone;
  ArrId u = base.compose(f, ca->pr1);
  ArrId v = base.compose(f, ca->pr2);
  return base.pairing(b, b, u, v);
}

// ---------------------------------------------------------------------------

Report check_doctrine(const Doctrine& P, const CheckBudget& budget) {
  Report rep("doctrine");
  const CatWindow& w = P.base;
  if (P.fibers.size() != w.num_objects() || P.reindex.size() != w.num_arrows() ||
      P.delta.size() != w.num_objects()) {
    rep.line("doc.structure", "fibers/reindex/delta cover the window", Status::Fail,
             "ragged doctrine data");
    return rep;
  }
  std::string wit;
  for (ArrId f = 0; f < w.num_arrows() && wit.empty(); ++f)
    if (P.reindex[f].size() != P.fiber(w.cod(f)).size())
      wit = "reindex along " + w.arrow(f).name + " has wrong arity";
  rep.line("doc.structure", "fibers/reindex/delta cover the window",
           wit.empty() ? Status::Pass : Status::Fail, wit,
           w.num_objects() + w.num_arrows());
  if (!wit.empty()) return rep;

  // each fiber is a semilattice, each reindex map a hom
  uint64_t checked = 0;
  for (ObjId o = 0; o < w.num_objects() && wit.empty(); ++o) {
    Report r = check_infsl(P.fiber(o));
    ++checked;
    if (!r.passed()) wit = "fiber of " + w.object_name(o) + " is not a semilattice";
  }
  rep.line("doc.fibers", "every fiber is an inf-semilattice",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);

  wit.clear();
  checked = 0;
  for (ArrId f = 0; f < w.num_arrows() && wit.empty(); ++f) {
    InfSLHom h{&P.fiber(w.cod(f)), &P.fiber(w.dom(f)), P.reindex[f]};
    Report r = check_hom(h);
    ++checked;
    if (!r.passed())
      wit = "reindex along " + w.arrow(f).name + " is not a semilattice hom";
  }
  rep.line("doc.reindex.hom", "every reindex map preserves top and meets",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);

  // contravariant functoriality
  wit.clear();
  checked = 0;
  for (ObjId o = 0; o < w.num_objects() && wit.empty(); ++o) {
    const auto& m = P.reindex[w.identity(o)];
    for (size_t e = 0; e < m.size(); ++e)
      if (m[e] != e) {
        wit = "reindex along identity of " + w.object_name(o) + " is not the identity";
        break;
      }
    ++checked;
  }
  rep.line("doc.reindex.id", "reindex of identities is the identity",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);

  wit.clear();
  checked = 0;
  uint64_t pairs = w.composable_pairs();
  uint64_t stride = pairs > budget.max_pair_checks ? budget.sample_stride : 1;
  uint64_t tick = 0;
  auto from = homs_from(w);
  for (const auto& [ab, fs] : w.homs()) {
    if (!wit.empty()) break;
    for (const HomEntry* e : from[ab.second]) {
      if (!wit.empty()) break;
      for (ArrId g : e->second) {
        for (ArrId f : fs) {
          if (stride > 1 && (tick++ % stride)) continue;
          ++checked;
          ArrId gf = w.compose(g, f);
          const auto& m_gf = P.reindex[gf];
          const auto& m_g = P.reindex[g];
          const auto& m_f = P.reindex[f];
          for (size_t el = 0; el < m_g.size(); ++el)
            if (m_gf[el] != m_f[m_g[el]]) {
              wit = "reindex not functorial at " + w.arrow(g).name + " after " +
                    w.arrow(f).name;
              break;
            }
          if (!wit.empty()) break;
        }
        if (!wit.empty()) break;
      }
    }
  }
  {
    auto& l = rep.line("doc.reindex.comp", "reindex reverses composition",
                       wit.empty() ? Status::Pass : Status::Fail, wit, checked);
    if (stride > 1) l.note = "sampled 1/" + std::to_string(stride) + " of " +
                             std::to_string(pairs) + " pairs";
  }

  // model coherence of fibers
  if (P.modeled()) {
    wit.clear();
    checked = 0;
    const SetModel& m = w.model;
    for (ObjId o = 0; o < w.num_objects() && wit.empty(); ++o) {
      const InfSemilattice& l = P.fiber(o);
      uint64_t full = m.size[o] >= 64 ? ~0ull : (1ull << m.size[o]) - 1;
      if (l.mask(l.top()) != full) {
        wit = "fiber top of " + w.object_name(o) + " is not the full subset";
        break;
      }
      for (Elem a = 0; a < l.size(); ++a)
        for (Elem b = 0; b < l.size(); ++b) {
          ++checked;
          bool sub = (l.mask(a) & ~l.mask(b)) == 0;
          if (l.leq(a, b) != sub ||
              l.mask(l.meet(a, b)) != (l.mask(a) & l.mask(b))) {
            wit = "fiber of " + w.object_name(o) + " disagrees with subset order";
            break;
          }
          if (a != b && l.mask(a) == l.mask(b)) {
            wit = "fiber of " + w.object_name(o) + " has duplicate masks";
            break;
          }
        }
    }
    for (ArrId f = 0; f < w.num_arrows() && wit.empty(); ++f) {
      const InfSemilattice& lc = P.fiber(w.cod(f));
      const InfSemilattice& ld = P.fiber(w.dom(f));
      for (Elem e = 0; e < lc.size(); ++e) {
        ++checked;
        if (ld.mask(P.reindex[f][e]) !=
            m.preimage(f, lc.mask(e), m.size[w.dom(f)])) {
          wit = "reindex along " + w.arrow(f).name + " is not the model preimage";
          break;
        }
      }
    }
    for (ObjId a = 0; a < w.num_objects() && wit.empty(); ++a) {
      if (P.delta[a] == kNoElem) continue;
      const ProductCell* c = w.product(a, a);
      if (!c) { wit = "delta without square at " + w.object_name(a); break; }
      uint64_t diag = 0;
      for (uint32_t x = 0; x < m.size[a]; ++x) diag |= 1ull << (x * m.size[a] + x);
      ++checked;
      if (P.fiber(c->apex).mask(P.delta[a]) != diag) {
        wit = "delta of " + w.object_name(a) + " is not the model diagonal";
        break;
      }
    }
    rep.line("doc.model", "fibers, reindexing and delta agree with the model",
             wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  }
  return rep;
}

// ---------------------------------------------------------------------------

Elem exists_along_diagonal(const Doctrine& P, ObjId A, Elem a) {
  const ProductCell* c = P.base.product(A, A);
  if (!c)
    throw ProductUndefinedError("product-undefined: no square for " +
                                P.base.object_name(A));
  Elem d = P.delta_of(A);
  P.fiber(A).check_elem(a);
  return P.fiber(c->apex).meet(P.rx(c->pr1, a), d);
}

Elem exists_along_e(const Doctrine& P, ObjId X, ObjId A, Elem a) {
  const CatWindow& w = P.base;
  std::vector<ObjId> fac{X, A, A};
  ObjId xa = iterated_product(w, {X, A});
  ObjId xaa = iterated_product(w, fac);
  ArrId t12 = tuple_map(w, fac, {1, 2});
  ArrId t23 = tuple_map(w, fac, {2, 3});
  Elem d = P.delta_of(A);
  P.fiber(xa).check_elem(a);
  return P.fiber(xaa).meet(P.rx(t12, a), P.rx(t23, d));
}

Elem boxtimes(const Doctrine& P, ObjId X1, ObjId Y1, Elem a1, ObjId X2, ObjId Y2,
              Elem a2) {
  const CatWindow& w = P.base;
  std::vector<ObjId> fac{X1, X2, Y1, Y2};
  ObjId quad = iterated_product(w, fac);
  ArrId t13 = tuple_map(w, fac, {1, 3});
  ArrId t24 = tuple_map(w, fac, {2, 4});
  return P.fiber(quad).meet(P.rx(t13, a1), P.rx(t24, a2));
}

// ---------------------------------------------------------------------------

namespace {

struct AdjunctionScan {
  uint64_t checked = 0, unstateable = 0;
  std::string wit;
};

void scan_condition_i(const Doctrine& P, AdjunctionScan& s) {
  const CatWindow& w = P.base;
  for (ObjId A = 0; A < w.num_objects(); ++A) {
    const ProductCell* c = w.product(A, A);
    if (!c) { ++s.unstateable; continue; }
    if (P.delta[A] == kNoElem) {
      s.wit = "delta missing at " + w.object_name(A) + " though its square is in-window";
      return;
    }
    ArrId diag = w.pairing(A, A, w.identity(A), w.identity(A));
    if (diag == kNone) { ++s.unstateable; continue; }
    const InfSemilattice& fa = P.fiber(A);
    const InfSemilattice& fs = P.fiber(c->apex);
    for (Elem a = 0; a < fa.size(); ++a) {
      Elem ex = fs.meet(P.rx(c->pr1, a), P.delta[A]);
      for (Elem th = 0; th < fs.size(); ++th) {
        ++s.checked;
        bool lhs = fs.leq(ex, th);
        bool rhs = fa.leq(a, P.rx(diag, th));
        if (lhs != rhs) {
          s.wit = "adjunction (i) fails at " + w.object_name(A) + " with alpha=" +
                  fa.label(a) + ", theta=" + fs.label(th);
          return;
        }
      }
    }
  }
}

void scan_condition_ii(const Doctrine& P, AdjunctionScan& s) {
  const CatWindow& w = P.base;
  for (ObjId X = 0; X < w.num_objects(); ++X) {
    for (ObjId A = 0; A < w.num_objects(); ++A) {
      ObjId xa, xaa;
      ArrId t12, t23, e;
      try {
        xa = iterated_product(w, {X, A});
        xaa = iterated_product(w, {X, A, A});
        t12 = tuple_map(w, {X, A, A}, {1, 2});
        t23 = tuple_map(w, {X, A, A}, {2, 3});
        e = tuple_map(w, {X, A}, {1, 2, 2});
      } catch (const ProductUndefinedError&) {
        ++s.unstateable;
        continue;
      }
      if (P.delta[A] == kNoElem) { ++s.unstateable; continue; }
      const InfSemilattice& fxa = P.fiber(xa);
      const InfSemilattice& fxaa = P.fiber(xaa);
      Elem dA = P.rx(t23, P.delta[A]);
      for (Elem a = 0; a < fxa.size(); ++a) {
        Elem ex = fxaa.meet(P.rx(t12, a), dA);
        for (Elem th = 0; th < fxaa.size(); ++th) {
          ++s.checked;
          bool lhs = fxaa.leq(ex, th);
          bool rhs = fxa.leq(a, P.rx(e, th));
          if (lhs != rhs) {
            s.wit = "adjunction (ii) fails at (" + w.object_name(X) + ", " +
                    w.object_name(A) + ") with alpha=" + fxa.label(a) + ", theta=" +
                    fxaa.label(th);
            return;
          }
        }
      }
    }
  }
}

} // namespace

Report check_elementary(const Doctrine& P) {
  Report rep("elementary structure");
  const CatWindow& w = P.base;

  // delta present wherever the square exists
  {
    std::string wit;
    uint64_t n = 0, uns = 0;
    for (ObjId A = 0; A < w.num_objects(); ++A) {
      if (!w.product(A, A)) { ++uns; continue; }
      ++n;
      if (P.delta[A] == kNoElem) {
        wit = "delta missing at " + w.object_name(A);
        break;
      }
      ObjId sq = w.product(A, A)->apex;
      if (P.delta[A] >= P.fiber(sq).size()) {
        wit = "delta of " + w.object_name(A) + " is not a fiber element of its square";
        break;
      }
    }
    auto& l = rep.line("elementary.delta", "delta is defined wherever squares exist",
                       wit.empty() ? (n ? Status::Pass : Status::Vacuous) : Status::Fail,
                       wit, n);
    l.unstateable = uns;
    if (!wit.empty()) return rep;
  }

  {
    AdjunctionScan s;
    scan_condition_i(P, s);
    auto& l = rep.line("elementary.adjunction.i",
                       "exists along each diagonal is left adjoint to reindexing",
                       s.wit.empty() ? (s.checked ? Status::Pass : Status::Unstateable)
                                     : Status::Fail,
                       s.wit, s.checked);
    l.unstateable = s.unstateable;
  }
  {
    AdjunctionScan s;
    scan_condition_ii(P, s);
    auto& l = rep.line("elementary.adjunction.ii",
                       "exists along each e-map is left adjoint to reindexing",
                       s.wit.empty() ? (s.checked ? Status::Pass : Status::Unstateable)
                                     : Status::Fail,
                       s.wit, s.checked);
    l.unstateable = s.unstateable;
  }

  // top_A <= P_diag(delta_A)
  {
    std::string wit;
    uint64_t n = 0, uns = 0;
    for (ObjId A = 0; A < w.num_objects(); ++A) {
      const ProductCell* c = w.product(A, A);
      if (!c || P.delta[A] == kNoElem) { ++uns; continue; }
      ArrId diag = w.pairing(A, A, w.identity(A), w.identity(A));
      if (diag == kNone) { ++uns; continue; }
      ++n;
      const InfSemilattice& fa = P.fiber(A);
      if (!fa.leq(fa.top(), P.rx(diag, P.delta[A]))) {
        wit = "top not below reindexed delta at " + w.object_name(A);
        break;
      }
    }
    auto& l = rep.line("elementary.reflexivity", "top is below delta along the diagonal",
                       wit.empty() ? (n ? Status::Pass : Status::Unstateable) : Status::Fail,
                       wit, n);
    l.unstateable = uns;
  }

  // delta_A <= P_{f x f}(delta_B)
  {
    std::string wit;
    uint64_t n = 0, uns = 0;
    for (ArrId f = 0; f < w.num_arrows(); ++f) {
      ObjId A = w.dom(f), B = w.cod(f);
      if (!w.product(A, A) || !w.product(B, B) || P.delta[A] == kNoElem ||
          P.delta[B] == kNoElem) {
        ++uns;
        continue;
      }
      ArrId ff = P.times_square(f);
      if (ff == kNone) { ++uns; continue; }
      ++n;
      ObjId sq = w.product(A, A)->apex;
      if (!P.fiber(sq).leq(P.delta[A], P.rx(ff, P.delta[B]))) {
        wit = "delta not below kernel of " + w.arrow(f).name;
        break;
      }
    }
    auto& l = rep.line("elementary.delta.kernel",
                       "delta is below the kernel of every arrow",
                       wit.empty() ? (n ? Status::Pass : Status::Unstateable) : Status::Fail,
                       wit, n);
    l.unstateable = uns;
  }

  // delta_{AxB} = delta_A boxtimes delta_B (through the canonical iso)
  {
    std::string wit;
    uint64_t n = 0, uns = 0;
    for (const auto& [key, cell] : w.products()) {
      auto [A, B] = key;
      ObjId AB = cell.apex;
      ArrId iso;
      Elem lhs, rhs;
      try {
        if (P.delta[A] == kNoElem || P.delta[B] == kNoElem || P.delta[AB] == kNoElem)
          throw ProductUndefinedError("delta piece missing");
        std::vector<ObjId> fac{A, B, A, B};
        rhs = boxtimes(P, A, A, P.delta[A], B, B, P.delta[B]);
        ArrId u = tuple_map(w, fac, {1, 2});
        ArrId v = tuple_map(w, fac, {3, 4});
        iso = pair_arrows(w, u, v); // quadruple -> (AxB) x (AxB)
        lhs = P.rx(iso, P.delta[AB]);
      } catch (const Error&) {
        ++uns;
        continue;
      }
      ++n;
      if (lhs != rhs) {
        wit = "boxtimes law fails at (" + w.object_name(A) + ", " + w.object_name(B) + ")";
        break;
      }
    }
    auto& l = rep.line("elementary.boxtimes",
                       "delta of a product is the boxtimes of the deltas",
                       wit.empty() ? (n ? Status::Pass : Status::Unstateable) : Status::Fail,
                       wit, n);
    l.unstateable = uns;
  }

  // Frobenius-style consequence; informational only
  {
    std::string wit;
    uint64_t n = 0;
    for (ObjId A = 0; A < w.num_objects() && wit.empty(); ++A) {
      const ProductCell* c = w.product(A, A);
      if (!c || P.delta[A] == kNoElem) continue;
      ArrId diag = w.pairing(A, A, w.identity(A), w.identity(A));
      if (diag == kNone) continue;
      const InfSemilattice& fa = P.fiber(A);
      const InfSemilattice& fs = P.fiber(c->apex);
      for (Elem a = 0; a < fa.size() && wit.empty(); ++a) {
        Elem ex_a = fs.meet(P.rx(c->pr1, a), P.delta[A]);
        for (Elem th = 0; th < fs.size(); ++th) {
          ++n;
          Elem lhs = fs.meet(P.rx(c->pr1, fa.meet(P.rx(diag, th), a)), P.delta[A]);
          Elem rhs = fs.meet(th, ex_a);
          if (lhs != rhs) {
            wit = "Frobenius equation fails at " + w.object_name(A) + " with alpha=" +
                  fa.label(a) + ", theta=" + fs.label(th);
            break;
          }
        }
      }
    }
    auto& l = rep.line("elementary.frobenius",
                       "Frobenius equation for exists along diagonals",
                       wit.empty() ? (n ? Status::Pass : Status::Vacuous) : Status::Fail,
                       wit, n);
    l.informational = true;
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

struct Eq2Scan {
  uint64_t checked = 0, unstateable = 0;
  std::string wit;
};

void scan_eq2(const DoctrineArrow& arr, Eq2Scan& s) {
  const Doctrine& P = *arr.src;
  const Doctrine& R = *arr.dst;
  const CatWindow& wc = P.base;
  const CatWindow& wd = R.base;
  for (ObjId A = 0; A < wc.num_objects(); ++A) {
    const ProductCell* c = wc.product(A, A);
    if (!c || P.delta[A] == kNoElem) { ++s.unstateable; continue; }
    ObjId FA = arr.F.obj[A];
    const ProductCell* cd = wd.product(FA, FA);
    if (!cd || R.delta[FA] == kNoElem) { ++s.unstateable; continue; }
    ArrId q = wd.pairing(FA, FA, arr.F.arr[c->pr1], arr.F.arr[c->pr2]);
    if (q == kNone) { ++s.unstateable; continue; }
    ++s.checked;
    Elem lhs = arr.b[c->apex][P.delta[A]];
    Elem rhs = R.rx(q, R.delta[FA]);
    if (lhs != rhs) {
      s.wit = "delta image mismatch at " + wc.object_name(A);
      return;
    }
  }
}

} // namespace

Report check_one_arrow(const DoctrineArrow& arr, const CheckBudget& budget) {
  Report rep("doctrine 1-arrow");
  const Doctrine& P = *arr.src;
  const Doctrine& R = *arr.dst;
  rep.add_section(check_functor(arr.F, P.base, R.base, budget));

  std::string wit;
  uint64_t checked = 0;
  if (arr.b.size() != P.base.num_objects()) {
    rep.line("arrow.b.structure", "fiber maps cover the source", Status::Fail,
             "ragged b components");
    return rep;
  }
  for (ObjId A = 0; A < P.base.num_objects() && wit.empty(); ++A) {
    InfSLHom h{&P.fiber(A), &R.fiber(arr.F.obj[A]), arr.b[A]};
    if (arr.b[A].size() != P.fiber(A).size() || !check_hom(h).passed())
      wit = "b component at " + P.base.object_name(A) + " is not a semilattice hom";
    ++checked;
  }
  rep.line("arrow.b.hom", "every b component preserves top and meets",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);

  wit.clear();
  checked = 0;
  for (ArrId f = 0; f < P.base.num_arrows() && wit.empty(); ++f) {
    ObjId A = P.base.dom(f), B = P.base.cod(f);
    const auto& bB = arr.b[B];
    const auto& bA = arr.b[A];
    for (Elem e = 0; e < P.fiber(B).size(); ++e) {
      ++checked;
      if (bA[P.rx(f, e)] != R.rx(arr.F.arr[f], bB[e])) {
        wit = "naturality fails at " + P.base.arrow(f).name + " on " +
              P.fiber(B).label(e);
        break;
      }
    }
  }
  rep.line("arrow.naturality", "b commutes with reindexing",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);

  {
    Eq2Scan s;
    scan_eq2(arr, s);
    auto& l = rep.line("arrow.delta", "b maps delta to the reindexed delta of the image",
                       s.wit.empty()
                           ? (s.checked ? Status::Pass : Status::Unstateable)
                           : Status::Fail,
                       s.wit, s.checked);
    l.unstateable = s.unstateable;
  }
  return rep;
}

bool one_arrow_fully_stateable(const DoctrineArrow& arr) {
  Eq2Scan s;
  scan_eq2(arr, s);
  return s.unstateable == 0 && s.wit.empty();
}

Report check_two_arrow(const DoctrineArrow& farr, const DoctrineArrow& garr,
                       const Doctrine2Cell& cell) {
  Report rep("doctrine 2-arrow");
  if (farr.src != garr.src || farr.dst != garr.dst) {
    rep.line("cell.structure", "parallel 1-arrows", Status::Fail,
             "endpoints differ");
    return rep;
  }
  const Doctrine& P = *farr.src;
  const Doctrine& R = *farr.dst;
  std::string wit;
  if (cell.component.size() != P.base.num_objects()) wit = "ragged components";
  for (ObjId A = 0; A < P.base.num_objects() && wit.empty(); ++A) {
    ArrId t = cell.component[A];
    if (t >= R.base.num_arrows() || R.base.dom(t) != garr.F.obj[A] ||
        R.base.cod(t) != farr.F.obj[A])
      wit = "component at " + P.base.object_name(A) + " has wrong endpoints";
  }
  rep.line("cell.structure", "components go from G to F images",
           wit.empty() ? Status::Pass : Status::Fail, wit, P.base.num_objects());
  if (!wit.empty()) return rep;

  wit.clear();
  uint64_t checked = 0;
  for (ArrId u = 0; u < P.base.num_arrows() && wit.empty(); ++u) {
    ObjId A = P.base.dom(u), B = P.base.cod(u);
    ++checked;
    if (R.base.compose(farr.F.arr[u], cell.component[A]) !=
        R.base.compose(cell.component[B], garr.F.arr[u]))
      wit = "naturality fails at " + P.base.arrow(u).name;
  }
  rep.line("cell.naturality", "components are natural",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);

  wit.clear();
  checked = 0;
  for (ObjId A = 0; A < P.base.num_objects() && wit.empty(); ++A) {
    const InfSemilattice& rg = R.fiber(garr.F.obj[A]);
    for (Elem a = 0; a < P.fiber(A).size(); ++a) {
      ++checked;
      if (!rg.leq(R.rx(cell.component[A], farr.b[A][a]), garr.b[A][a])) {
        wit = "lax condition fails at " + P.base.object_name(A) + " on " +
              P.fiber(A).label(a);
        break;
      }
    }
  }
  rep.line("cell.lax", "reindexed b values stay below c values",
           wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  return rep;
}

DoctrineArrow identity_arrow(DoctrinePtr P) {
  DoctrineArrow a;
  a.src = P;
  a.dst = P;
  a.F.obj.resize(P->base.num_objects());
  a.F.arr.resize(P->base.num_arrows());
  for (ObjId o = 0; o < P->base.num_objects(); ++o) a.F.obj[o] = o;
  for (ArrId f = 0; f < P->base.num_arrows(); ++f) a.F.arr[f] = f;
  a.b.resize(P->base.num_objects());
  for (ObjId o = 0; o < P->base.num_objects(); ++o) {
    a.b[o].resize(P->fiber(o).size());
    for (Elem e = 0; e < P->fiber(o).size(); ++e) a.b[o][e] = e;
  }
  return a;
}

DoctrineArrow compose_arrows(const DoctrineArrow& inner, const DoctrineArrow& outer) {
  if (inner.dst != outer.src)
    throw StructuralError("1-arrow composition endpoint mismatch");
  DoctrineArrow out;
  out.src = inner.src;
  out.dst = outer.dst;
  out.F.obj.resize(inner.F.obj.size());
  out.F.arr.resize(inner.F.arr.size());
  for (size_t o = 0; o < inner.F.obj.size(); ++o)
    out.F.obj[o] = outer.F.obj[inner.F.obj[o]];
  for (size_t f = 0; f < inner.F.arr.size(); ++f)
    out.F.arr[f] = outer.F.arr[inner.F.arr[f]];
  out.b.resize(inner.b.size());
  for (size_t o = 0; o < inner.b.size(); ++o) {
    out.b[o].resize(inner.b[o].size());
    for (size_t e = 0; e < inner.b[o].size(); ++e)
      out.b[o][e] = outer.b[inner.F.obj[o]][inner.b[o][e]];
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// all meet- and top-preserving monotone maps src -> dst
std::vector<std::vector<Elem>> enumerate_lattice_homs(const InfSemilattice& src,
                                                      const InfSemilattice& dst,
                                                      uint64_t* nodes,
                                                      uint64_t max_nodes,
                                                      bool* exhausted) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> cur(src.size(), kNoElem);
  // assign in index order; top forced
  std::function<void(size_t)> rec = [&](size_t i) {
    if (*nodes >= max_nodes) { *exhausted = false; return; }
    if (i == src.size()) {
      out.push_back(cur);
      return;
    }
    if (Elem(i) == src.top()) {
      cur[i] = dst.top();
      rec(i + 1);
      cur[i] = kNoElem;
      return;
    }
    for (Elem v = 0; v < dst.size(); ++v) {
      ++*nodes;
      cur[i] = v;
      bool ok = true;
      for (size_t j = 0; j <= i && ok; ++j) {
        if (cur[j] == kNoElem) continue;
        if (src.leq(Elem(i), Elem(j)) && !dst.leq(v, cur[j])) ok = false;
        if (src.leq(Elem(j), Elem(i)) && !dst.leq(cur[j], v)) ok = false;
        Elem m = src.meet(Elem(i), Elem(j));
        if (cur[m] != kNoElem && cur[m] != dst.meet(v, cur[j])) ok = false;
      }
      if (ok) rec(i + 1);
      cur[i] = kNoElem;
    }
  };
  rec(0);
  // pruning skips meets whose slot was unassigned at the time; re-verify
  std::vector<std::vector<Elem>> verified;
  for (auto& cand : out) {
    InfSLHom h{&src, &dst, cand};
    if (check_hom(h).passed()) verified.push_back(std::move(cand));
  }
  return verified;
}

struct ArrowSearch {
  DoctrinePtr P, R;
  EnumBudget budget;
  uint64_t nodes = 0;
  bool exhaustive = true;
  std::vector<DoctrineArrow> found;

  void run() {
    std::vector<ObjId> objmap(P->base.num_objects(), kNone);
    rec_obj(0, objmap);
  }

  void rec_obj(ObjId o, std::vector<ObjId>& objmap) {
    if (nodes >= budget.max_nodes) { exhaustive = false; return; }
    if (o == P->base.num_objects()) {
      std::vector<ArrId> arrmap(P->base.num_arrows(), kNone);
      rec_arr(0, objmap, arrmap);
      return;
    }
    for (ObjId d = 0; d < R->base.num_objects(); ++d) {
      ++nodes;
      objmap[o] = d;
      bool ok = true;
      // hom emptiness pruning against already-assigned objects
      for (ObjId p = 0; p <= o && ok; ++p) {
        if (objmap[p] == kNone) continue;
        if (!P->base.hom(p, o).empty() && R->base.hom(objmap[p], d).empty()) ok = false;
        if (!P->base.hom(o, p).empty() && R->base.hom(d, objmap[p]).empty()) ok = false;
      }
      if (ok) rec_obj(o + 1, objmap);
      objmap[o] = kNone;
    }
  }

  void rec_arr(ArrId f, std::vector<ObjId>& objmap, std::vector<ArrId>& arrmap) {
    if (nodes >= budget.max_nodes) { exhaustive = false; return; }
    if (f == P->base.num_arrows()) {
      finish_functor(objmap, arrmap);
      return;
    }
    ObjId FA = objmap[P->base.dom(f)], FB = objmap[P->base.cod(f)];
    for (ArrId img : R->base.hom(FA, FB)) {
      ++nodes;
      bool ok = true;
      // identities map to identities
      for (ObjId o = 0; o < P->base.num_objects() && ok; ++o)
        if (f == P->base.identity(o) && img != R->base.identity(FA)) ok = false;
      arrmap[f] = img;
      // composition closure against assigned arrows
      for (ArrId g = 0; g < f && ok; ++g) {
        if (arrmap[g] == kNone) continue;
        if (P->base.composable(g, f)) {
          ArrId gf = P->base.compose(g, f);
          if (gf <= f && arrmap[gf] != kNone &&
              arrmap[gf] != R->base.compose(arrmap[g], arrmap[f]))
            ok = false;
        }
        if (ok && P->base.composable(f, g)) {
          ArrId fg = P->base.compose(f, g);
          if (fg <= f && arrmap[fg] != kNone &&
              arrmap[fg] != R->base.compose(arrmap[f], arrmap[g]))
            ok = false;
        }
      }
      if (ok) rec_arr(f + 1, objmap, arrmap);
      arrmap[f] = kNone;
    }
  }

  void finish_functor(const std::vector<ObjId>& objmap, const std::vector<ArrId>& arrmap) {
    FunctorData F;
    F.obj = objmap;
    F.arr = arrmap;
    if (!check_functor(F, P->base, R->base).passed()) return;
    // enumerate b object by object with naturality pruning
    std::vector<std::vector<std::vector<Elem>>> cands(P->base.num_objects());
    for (ObjId o = 0; o < P->base.num_objects(); ++o) {
      bool exh = true;
      cands[o] = enumerate_lattice_homs(P->fiber(o), R->fiber(objmap[o]), &nodes,
                                        budget.max_nodes, &exh);
      if (!exh) exhaustive = false;
    }
    std::vector<size_t> pick(P->base.num_objects(), 0);
    std::vector<std::vector<Elem>> b(P->base.num_objects());
    std::function<void(ObjId)> rec = [&](ObjId o) {
      if (nodes >= budget.max_nodes) { exhaustive = false; return; }
      if (o == P->base.num_objects()) {
        DoctrineArrow arr;
        arr.src = P;
        arr.dst = R;
        arr.F = F;
        arr.b = b;
        Eq2Scan s;
        scan_eq2(arr, s);
        if (!s.wit.empty() || s.unstateable) return; // only fully stateable arrows
        found.push_back(std::move(arr));
        return;
      }
      for (const auto& cand : cands[o]) {
        ++nodes;
        b[o] = cand;
        bool ok = true;
        // naturality against arrows whose endpoints are both assigned
        for (ArrId f = 0; f < P->base.num_arrows() && ok; ++f) {
          ObjId A = P->base.dom(f), B = P->base.cod(f);
          if (A > o || B > o) continue;
          if (A != o && B != o) continue;
          for (Elem e = 0; e < P->fiber(B).size() && ok; ++e)
            if (b[A][P->rx(f, e)] != R->rx(F.arr[f], b[B][e])) ok = false;
        }
        if (ok) rec(o + 1);
      }
      b[o].clear();
    };
    rec(0);
  }
};

} // namespace

OneArrowEnum enumerate_one_arrows(DoctrinePtr P, DoctrinePtr R, const EnumBudget& budget) {
  ArrowSearch s;
  s.P = std::move(P);
  s.R = std::move(R);
  s.budget = budget;
  s.run();
  OneArrowEnum out;
  out.arrows = std::move(s.found);
  out.exhaustive = s.exhaustive;
  return out;
}

std::vector<Doctrine2Cell> enumerate_two_cells(const DoctrineArrow& f,
                                               const DoctrineArrow& g,
                                               const EnumBudget& budget,
                                               bool* exhaustive) {
  std::vector<Doctrine2Cell> out;
  if (f.src != g.src || f.dst != g.dst) return out;
  const Doctrine& P = *f.src;
  const Doctrine& R = *f.dst;
  uint64_t nodes = 0;
  bool exh = true;
  std::vector<ArrId> comp(P.base.num_objects(), kNone);
  std::function<void(ObjId)> rec = [&](ObjId o) {
    if (nodes >= budget.max_nodes) { exh = false; return; }
    if (o == P.base.num_objects()) {
      Doctrine2Cell c;
      c.component = comp;
      if (check_two_arrow(f, g, c).passed()) out.push_back(std::move(c));
      return;
    }
    for (ArrId t : R.base.hom(g.F.obj[o], f.F.obj[o])) {
      ++nodes;
      comp[o] = t;
      bool ok = true;
      // local lax condition
      const InfSemilattice& rg = R.fiber(g.F.obj[o]);
      for (Elem a = 0; a < P.fiber(o).size() && ok; ++a)
        if (!rg.leq(R.rx(t, f.b[o][a]), g.b[o][a])) ok = false;
      // naturality against assigned components
      for (ArrId u = 0; u < P.base.num_arrows() && ok; ++u) {
        ObjId A = P.base.dom(u), B = P.base.cod(u);
        if (A > o || B > o) continue;
        if (R.base.compose(f.F.arr[u], comp[A]) != R.base.compose(comp[B], g.F.arr[u]))
          ok = false;
      }
      if (ok) rec(o + 1);
      comp[o] = kNone;
    }
  };
  rec(0);
  if (exhaustive) *exhaustive = exh;
  return out;
}

} // namespace doctrina
