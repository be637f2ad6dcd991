#include "doctrina/infsl.hpp"

#include <algorithm>
#include <bit>

namespace doctrina {

namespace {

std::string pair_witness(const InfSemilattice& l, Elem a, Elem b) {
  return "(" + l.label(a) + ", " + l.label(b) + ")";
}

} // namespace

InfSemilattice InfSemilattice::make(
    std::vector<std::string> labels,
    const std::vector<std::pair<Elem, Elem>>& leq_pairs) {
  InfSemilattice l;
  size_t n = labels.size();
  if (n == 0) throw StructuralError("semilattice needs at least one element");
  if (n > kMaxElems) throw StructuralError("semilattice carrier exceeds 64 elements");
  l.labels_ = std::move(labels);
  l.leq_rows_.assign(n, 0);
  for (size_t i = 0; i < n; ++i) l.leq_rows_[i] = 1ull << i;
  for (auto [a, b] : leq_pairs) {
    if (a >= n || b >= n) throw StructuralError("order pair references unknown element");
    l.leq_rows_[a] |= 1ull << b;
  }
  // transitive closure
  for (bool changed = true; changed;) {
    changed = false;
    for (size_t a = 0; a < n; ++a) {
      uint64_t r = l.leq_rows_[a];
      uint64_t acc = r;
      uint64_t m = r;
      while (m) {
        unsigned b = static_cast<unsigned>(std::countr_zero(m));
        m &= m - 1;
        acc |= l.leq_rows_[b];
      }
      if (acc != r) {
        l.leq_rows_[a] = acc;
        changed = true;
      }
    }
  }
  // antisymmetry
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b)
      if (l.leq(Elem(a), Elem(b)) && l.leq(Elem(b), Elem(a)))
        throw Error("order is not antisymmetric: " + l.labels_[a] + " ~ " + l.labels_[b]);
  // top
  Elem top = kNoElem;
  for (size_t t = 0; t < n; ++t) {
    bool greatest = true;
    for (size_t a = 0; a < n && greatest; ++a) greatest = l.leq(Elem(a), Elem(t));
    if (greatest) { top = Elem(t); break; }
  }
  if (top == kNoElem) throw Error("no top element");
  l.top_ = top;
  // meets
  l.meet_.assign(n * n, kNoElem);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      Elem glb = kNoElem;
      for (size_t c = 0; c < n; ++c) {
        if (!l.leq(Elem(c), Elem(a)) || !l.leq(Elem(c), Elem(b))) continue;
        if (glb == kNoElem || l.leq(glb, Elem(c))) glb = Elem(c);
      }
      if (glb == kNoElem)
        throw Error("no lower bound for " + pair_witness(l, Elem(a), Elem(b)));
      // glb must dominate every lower bound
      for (size_t c = 0; c < n; ++c)
        if (l.leq(Elem(c), Elem(a)) && l.leq(Elem(c), Elem(b)) && !l.leq(Elem(c), glb))
          throw Error("no greatest lower bound for " + pair_witness(l, Elem(a), Elem(b)));
      l.meet_[a * n + b] = glb;
    }
  }
  l.masks_.assign(n, 0);
  return l;
}

InfSemilattice InfSemilattice::powerset(unsigned atoms) {
  if (atoms > 6) throw StructuralError("powerset fiber exceeds 64 elements");
  size_t n = size_t(1) << atoms;
  InfSemilattice l;
  l.labels_.reserve(n);
  for (size_t m = 0; m < n; ++m) {
    std::string s = "{";
    for (unsigned i = 0; i < atoms; ++i)
      if ((m >> i) & 1) {
        if (s.size() > 1) s += ",";
        s += std::to_string(i);
      }
    s += "}";
    l.labels_.push_back(std::move(s));
  }
  l.leq_rows_.assign(n, 0);
  l.meet_.assign(n * n, 0);
  l.masks_.assign(n, 0);
  for (size_t a = 0; a < n; ++a) {
    l.masks_[a] = a;
    for (size_t b = 0; b < n; ++b) {
      if ((a & b) == a) l.leq_rows_[a] |= 1ull << b;
      l.meet_[a * n + b] = Elem(a & b);
    }
  }
  l.top_ = Elem(n - 1);
  return l;
}

InfSemilattice InfSemilattice::make_unchecked(std::vector<std::string> labels,
                                              std::vector<uint64_t> leq_rows,
                                              std::vector<Elem> meet_table, Elem top) {
  InfSemilattice l;
  l.labels_ = std::move(labels);
  l.leq_rows_ = std::move(leq_rows);
  l.meet_ = std::move(meet_table);
  l.top_ = top;
  l.masks_.assign(l.labels_.size(), 0);
  return l;
}

Elem InfSemilattice::meet(Elem a, Elem b) const {
  check_elem(a);
  check_elem(b);
  return meet_[size_t(a) * size() + b];
}

Elem InfSemilattice::find_label(const std::string& lbl) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == lbl) return Elem(i);
  return kNoElem;
}

Elem InfSemilattice::find_mask(uint64_t m) const {
  for (size_t i = 0; i < masks_.size(); ++i)
    if (masks_[i] == m) return Elem(i);
  return kNoElem;
}

Elem meet(const InfSemilattice& l, Elem a, Elem b) { return l.meet(a, b); }

Report check_infsl(const InfSemilattice& l) {
  Report rep("inf-semilattice");
  size_t n = l.size();
  if (n == 0 || l.leq_rows_.size() != n || l.meet_.size() != n * n || l.top_ >= n) {
    rep.line("infsl.structure", "carrier and tables are well-formed", Status::Fail,
             "ragged tables or bad top id");
    return rep;
  }
  rep.line("infsl.structure", "carrier and tables are well-formed", Status::Pass, "", n);

  uint64_t checked = 0;
  std::string w;
  // partial order
  for (size_t a = 0; a < n && w.empty(); ++a) {
    if (!l.leq(Elem(a), Elem(a))) w = "not reflexive at " + l.label(Elem(a));
    for (size_t b = 0; b < n && w.empty(); ++b) {
      if (a != b && l.leq(Elem(a), Elem(b)) && l.leq(Elem(b), Elem(a)))
        w = "not antisymmetric at " + pair_witness(l, Elem(a), Elem(b));
      for (size_t c = 0; c < n && w.empty(); ++c) {
        ++checked;
        if (l.leq(Elem(a), Elem(b)) && l.leq(Elem(b), Elem(c)) && !l.leq(Elem(a), Elem(c)))
          w = "not transitive at (" + l.label(Elem(a)) + ", " + l.label(Elem(b)) + ", " +
              l.label(Elem(c)) + ")";
      }
    }
  }
  rep.line("infsl.order", "leq is a partial order", w.empty() ? Status::Pass : Status::Fail,
           w, checked);

  // top
  w.clear();
  for (size_t a = 0; a < n; ++a)
    if (!l.leq(Elem(a), l.top())) { w = l.label(Elem(a)) + " not below top"; break; }
  rep.line("infsl.top", "top is the greatest element",
           w.empty() ? Status::Pass : Status::Fail, w, n);

  // meets are greatest lower bounds
  w.clear();
  checked = 0;
  for (size_t a = 0; a < n && w.empty(); ++a)
    for (size_t b = 0; b < n && w.empty(); ++b) {
      Elem m = l.meet(Elem(a), Elem(b));
      if (m >= n) { w = "meet table hole at " + pair_witness(l, Elem(a), Elem(b)); break; }
      if (!l.leq(m, Elem(a)) || !l.leq(m, Elem(b)))
        w = "meet not a lower bound at " + pair_witness(l, Elem(a), Elem(b));
      for (size_t c = 0; c < n && w.empty(); ++c) {
        ++checked;
        if (l.leq(Elem(c), Elem(a)) && l.leq(Elem(c), Elem(b)) && !l.leq(Elem(c), m))
          w = "meet not greatest at " + pair_witness(l, Elem(a), Elem(b)) + " vs " +
              l.label(Elem(c));
      }
    }
  rep.line("infsl.meet", "every pair has a greatest lower bound",
           w.empty() ? Status::Pass : Status::Fail, w, checked);
  return rep;
}

Report check_hom(const InfSLHom& h) {
  Report rep("inf-semilattice hom");
  if (!h.src || !h.dst || h.map.size() != h.src->size()) {
    rep.line("hom.structure", "map covers the source carrier", Status::Fail,
             "missing lattice or ragged map");
    return rep;
  }
  size_t n = h.src->size();
  std::string w;
  for (size_t a = 0; a < n; ++a)
    if (h.map[a] >= h.dst->size()) { w = "image of " + h.src->label(Elem(a)) + " out of range"; break; }
  rep.line("hom.structure", "map covers the source carrier",
           w.empty() ? Status::Pass : Status::Fail, w, n);
  if (!w.empty()) return rep;

  w.clear();
  if (h.map[h.src->top()] != h.dst->top()) w = "top not preserved";
  rep.line("hom.top", "top is preserved", w.empty() ? Status::Pass : Status::Fail, w, 1);

  w.clear();
  uint64_t checked = 0;
  for (size_t a = 0; a < n && w.empty(); ++a)
    for (size_t b = 0; b < n && w.empty(); ++b) {
      ++checked;
      if (h.src->leq(Elem(a), Elem(b)) && !h.dst->leq(h.map[a], h.map[b]))
        w = "not monotone at " + pair_witness(*h.src, Elem(a), Elem(b));
      if (h.map[h.src->meet(Elem(a), Elem(b))] != h.dst->meet(h.map[a], h.map[b]))
        w = "meet not preserved at " + pair_witness(*h.src, Elem(a), Elem(b));
    }
  rep.line("hom.laws", "monotone and meet-preserving",
           w.empty() ? Status::Pass : Status::Fail, w, checked);
  return rep;
}

SubLattice sub_infsl(const InfSemilattice& l, const std::function<bool(Elem)>& keep) {
  size_t n = l.size();
  SubLattice out;
  out.index.assign(n, kNoElem);
  for (size_t e = 0; e < n; ++e)
    if (keep(Elem(e))) {
      out.index[e] = Elem(out.incl.size());
      out.incl.push_back(Elem(e));
    }
  if (out.incl.empty()) throw Error("sub-carrier is empty");
  for (Elem a : out.incl)
    for (Elem b : out.incl) {
      Elem m = l.meet(a, b);
      if (out.index[m] == kNoElem)
        throw Error("sub-carrier not closed under meet at " + pair_witness(l, a, b));
    }
  // the carrier needs its own greatest element (a downset re-roots at it)
  std::vector<std::string> labels;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem e : out.incl) labels.push_back(l.label(e));
  for (size_t i = 0; i < out.incl.size(); ++i)
    for (size_t j = 0; j < out.incl.size(); ++j)
      if (l.leq(out.incl[i], out.incl[j])) pairs.emplace_back(Elem(i), Elem(j));
  out.sub = InfSemilattice::make(std::move(labels), pairs);
  for (size_t i = 0; i < out.incl.size(); ++i)
    out.sub.set_mask(Elem(i), l.mask(out.incl[i]));
  return out;
}

} // namespace doctrina
