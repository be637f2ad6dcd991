#include "doctrina/fincat.hpp"

#include <algorithm>
#include <array>

namespace doctrina {

namespace {
const std::vector<ArrId> kEmptyHom;

uint64_t pk(ArrId f, ArrId g) { return (uint64_t(f) << 32) | g; }

using HomEntry = std::pair<const std::pair<ObjId, ObjId>, std::vector<ArrId>>;

// homs grouped by domain object, for linear chain iteration
std::vector<std::vector<const HomEntry*>> homs_from(const CatWindow& w) {
  std::vector<std::vector<const HomEntry*>> out(w.num_objects());
  for (const auto& e : w.homs()) out[e.first.first].push_back(&e);
  return out;
}
} // namespace

ObjId CatWindow::add_object(const std::string& name) {
  if (finalized_) throw StructuralError("window already finalized");
  obj_names_.push_back(name);
  ids_.push_back(kNone);
  return ObjId(obj_names_.size() - 1);
}

ArrId CatWindow::add_arrow(const std::string& name, ObjId dom, ObjId cod) {
  if (finalized_) throw StructuralError("window already finalized");
  if (dom >= obj_names_.size() || cod >= obj_names_.size())
    throw StructuralError("arrow " + name + " has dangling dom/cod");
  Arrow a;
  a.name = name;
  a.dom = dom;
  a.cod = cod;
  auto& h = hom_[{dom, cod}];
  a.local = uint32_t(h.size());
  arrows_.push_back(std::move(a));
  h.push_back(ArrId(arrows_.size() - 1));
  return ArrId(arrows_.size() - 1);
}

void CatWindow::set_identity(ObjId o, ArrId a) {
  if (o >= ids_.size() || a >= arrows_.size())
    throw StructuralError("identity assignment out of range");
  ids_[o] = a;
}

void CatWindow::add_comp(ArrId g, ArrId f, ArrId h) {
  comp_list_.push_back({g, f, h});
}

void CatWindow::set_product(ObjId a, ObjId b, ProductCell cell) {
  products_[{a, b}] = cell;
}

void CatWindow::set_comp_rule(std::function<ArrId(const CatWindow&, ArrId, ArrId)> rule) {
  rule_ = std::move(rule);
}

void CatWindow::finalize() {
  if (finalized_) return;
  for (size_t o = 0; o < ids_.size(); ++o) {
    if (ids_[o] == kNone)
      throw StructuralError("object " + obj_names_[o] + " has no identity arrow");
    const Arrow& id = arrows_.at(ids_[o]);
    if (id.dom != o || id.cod != o)
      throw StructuralError("identity of " + obj_names_[o] + " is not an endo-arrow");
  }
  if (!comp_list_.empty()) {
    for (auto [g, f, h] : comp_list_) {
      if (g >= arrows_.size() || f >= arrows_.size() || h >= arrows_.size())
        throw StructuralError("composition entry references unknown arrow");
      const Arrow& af = arrows_[f];
      const Arrow& ag = arrows_[g];
      const Arrow& ah = arrows_[h];
      if (af.cod != ag.dom)
        throw StructuralError("composition entry for non-composable pair " + ag.name +
                              " after " + af.name);
      if (ah.dom != af.dom || ah.cod != ag.cod)
        throw StructuralError("composite " + ah.name + " has wrong dom/cod");
      auto key = std::array<ObjId, 3>{af.dom, af.cod, ag.cod};
      auto it = blocks_.find(key);
      if (it == blocks_.end()) {
        size_t nab = hom(af.dom, af.cod).size();
        size_t nbc = hom(ag.dom, ag.cod).size();
        it = blocks_.emplace(key, std::vector<ArrId>(nab * nbc, kNone)).first;
      }
      size_t nab = hom(af.dom, af.cod).size();
      ArrId& slot = it->second[size_t(ag.local) * nab + af.local];
      if (slot != kNone && slot != h)
        throw StructuralError("conflicting composition entries for " + ag.name +
                              " after " + af.name);
      slot = h;
    }
  }
  for (auto& [key, cell] : products_) {
    if (cell.apex >= obj_names_.size() || cell.pr1 >= arrows_.size() ||
        cell.pr2 >= arrows_.size())
      throw StructuralError("product cell references unknown ids");
  }
  finalized_ = true;
  // pairing index per cell: cone (f, g) -> mediating arrow
  for (auto& [key, cell] : products_) {
    auto& idx = pair_idx_[key];
    for (auto& [dc, arrs] : hom_) {
      if (dc.second != cell.apex) continue;
      for (ArrId h : arrs) {
        ArrId f = compose(cell.pr1, h);
        ArrId g = compose(cell.pr2, h);
        auto [it, fresh] = idx.emplace(pk(f, g), h);
        if (!fresh) it->second = kNone; // ambiguous mediating arrow
      }
    }
  }
}

ObjId CatWindow::find_object(const std::string& name) const {
  for (size_t i = 0; i < obj_names_.size(); ++i)
    if (obj_names_[i] == name) return ObjId(i);
  return kNone;
}

ArrId CatWindow::find_arrow(const std::string& name) const {
  for (size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].name == name) return ArrId(i);
  return kNone;
}

const std::vector<ArrId>& CatWindow::hom(ObjId a, ObjId b) const {
  auto it = hom_.find({a, b});
  return it == hom_.end() ? kEmptyHom : it->second;
}

const std::vector<ArrId>* CatWindow::comp_block(ObjId a, ObjId b, ObjId c) const {
  auto it = blocks_.find(std::array<ObjId, 3>{a, b, c});
  return it == blocks_.end() ? nullptr : &it->second;
}

ArrId CatWindow::compose(ArrId g, ArrId f) const {
  const Arrow& af = arrows_.at(f);
  const Arrow& ag = arrows_.at(g);
  if (af.cod != ag.dom)
    throw StructuralError("compose of non-composable pair " + ag.name + " after " +
                          af.name);
  if (const auto* blk = comp_block(af.dom, af.cod, ag.cod)) {
    ArrId h = (*blk)[size_t(ag.local) * hom(af.dom, af.cod).size() + af.local];
    if (h != kNone) return h;
  }
  // composites with identities are synthesized when not tabled
  if (f == ids_[af.dom]) return g;
  if (g == ids_[ag.cod]) return f;
  if (rule_) {
    ArrId h = rule_(*this, g, f);
    if (h == kNone)
      throw Error("composition rule failed for " + ag.name + " after " + af.name);
    return h;
  }
  throw Error("composition undefined for " + ag.name + " after " + af.name);
}

const ProductCell* CatWindow::product(ObjId a, ObjId b) const {
  auto it = products_.find({a, b});
  return it == products_.end() ? nullptr : &it->second;
}

ArrId CatWindow::pairing(ObjId a, ObjId b, ArrId f, ArrId g) const {
  auto it = pair_idx_.find({a, b});
  if (it == pair_idx_.end()) return kNone;
  auto jt = it->second.find(pk(f, g));
  return jt == it->second.end() ? kNone : jt->second;
}

uint64_t CatWindow::composable_pairs() const {
  uint64_t n = 0;
  std::map<ObjId, uint64_t> in, out;
  for (const auto& [dc, arrs] : hom_) {
    in[dc.second] += arrs.size();
    out[dc.first] += arrs.size();
  }
  for (const auto& [o, i] : in) {
    auto it = out.find(o);
    if (it != out.end()) n += i * it->second;
  }
  return n;
}

// ---------------------------------------------------------------------------

ArrId pair_arrows(const CatWindow& w, ArrId f, ArrId g) {
  ObjId x = w.dom(f);
  if (w.dom(g) != x) throw StructuralError("pairing of arrows with different domains");
  ObjId a = w.cod(f), b = w.cod(g);
  const ProductCell* cell = w.product(a, b);
  if (!cell)
    throw ProductUndefinedError("product-undefined: no cell for (" + w.object_name(a) +
                                ", " + w.object_name(b) + ")");
  ArrId h = w.pairing(a, b, f, g);
  if (h == kNone)
    throw Error("window-invariant violation: no unique mediating arrow for cone (" +
                w.arrow(f).name + ", " + w.arrow(g).name + ")");
  return h;
}

ObjId iterated_product(const CatWindow& w, const std::vector<ObjId>& factors) {
  if (factors.empty()) throw StructuralError("empty factor list");
  ObjId acc = factors[0];
  for (size_t i = 1; i < factors.size(); ++i) {
    const ProductCell* cell = w.product(acc, factors[i]);
    if (!cell)
      throw ProductUndefinedError("product-undefined: no cell for (" +
                                  w.object_name(acc) + ", " +
                                  w.object_name(factors[i]) + ")");
    acc = cell->apex;
  }
  return acc;
}

ArrId iterated_projection(const CatWindow& w, const std::vector<ObjId>& factors, int j) {
  size_t k = factors.size();
  if (j < 1 || size_t(j) > k) throw StructuralError("projection index out of range");
  // left association: ((A1 x A2) x A3) ... ; build from the outside in
  ObjId acc = factors[0];
  std::vector<const ProductCell*> cells;
  for (size_t i = 1; i < k; ++i) {
    const ProductCell* cell = w.product(acc, factors[i]);
    if (!cell) throw ProductUndefinedError("product-undefined in iterated projection");
    cells.push_back(cell);
    acc = cell->apex;
  }
  if (k == 1) return w.identity(factors[0]);
  if (size_t(j) == k) return cells.back()->pr2;
  ArrId p = cells.back()->pr1; // onto the (k-1)-fold prefix
  for (size_t lvl = k - 1; lvl > size_t(j); --lvl)
    p = w.compose(cells[lvl - 2]->pr1, p);
  if (j > 1) p = w.compose(cells[size_t(j) - 2]->pr2, p);
  return p;
}

ArrId tuple_map(const CatWindow& w, const std::vector<ObjId>& factors,
                const std::vector<int>& spec) {
  if (spec.empty()) throw StructuralError("empty tuple spec");
  std::vector<ArrId> comps;
  comps.reserve(spec.size());
  for (int j : spec) comps.push_back(iterated_projection(w, factors, j));
  ArrId acc = comps[0];
  for (size_t i = 1; i < comps.size(); ++i) acc = pair_arrows(w, acc, comps[i]);
  return acc;
}

// ---------------------------------------------------------------------------

class WindowChecks {
 public:
  static Report run(const CatWindow& w, const CheckBudget& budget) {
    Report rep("category window");
    if (!w.finalized_) {
      rep.line("cat.structure", "window is finalized", Status::Fail, "finalize() not called");
      return rep;
    }
    structural(w, rep);
    if (!rep.passed()) return rep;
    units(w, rep);
    totality(w, rep, budget);
    associativity(w, rep, budget);
    products(w, rep);
    if (w.model.present) model_coherence(w, rep);
    return rep;
  }

 private:
  static void structural(const CatWindow& w, Report& rep) {
    std::string wit;
    for (ArrId a = 0; a < w.num_arrows() && wit.empty(); ++a) {
      const auto& ar = w.arrow(a);
      if (ar.dom >= w.num_objects() || ar.cod >= w.num_objects())
        wit = "arrow " + ar.name + " has dangling dom/cod";
    }
    for (ObjId o = 0; o < w.num_objects() && wit.empty(); ++o) {
      ArrId id = w.identity(o);
      if (id == kNone || w.dom(id) != o || w.cod(id) != o)
        wit = "object " + w.object_name(o) + " lacks a proper identity";
    }
    rep.line("cat.structure", "ids, dom/cod and identities are well-formed",
             wit.empty() ? Status::Pass : Status::Fail, wit,
             w.num_arrows() + w.num_objects());
  }

  static void units(const CatWindow& w, Report& rep) {
    std::string wit;
    uint64_t checked = 0;
    for (ArrId f = 0; f < w.num_arrows() && wit.empty(); ++f) {
      ++checked;
      try {
        if (w.compose(w.identity(w.cod(f)), f) != f)
          wit = "id after " + w.arrow(f).name + " differs from it";
        else if (w.compose(f, w.identity(w.dom(f))) != f)
          wit = w.arrow(f).name + " after id differs from it";
      } catch (const Error& e) {
        wit = e.what();
      }
    }
    rep.line("cat.unit", "identities are left and right units",
             wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  }

  static void totality(const CatWindow& w, Report& rep, const CheckBudget& budget) {
    // every composable pair resolves, and the result lands in the right hom
    uint64_t pairs = w.composable_pairs();
    std::string wit;
    uint64_t checked = 0;
    uint64_t stride = pairs > budget.max_pair_checks ? budget.sample_stride : 1;
    uint64_t tick = 0;
    auto from = homs_from(w);
    for (const auto& [ab, fs] : w.homs()) {
      for (const HomEntry* e : from[ab.second]) {
        const auto& gs = e->second;
        for (ArrId g : gs) {
          for (ArrId f : fs) {
            if (stride > 1 && (tick++ % stride)) continue;
            ++checked;
            try {
              ArrId h = w.compose(g, f);
              if (w.dom(h) != ab.first || w.cod(h) != e->first.second)
                wit = "composite of " + w.arrow(g).name + " after " + w.arrow(f).name +
                      " lands in the wrong hom";
            } catch (const Error& ex) {
              wit = ex.what();
            }
            if (!wit.empty()) break;
          }
          if (!wit.empty()) break;
        }
        if (!wit.empty()) break;
      }
      if (!wit.empty()) break;
    }
    auto& l = rep.line("cat.comp.total", "composition is total on composable pairs",
                       wit.empty() ? Status::Pass : Status::Fail, wit, checked);
    if (stride > 1) l.note = "sampled 1/" + std::to_string(stride) + " of " +
                             std::to_string(pairs) + " pairs";
  }

  static void associativity(const CatWindow& w, Report& rep, const CheckBudget& budget) {
    auto from = homs_from(w);
    uint64_t triples = 0;
    for (const auto& [ab, fs] : w.homs())
      for (const HomEntry* ebc : from[ab.second])
        for (const HomEntry* ecd : from[ebc->first.second])
          triples += uint64_t(fs.size()) * ebc->second.size() * ecd->second.size();
    uint64_t stride = triples > budget.max_assoc_triples ? budget.sample_stride : 1;
    std::string wit;
    uint64_t checked = 0, tick = 0;
    for (const auto& [ab, fs] : w.homs()) {
      if (!wit.empty()) break;
      for (const HomEntry* ebc : from[ab.second]) {
        if (!wit.empty()) break;
        const auto& gs = ebc->second;
        ObjId bco = ebc->first.second;
        const auto* bl_abc = w.comp_block(ab.first, ab.second, bco);
        for (const HomEntry* ecd : from[bco]) {
          if (!wit.empty()) break;
          const auto& hs = ecd->second;
          ObjId cdo = ecd->first.second;
          const auto* bl_bcd = w.comp_block(ab.second, bco, cdo);
          const auto* bl_acd = w.comp_block(ab.first, bco, cdo);
          const auto* bl_abd = w.comp_block(ab.first, ab.second, cdo);
          bool dense = bl_abc && bl_bcd && bl_acd && bl_abd;
          size_t nab = fs.size(), nbc = gs.size(),
                 nac = w.hom(ab.first, bco).size();
          for (ArrId h : hs) {
            for (ArrId g : gs) {
              ArrId hg = kNone;
              if (dense)
                hg = (*bl_bcd)[size_t(w.arrow(h).local) * nbc + w.arrow(g).local];
              for (ArrId f : fs) {
                if (stride > 1 && (tick++ % stride)) continue;
                ++checked;
                try {
                  if (dense) {
                    ArrId gf = (*bl_abc)[size_t(w.arrow(g).local) * nab + w.arrow(f).local];
                    ArrId l = (*bl_acd)[size_t(w.arrow(h).local) * nac + w.arrow(gf).local];
                    ArrId r = (*bl_abd)[size_t(w.arrow(hg).local) * nab + w.arrow(f).local];
                    if (l != r)
                      wit = "(" + w.arrow(h).name + ", " + w.arrow(g).name + ", " +
                            w.arrow(f).name + ")";
                  } else {
                    if (w.compose(h, w.compose(g, f)) != w.compose(w.compose(h, g), f))
                      wit = "(" + w.arrow(h).name + ", " + w.arrow(g).name + ", " +
                            w.arrow(f).name + ")";
                  }
                } catch (const Error& e) {
                  wit = e.what();
                }
                if (!wit.empty()) break;
              }
              if (!wit.empty()) break;
            }
            if (!wit.empty()) break;
          }
        }
      }
    }
    auto& l = rep.line("cat.comp.assoc", "composition is associative",
                       wit.empty() ? Status::Pass : Status::Fail, wit, checked);
    if (stride > 1)
      l.note = "sampled 1/" + std::to_string(stride) + " of " + std::to_string(triples) +
               " triples";
  }

  static void products(const CatWindow& w, Report& rep) {
    uint64_t checked = 0;
    std::string wit;
    for (const auto& [key, cell] : w.products_) {
      auto [a, b] = key;
      if (w.dom(cell.pr1) != cell.apex || w.cod(cell.pr1) != a ||
          w.dom(cell.pr2) != cell.apex || w.cod(cell.pr2) != b) {
        wit = "projections of cell (" + w.object_name(a) + ", " + w.object_name(b) +
              ") have wrong endpoints";
        break;
      }
      const auto& idx = w.pair_idx_.at(key);
      // every cone must have exactly one mediating arrow
      for (ObjId x = 0; x < w.num_objects() && wit.empty(); ++x) {
        const auto& fa = w.hom(x, a);
        const auto& fb = w.hom(x, b);
        for (ArrId f : fa) {
          for (ArrId g : fb) {
            ++checked;
            auto it = idx.find(pk(f, g));
            if (it == idx.end()) {
              wit = "cone (" + w.arrow(f).name + ", " + w.arrow(g).name +
                    ") has no mediating arrow into " + w.object_name(cell.apex);
              break;
            }
            if (it->second == kNone) {
              wit = "cone (" + w.arrow(f).name + ", " + w.arrow(g).name +
                    ") has multiple mediating arrows";
              break;
            }
          }
          if (!wit.empty()) break;
        }
      }
      if (!wit.empty()) break;
    }
    Status st = wit.empty() ? (w.products_.empty() ? Status::Vacuous : Status::Pass)
                            : Status::Fail;
    rep.line("cat.products", "chosen product cells satisfy the universal property", st,
             wit, checked);
  }

  static void model_coherence(const CatWindow& w, Report& rep) {
    std::string wit;
    uint64_t checked = 0;
    const SetModel& m = w.model;
    if (m.size.size() != w.num_objects() || m.fn.size() != w.num_arrows()) {
      rep.line("cat.model", "model covers the window", Status::Fail, "ragged model");
      return;
    }
    for (ArrId a = 0; a < w.num_arrows() && wit.empty(); ++a) {
      ++checked;
      if (m.fn[a].size() != m.size[w.dom(a)]) {
        wit = "model of " + w.arrow(a).name + " has wrong arity";
        break;
      }
      for (uint8_t v : m.fn[a])
        if (v >= m.size[w.cod(a)]) {
          wit = "model of " + w.arrow(a).name + " escapes its codomain";
          break;
        }
    }
    // model respects composition and identities, and product cells are
    // row-major pairings
    for (ObjId o = 0; o < w.num_objects() && wit.empty(); ++o) {
      const auto& f = m.fn[w.identity(o)];
      for (size_t x = 0; x < f.size(); ++x)
        if (f[x] != x) { wit = "model identity of " + w.object_name(o) + " not id"; break; }
    }
    uint64_t pairs = w.composable_pairs();
    uint64_t stride = pairs > 20'000'000 ? 97 : 1;
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
            ArrId h = w.compose(g, f);
            const auto& mf = m.fn[f];
            const auto& mg = m.fn[g];
            const auto& mh = m.fn[h];
            for (size_t x = 0; x < mf.size(); ++x)
              if (mh[x] != mg[mf[x]]) {
                wit = "model disagrees with composition at " + w.arrow(h).name;
                break;
              }
            if (!wit.empty()) break;
          }
          if (!wit.empty()) break;
        }
      }
    }
    for (const auto& [key, cell] : w.products_) {
      if (!wit.empty()) break;
      ++checked;
      auto [a, b] = key;
      if (m.size[cell.apex] != m.size[a] * m.size[b]) {
        wit = "model size of apex (" + w.object_name(a) + ", " + w.object_name(b) +
              ") is not the product";
        break;
      }
      const auto& p1 = m.fn[cell.pr1];
      const auto& p2 = m.fn[cell.pr2];
      for (uint32_t x = 0; x < m.size[cell.apex]; ++x)
        if (p1[x] != x / m.size[b] || p2[x] != x % m.size[b]) {
          wit = "model projections of (" + w.object_name(a) + ", " + w.object_name(b) +
                ") are not row-major";
          break;
        }
    }
    rep.line("cat.model", "finite-set model is coherent with the window",
             wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  }
};

Report check_category(const CatWindow& w, const CheckBudget& budget) {
  return WindowChecks::run(w, budget);
}

// ---------------------------------------------------------------------------

std::vector<PullbackSquare> find_pullbacks(const CatWindow& w, ArrId f, ArrId g,
                                           bool weak) {
  if (w.cod(f) != w.cod(g)) throw StructuralError("pullback of a non-cospan");
  ObjId a = w.dom(f), b = w.dom(g);
  // gather all commuting cones
  struct Cone { ObjId x; ArrId p1, p2; };
  std::vector<Cone> cones;
  for (ObjId x = 0; x < w.num_objects(); ++x) {
    for (ArrId p1 : w.hom(x, a))
      for (ArrId p2 : w.hom(x, b))
        if (w.compose(f, p1) == w.compose(g, p2)) cones.push_back({x, p1, p2});
  }
  std::vector<PullbackSquare> out;
  for (const Cone& cand : cones) {
    bool ok = true;
    for (const Cone& c : cones) {
      int mediators = 0;
      for (ArrId m : w.hom(c.x, cand.x)) {
        if (w.compose(cand.p1, m) == c.p1 && w.compose(cand.p2, m) == c.p2) {
          ++mediators;
          if (weak) break;
        }
      }
      if (weak ? mediators == 0 : mediators != 1) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back({cand.x, cand.p1, cand.p2});
  }
  return out;
}

// ---------------------------------------------------------------------------

Report check_functor(const FunctorData& F, const CatWindow& C, const CatWindow& D,
                     const CheckBudget& budget) {
  Report rep("functor");
  if (F.obj.size() != C.num_objects() || F.arr.size() != C.num_arrows()) {
    rep.line("fun.structure", "maps cover the source window", Status::Fail,
             "ragged object/arrow maps");
    return rep;
  }
  std::string wit;
  for (ObjId o = 0; o < C.num_objects() && wit.empty(); ++o)
    if (F.obj[o] >= D.num_objects()) wit = "object map out of range";
  for (ArrId a = 0; a < C.num_arrows() && wit.empty(); ++a) {
    if (F.arr[a] >= D.num_arrows()) { wit = "arrow map out of range"; break; }
    if (D.dom(F.arr[a]) != F.obj[C.dom(a)] || D.cod(F.arr[a]) != F.obj[C.cod(a)])
      wit = "image of " + C.arrow(a).name + " has wrong endpoints";
  }
  rep.line("fun.structure", "maps cover the source window and respect dom/cod",
           wit.empty() ? Status::Pass : Status::Fail, wit,
           C.num_objects() + C.num_arrows());
  if (!wit.empty()) return rep;

  wit.clear();
  for (ObjId o = 0; o < C.num_objects(); ++o)
    if (F.arr[C.identity(o)] != D.identity(F.obj[o])) {
      wit = "identity of " + C.object_name(o) + " not preserved";
      break;
    }
  rep.line("fun.id", "identities are preserved", wit.empty() ? Status::Pass : Status::Fail,
           wit, C.num_objects());

  wit.clear();
  uint64_t checked = 0, tick = 0;
  uint64_t pairs = C.composable_pairs();
  uint64_t stride = pairs > budget.max_pair_checks ? budget.sample_stride : 1;
  auto from = homs_from(C);
  for (const auto& [ab, fs] : C.homs()) {
    if (!wit.empty()) break;
    for (const HomEntry* e : from[ab.second]) {
      if (!wit.empty()) break;
      for (ArrId g : e->second) {
        for (ArrId f : fs) {
          if (stride > 1 && (tick++ % stride)) continue;
          ++checked;
          if (F.arr[C.compose(g, f)] != D.compose(F.arr[g], F.arr[f])) {
            wit = "composition not preserved at " + C.arrow(g).name + " after " +
                  C.arrow(f).name;
            break;
          }
        }
        if (!wit.empty()) break;
      }
    }
  }
  auto& l = rep.line("fun.comp", "composition is preserved",
                     wit.empty() ? Status::Pass : Status::Fail, wit, checked);
  if (stride > 1) l.note = "sampled 1/" + std::to_string(stride);

  if (F.product_preserving) {
    wit.clear();
    checked = 0;
    for (const auto& [key, cell] : C.products()) {
      ++checked;
      ObjId fa = F.obj[key.first], fb = F.obj[key.second];
      ObjId apex = F.obj[cell.apex];
      ArrId q1 = F.arr[cell.pr1], q2 = F.arr[cell.pr2];
      // the image cone must be a limit cone in D
      for (ObjId x = 0; x < D.num_objects() && wit.empty(); ++x) {
        for (ArrId u : D.hom(x, fa)) {
          for (ArrId v : D.hom(x, fb)) {
            int mediators = 0;
            for (ArrId m : D.hom(x, apex))
              if (D.compose(q1, m) == u && D.compose(q2, m) == v) ++mediators;
            if (mediators != 1) {
              wit = "image of cell (" + C.object_name(key.first) + ", " +
                    C.object_name(key.second) + ") fails the universal property";
              break;
            }
          }
          if (!wit.empty()) break;
        }
      }
      if (!wit.empty()) break;
    }
    Status st = wit.empty() ? (C.products().empty() ? Status::Vacuous : Status::Pass)
                            : Status::Fail;
    rep.line("fun.products", "images of chosen cells are products", st, wit, checked);
  }
  return rep;
}

} // namespace doctrina
