#include "doctrina/fixtures.hpp"

#include <algorithm>
#include <cmath>

#include "doctrina/relmask.hpp"

namespace doctrina {

namespace {

uint64_t ipow(uint64_t b, uint64_t e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// function m -> n encoded positionally: digit i of k in base n is f(i)
std::vector<uint8_t> decode_fn(uint64_t k, uint32_t m, uint32_t n) {
  std::vector<uint8_t> f(m);
  for (uint32_t i = 0; i < m; ++i) {
    f[i] = uint8_t(k % n);
    k /= n;
  }
  return f;
}

uint64_t encode_fn(const std::vector<uint8_t>& f, uint32_t n) {
  uint64_t k = 0;
  for (size_t i = f.size(); i-- > 0;) k = k * n + f[i];
  return k;
}

struct FinSetWindow {
  CatWindow win;
  std::vector<ObjId> objs;                       // size -> object
  std::vector<std::vector<std::vector<ArrId>>> arr; // [m][n][k]
};

FinSetWindow build_finset_window(unsigned N) {
  FinSetWindow fs;
  CatWindow& w = fs.win;
  fs.objs.resize(N + 1);
  for (unsigned n = 0; n <= N; ++n) fs.objs[n] = w.add_object(std::to_string(n));
  fs.arr.assign(N + 1, {});
  w.model.present = true;
  w.model.size.assign(N + 1, 0);
  for (unsigned n = 0; n <= N; ++n) w.model.size[n] = n;
  for (unsigned m = 0; m <= N; ++m) {
    fs.arr[m].assign(N + 1, {});
    for (unsigned n = 0; n <= N; ++n) {
      uint64_t cnt = m == 0 ? 1 : (n == 0 ? 0 : ipow(n, m));
      for (uint64_t k = 0; k < cnt; ++k) {
        std::string nm = "a" + std::to_string(m) + "_" + std::to_string(n) + "_" +
                         std::to_string(k);
        ArrId a = w.add_arrow(nm, fs.objs[m], fs.objs[n]);
        fs.arr[m][n].push_back(a);
        w.model.fn.push_back(decode_fn(k, m, std::max(n, 1u)));
      }
    }
  }
  for (unsigned n = 0; n <= N; ++n) {
    std::vector<uint8_t> idf(n);
    for (unsigned i = 0; i < n; ++i) idf[i] = uint8_t(i);
    w.set_identity(fs.objs[n], fs.arr[n][n][encode_fn(idf, std::max(n, 1u))]);
  }
  // composition
  for (unsigned m = 0; m <= N; ++m)
    for (unsigned n = 0; n <= N; ++n) {
      if (fs.arr[m][n].empty()) continue;
      for (unsigned p = 0; p <= N; ++p) {
        if (fs.arr[n][p].empty()) continue;
        for (uint64_t kf = 0; kf < fs.arr[m][n].size(); ++kf) {
          const auto& ff = w.model.fn[fs.arr[m][n][kf]];
          for (uint64_t kg = 0; kg < fs.arr[n][p].size(); ++kg) {
            const auto& fg = w.model.fn[fs.arr[n][p][kg]];
            std::vector<uint8_t> h(m);
            for (unsigned i = 0; i < m; ++i) h[i] = fg[ff[i]];
            ArrId ha = fs.arr[m][p][encode_fn(h, std::max(p, 1u))];
            w.add_comp(fs.arr[n][p][kg], fs.arr[m][n][kf], ha);
          }
        }
      }
    }
  // chosen products: apex a*b when in range, row-major projections
  for (unsigned a = 0; a <= N; ++a)
    for (unsigned b = 0; b <= N; ++b) {
      unsigned ab = a * b;
      if (ab > N) continue;
      ProductCell cell;
      cell.apex = fs.objs[ab];
      std::vector<uint8_t> p1(ab), p2(ab);
      for (unsigned x = 0; x < ab; ++x) {
        p1[x] = uint8_t(x / b);
        p2[x] = uint8_t(x % b);
      }
      cell.pr1 = fs.arr[ab][a][encode_fn(p1, std::max(a, 1u))];
      cell.pr2 = fs.arr[ab][b][encode_fn(p2, std::max(b, 1u))];
      w.set_product(fs.objs[a], fs.objs[b], cell);
    }
  w.finalize();
  return fs;
}

void attach_powerset_fibers(Doctrine& P) {
  const CatWindow& w = P.base;
  P.fibers.clear();
  for (ObjId o = 0; o < w.num_objects(); ++o)
    P.fibers.push_back(InfSemilattice::powerset(w.model.size[o]));
  P.reindex.assign(w.num_arrows(), {});
  for (ArrId f = 0; f < w.num_arrows(); ++f) {
    uint32_t ds = w.model.size[w.dom(f)];
    const InfSemilattice& lc = P.fibers[w.cod(f)];
    P.reindex[f].resize(lc.size());
    for (Elem e = 0; e < lc.size(); ++e) {
      uint64_t pre = w.model.preimage(f, lc.mask(e), ds);
      Elem img = P.fibers[w.dom(f)].find_mask(pre);
      if (img == kNoElem) throw EngineInvariantError("powerset preimage not found");
      P.reindex[f][e] = img;
    }
  }
  P.delta.assign(w.num_objects(), kNoElem);
  for (ObjId a = 0; a < w.num_objects(); ++a) {
    const ProductCell* c = w.product(a, a);
    if (!c) continue;
    uint32_t n = w.model.size[a];
    uint64_t diag = 0;
    for (uint32_t x = 0; x < n; ++x) diag |= 1ull << (x * n + x);
    Elem d = P.fibers[c->apex].find_mask(diag);
    if (d == kNoElem) throw EngineInvariantError("diagonal mask not found");
    P.delta[a] = d;
  }
}

} // namespace

DoctrinePtr finset_sub(unsigned N) {
  if (N > 4)
    throw BudgetError("finset-sub windows beyond size 4 are not enumerable here");
  auto fs = build_finset_window(N);
  auto P = std::make_shared<Doctrine>();
  P->name = "finset-sub(" + std::to_string(N) + ")";
  P->base = std::move(fs.win);
  attach_powerset_fibers(*P);
  return P;
}

DoctrinePtr finset_weaksub(unsigned N) {
  if (N > 4)
    throw BudgetError("finset-weaksub windows beyond size 4 are not enumerable here");
  auto fs = build_finset_window(N);
  CatWindow& w = fs.win;
  auto P = std::make_shared<Doctrine>();
  P->name = "finset-weaksub(" + std::to_string(N) + ")";

  // factorization order on slice arrows: x <= y iff x factors through y.
  // Classes are keyed by image; the keying is verified below against the
  // definition before the fibers are built on it.
  auto image_mask = [&](ArrId x) {
    uint64_t m = 0;
    for (uint8_t v : w.model.fn[x]) m |= 1ull << v;
    return m;
  };
  auto factors_through = [&](ArrId x, ArrId y) {
    // exists h with y . h = x, searched in the window
    for (ArrId h : w.hom(w.dom(x), w.dom(y)))
      if (w.compose(y, h) == x) return true;
    return false;
  };
  for (ObjId A = 0; A < w.num_objects(); ++A) {
    // one slice representative per image: the subset inclusion
    std::vector<ArrId> reps;
    for (ObjId X = 0; X < w.num_objects(); ++X)
      for (ArrId x : w.hom(X, A)) {
        bool seen = false;
        for (ArrId r : reps)
          if (image_mask(r) == image_mask(x)) { seen = true; break; }
        if (!seen) reps.push_back(x);
      }
    for (ArrId x : reps)
      for (ArrId y : reps) {
        bool fac = factors_through(x, y);
        bool sub = (image_mask(x) & ~image_mask(y)) == 0;
        if (fac != sub)
          throw EngineInvariantError(
              "weak-subobject classes do not match images at object " +
              w.object_name(A));
      }
  }

  P->base = std::move(fs.win);
  attach_powerset_fibers(*P);
  // relabel fiber elements as factorization classes
  for (ObjId o = 0; o < P->base.num_objects(); ++o) {
    const InfSemilattice& old = P->fibers[o];
    std::vector<std::string> labels;
    std::vector<std::pair<Elem, Elem>> pairs;
    for (Elem e = 0; e < old.size(); ++e) labels.push_back("[im" + old.label(e) + "]");
    for (Elem a = 0; a < old.size(); ++a)
      for (Elem b = 0; b < old.size(); ++b)
        if (old.leq(a, b)) pairs.emplace_back(a, b);
    InfSemilattice fresh = InfSemilattice::make(std::move(labels), pairs);
    for (Elem e = 0; e < old.size(); ++e) fresh.set_mask(e, old.mask(e));
    P->fibers[o] = std::move(fresh);
  }
  return P;
}

DoctrinePtr posetal_chain(unsigned chain, unsigned fiber_size) {
  if (chain == 0 || fiber_size == 0)
    throw StructuralError("posetal chain needs at least one element and fiber");
  auto P = std::make_shared<Doctrine>();
  P->name = "posetal-chain(" + std::to_string(chain) + "," +
            std::to_string(fiber_size) + ")";
  CatWindow& w = P->base;
  std::vector<ObjId> obj(chain);
  for (unsigned i = 0; i < chain; ++i) obj[i] = w.add_object("c" + std::to_string(i));
  std::vector<std::vector<ArrId>> le(chain, std::vector<ArrId>(chain, kNone));
  for (unsigned i = 0; i < chain; ++i)
    for (unsigned j = i; j < chain; ++j)
      le[i][j] = w.add_arrow("le" + std::to_string(i) + "_" + std::to_string(j),
                             obj[i], obj[j]);
  for (unsigned i = 0; i < chain; ++i) w.set_identity(obj[i], le[i][i]);
  for (unsigned i = 0; i < chain; ++i)
    for (unsigned j = i; j < chain; ++j)
      for (unsigned k = j; k < chain; ++k) w.add_comp(le[j][k], le[i][j], le[i][k]);
  for (unsigned a = 0; a < chain; ++a)
    for (unsigned b = 0; b < chain; ++b) {
      unsigned m = std::min(a, b);
      ProductCell cell;
      cell.apex = obj[m];
      cell.pr1 = le[m][a];
      cell.pr2 = le[m][b];
      w.set_product(obj[a], obj[b], cell);
    }
  w.finalize();

  std::vector<std::string> labels;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (unsigned e = 0; e < fiber_size; ++e) labels.push_back("v" + std::to_string(e));
  for (unsigned a = 0; a < fiber_size; ++a)
    for (unsigned b = a; b < fiber_size; ++b) pairs.emplace_back(Elem(a), Elem(b));
  InfSemilattice fib = InfSemilattice::make(labels, pairs);
  P->fibers.assign(chain, fib);
  P->reindex.assign(w.num_arrows(), {});
  for (ArrId f = 0; f < w.num_arrows(); ++f) {
    P->reindex[f].resize(fiber_size);
    for (Elem e = 0; e < fiber_size; ++e) P->reindex[f][e] = e;
  }
  // delta is forced to top in a posetal doctrine; assert the forcing
  P->delta.assign(chain, Elem(fiber_size - 1));
  for (unsigned a = 0; a < chain && fiber_size > 1; ++a) {
    // with any delta strictly below top, adjunction (i) breaks at theta=delta
    Elem d = Elem(fiber_size - 2);
    bool lhs = fib.leq(fib.meet(fib.top(), d), d); // exists(top) <= theta
    bool rhs = fib.leq(fib.top(), d);              // top <= P_diag(theta)
    if (lhs == rhs)
      throw EngineInvariantError("posetal delta forcing failed at object " +
                                 std::to_string(a));
  }
  return P;
}

// --------------------------------------------------------------------------
// blur fixture: formal pairing closure over two provably equal arrows

namespace {

struct BlurGen {
  // descriptors: prim arrows carry model functions; pair arrows carry the
  // two component arrow ids and the target side (0 = AA, 1 = BB)
  struct Desc {
    bool is_pair = false;
    std::vector<uint8_t> fn; // model function (prims and pairs alike)
    ArrId c1 = kNone, c2 = kNone;
    int side = -1;
  };
  CatWindow w;
  std::vector<Desc> d;
  ObjId A, AA, B, BB;
  std::map<std::pair<ArrId, ArrId>, ArrId> pair_of[2];

  ArrId prim(const std::string& name, ObjId dom, ObjId cod, std::vector<uint8_t> fn) {
    ArrId a = w.add_arrow(name, dom, cod);
    d.push_back({false, std::move(fn), kNone, kNone, -1});
    return a;
  }
  ArrId mk_pair(const std::string& name, ObjId dom, int side, ArrId c1, ArrId c2) {
    ObjId cod = side == 0 ? AA : BB;
    ArrId a = w.add_arrow(name, dom, cod);
    uint32_t n = 2; // both A and B have two points
    std::vector<uint8_t> fn(d[c1].fn.size());
    for (size_t x = 0; x < fn.size(); ++x)
      fn[x] = uint8_t(d[c1].fn[x] * n + d[c2].fn[x]);
    d.push_back({true, std::move(fn), c1, c2, side});
    pair_of[side][{c1, c2}] = a;
    return a;
  }
};

} // namespace

DoctrinePtr blur() {
  BlurGen g;
  CatWindow& w = g.w;
  g.A = w.add_object("A");
  g.AA = w.add_object("AA");
  g.B = w.add_object("B");
  g.BB = w.add_object("BB");

  auto idfn = [](uint32_t n) {
    std::vector<uint8_t> f(n);
    for (uint32_t i = 0; i < n; ++i) f[i] = uint8_t(i);
    return f;
  };
  ArrId id_A = g.prim("id_A", g.A, g.A, idfn(2));
  ArrId id_B = g.prim("id_B", g.B, g.B, idfn(2));
  ArrId pa1 = g.prim("pa1", g.AA, g.A, {0, 0, 1, 1});
  ArrId pa2 = g.prim("pa2", g.AA, g.A, {0, 1, 0, 1});
  ArrId pb1 = g.prim("pb1", g.BB, g.B, {0, 0, 1, 1});
  ArrId pb2 = g.prim("pb2", g.BB, g.B, {0, 1, 0, 1});
  // the blurred parallel pair: distinct arrows, one constant model function
  ArrId f = g.prim("f", g.A, g.B, {0, 0});
  ArrId gg = g.prim("g", g.A, g.B, {0, 0});
  ArrId fp1 = g.prim("f_pa1", g.AA, g.B, {0, 0, 0, 0});
  ArrId fp2 = g.prim("f_pa2", g.AA, g.B, {0, 0, 0, 0});
  ArrId gp1 = g.prim("g_pa1", g.AA, g.B, {0, 0, 0, 0});
  ArrId gp2 = g.prim("g_pa2", g.AA, g.B, {0, 0, 0, 0});

  ArrId id_AA = g.mk_pair("id_AA", g.AA, 0, pa1, pa2);
  ArrId swap_A = g.mk_pair("swap_A", g.AA, 0, pa2, pa1);
  g.mk_pair("d1_A", g.AA, 0, pa1, pa1);
  g.mk_pair("d2_A", g.AA, 0, pa2, pa2);
  g.mk_pair("diag_A", g.A, 0, id_A, id_A);
  ArrId id_BB = g.mk_pair("id_BB", g.BB, 1, pb1, pb2);
  ArrId swap_B = g.mk_pair("swap_B", g.BB, 1, pb2, pb1);
  g.mk_pair("d1_B", g.BB, 1, pb1, pb1);
  g.mk_pair("d2_B", g.BB, 1, pb2, pb2);
  g.mk_pair("diag_B", g.B, 1, id_B, id_B);
  (void)swap_A;
  (void)swap_B;
  for (ArrId u : {f, gg})
    for (ArrId v : {f, gg})
      g.mk_pair("w_" + w.arrow(u).name + "_" + w.arrow(v).name, g.A, 1, u, v);
  for (ArrId u : {fp1, fp2, gp1, gp2})
    for (ArrId v : {fp1, fp2, gp1, gp2})
      g.mk_pair("v_" + w.arrow(u).name + "_" + w.arrow(v).name, g.AA, 1, u, v);

  w.set_identity(g.A, id_A);
  w.set_identity(g.AA, id_AA);
  w.set_identity(g.B, id_B);
  w.set_identity(g.BB, id_BB);
  w.set_product(g.A, g.A, {g.AA, pa1, pa2});
  w.set_product(g.B, g.B, {g.BB, pb1, pb2});

  // symbolic composition: pairs compose componentwise; primitives resolve
  // by case analysis
  std::function<ArrId(ArrId, ArrId)> comp = [&](ArrId top, ArrId bot) -> ArrId {
    if (bot == id_A || bot == id_B || bot == id_AA || bot == id_BB) return top;
    if (top == id_A || top == id_B || top == id_AA || top == id_BB) return bot;
    const auto& dt = g.d[top];
    if (dt.is_pair)
      return g.pair_of[dt.side].at({comp(dt.c1, bot), comp(dt.c2, bot)});
    // primitive top over a pair bottom: projections pick a component,
    // A->B arrows land on the matching composite primitive
    const auto& db_ = g.d[bot];
    if (top == pa1 || top == pb1) return db_.c1;
    if (top == pa2 || top == pb2) return db_.c2;
    if (top == f) return bot == pa1 ? fp1 : fp2;
    if (top == gg) return bot == pa1 ? gp1 : gp2;
    if (top == fp1 || top == fp2 || top == gp1 || top == gp2) {
      ArrId base = (top == fp1 || top == fp2) ? f : gg;
      ArrId proj = (top == fp1 || top == gp1) ? pa1 : pa2;
      return comp(base, comp(proj, bot));
    }
    throw EngineInvariantError("blur composition fell through");
  };
  for (ArrId bf = 0; bf < w.num_arrows(); ++bf)
    for (ArrId tg = 0; tg < w.num_arrows(); ++tg)
      if (w.composable(tg, bf)) w.add_comp(tg, bf, comp(tg, bf));
  w.finalize();

  auto P = std::make_shared<Doctrine>();
  P->name = "blur";
  P->base = std::move(g.w);
  // fibers are powersets of the internal carriers, but no model is kept
  std::vector<uint32_t> size{2, 4, 2, 4};
  P->fibers.clear();
  for (ObjId o = 0; o < 4; ++o) P->fibers.push_back(InfSemilattice::powerset(size[o]));
  P->reindex.assign(P->base.num_arrows(), {});
  for (ArrId a = 0; a < P->base.num_arrows(); ++a) {
    const auto& fn = g.d[a].fn;
    const InfSemilattice& lc = P->fibers[P->base.cod(a)];
    P->reindex[a].resize(lc.size());
    for (Elem e = 0; e < lc.size(); ++e) {
      uint64_t pre = 0;
      for (size_t x = 0; x < fn.size(); ++x)
        if ((lc.mask(e) >> fn[x]) & 1) pre |= 1ull << x;
      P->reindex[a][e] = P->fibers[P->base.dom(a)].find_mask(pre);
    }
  }
  P->delta.assign(4, kNoElem);
  P->delta[g.A] = P->fibers[g.AA].find_mask(0b1001); // {(0,0),(1,1)} row-major
  P->delta[g.B] = P->fibers[g.BB].find_mask(0b1001);
  return P;
}

DoctrinePtr restrict_doctrine(const DoctrinePtr& P, const std::vector<ObjId>& keep,
                              const std::string& name) {
  auto Q = std::make_shared<Doctrine>();
  Q->name = name;
  const CatWindow& w = P->base;
  std::vector<ObjId> omap(w.num_objects(), kNone);
  CatWindow& v = Q->base;
  for (ObjId o : keep) omap[o] = v.add_object(w.object_name(o));
  std::vector<ArrId> amap(w.num_arrows(), kNone);
  for (ArrId a = 0; a < w.num_arrows(); ++a)
    if (omap[w.dom(a)] != kNone && omap[w.cod(a)] != kNone)
      amap[a] = v.add_arrow(w.arrow(a).name, omap[w.dom(a)], omap[w.cod(a)]);
  for (ObjId o : keep) v.set_identity(omap[o], amap[w.identity(o)]);
  for (ArrId a = 0; a < w.num_arrows(); ++a) {
    if (amap[a] == kNone) continue;
    for (ArrId b = 0; b < w.num_arrows(); ++b) {
      if (amap[b] == kNone || !w.composable(b, a)) continue;
      ArrId c = w.compose(b, a);
      if (amap[c] == kNone)
        throw StructuralError("object restriction is not closed under composition");
      v.add_comp(amap[b], amap[a], amap[c]);
    }
  }
  for (const auto& [key, cell] : w.products()) {
    if (omap[key.first] == kNone || omap[key.second] == kNone) continue;
    if (omap[cell.apex] == kNone) continue;
    v.set_product(omap[key.first], omap[key.second],
                  {omap[cell.apex], amap[cell.pr1], amap[cell.pr2]});
  }
  if (w.model.present) {
    v.model.present = true;
    for (ObjId o : keep) v.model.size.push_back(w.model.size[o]);
    for (ArrId a = 0; a < w.num_arrows(); ++a)
      if (amap[a] != kNone) v.model.fn.push_back(w.model.fn[a]);
  }
  v.finalize();
  for (ObjId o : keep) Q->fibers.push_back(P->fibers[o]);
  for (ArrId a = 0; a < w.num_arrows(); ++a)
    if (amap[a] != kNone) Q->reindex.push_back(P->reindex[a]);
  Q->delta.assign(keep.size(), kNoElem);
  for (size_t i = 0; i < keep.size(); ++i) {
    ObjId o = keep[i];
    if (P->delta[o] != kNoElem && Q->base.product(omap[o], omap[o]))
      Q->delta[omap[o]] = P->delta[o];
  }
  return Q;
}

} // namespace doctrina
