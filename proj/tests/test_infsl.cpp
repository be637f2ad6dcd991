#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "doctrina/infsl.hpp"

using namespace doctrina;

namespace {

InfSemilattice chain(unsigned n) {
  std::vector<std::string> labels;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (unsigned i = 0; i < n; ++i) labels.push_back("e" + std::to_string(i));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = i; j < n; ++j) pairs.emplace_back(Elem(i), Elem(j));
  return InfSemilattice::make(labels, pairs);
}

} // namespace

TEST_CASE("two-element chain is a semilattice") {
  InfSemilattice l = chain(2);
  CHECK(check_infsl(l).passed());
  CHECK(l.top() == 1);
  CHECK(l.meet(0, 1) == 0);
}

TEST_CASE("meet against top is the identity") {
  InfSemilattice l = chain(5);
  for (Elem e = 0; e < l.size(); ++e) CHECK(l.meet(e, l.top()) == e);
}

TEST_CASE("three-element chain: meet with bottom is bottom") {
  InfSemilattice l = chain(3);
  CHECK(l.meet(1, 0) == 0);
}

TEST_CASE("powerset meet is intersection") {
  InfSemilattice l = InfSemilattice::powerset(4);
  CHECK(l.size() == 16);
  CHECK(check_infsl(l).passed());
  // oracle: every element is its own bitmask, meet must be bitwise and
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < l.size(); ++b) CHECK(l.meet(a, b) == (a & b));
  CHECK(l.meet(Elem(0b0011), Elem(0b0110)) == Elem(0b0010)); // {0,1} ^ {1,2} = {1}
}

TEST_CASE("meet is a greatest lower bound") {
  InfSemilattice l = InfSemilattice::powerset(3);
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = 0; b < l.size(); ++b) {
      Elem m = l.meet(a, b);
      CHECK(l.leq(m, a));
      CHECK(l.leq(m, b));
      for (Elem c = 0; c < l.size(); ++c)
        CHECK((l.leq(c, a) && l.leq(c, b)) == l.leq(c, m));
    }
}

TEST_CASE("a poset with an antichain pair lacking a meet is rejected") {
  // top above a, b; both above the incomparable pair c, d
  std::vector<std::string> labels{"top", "a", "b", "c", "d"};
  std::vector<std::pair<Elem, Elem>> pairs{
      {1, 0}, {2, 0}, {3, 0}, {4, 0}, {3, 1}, {3, 2}, {4, 1}, {4, 2}};
  CHECK_THROWS_AS(InfSemilattice::make(labels, pairs), Error);
}

TEST_CASE("check_infsl flags a corrupted meet table") {
  InfSemilattice good = InfSemilattice::powerset(2);
  std::vector<Elem> meets;
  for (Elem a = 0; a < 4; ++a)
    for (Elem b = 0; b < 4; ++b) meets.push_back(good.meet(a, b));
  meets[1 * 4 + 2] = 3; // {0} ^ {1} claimed to be top
  std::vector<uint64_t> rows;
  std::vector<std::string> labels;
  for (Elem a = 0; a < 4; ++a) {
    labels.push_back(good.label(a));
    uint64_t r = 0;
    for (Elem b = 0; b < 4; ++b)
      if (good.leq(a, b)) r |= 1ull << b;
    rows.push_back(r);
  }
  InfSemilattice bad = InfSemilattice::make_unchecked(labels, rows, meets, 3);
  Report rep = check_infsl(bad);
  CHECK_FALSE(rep.passed());
}

TEST_CASE("check_hom accepts an inverse image map between powersets") {
  // f : 2 -> 3 with f(0)=1, f(1)=2; inverse image P(3) -> P(2)
  InfSemilattice p3 = InfSemilattice::powerset(3);
  InfSemilattice p2 = InfSemilattice::powerset(2);
  std::vector<Elem> map(p3.size());
  for (Elem e = 0; e < p3.size(); ++e) {
    Elem pre = 0;
    if (e & 0b010) pre |= 1; // 1 in subset -> 0 in preimage
    if (e & 0b100) pre |= 2;
    map[e] = pre;
  }
  InfSLHom h{&p3, &p2, map};
  CHECK(check_hom(h).passed());
}

TEST_CASE("check_hom rejects a non-meet-preserving map") {
  InfSemilattice p2 = InfSemilattice::powerset(2);
  // "closure" map sending every nonempty set to top
  std::vector<Elem> map{0, 3, 3, 3};
  InfSLHom h{&p2, &p2, map};
  CHECK_FALSE(check_hom(h).passed());
}

TEST_CASE("sub_infsl keeps a meet-closed carrier and rejects others") {
  InfSemilattice l = InfSemilattice::powerset(3);
  SubLattice down = sub_infsl(l, [](Elem e) { return (e & ~Elem(0b011)) == 0; });
  CHECK(down.sub.size() == 4);
  CHECK(check_infsl(down.sub).passed());
  CHECK(down.sub.top() == down.index[0b011]);

  SubLattice all = sub_infsl(l, [](Elem) { return true; });
  CHECK(all.sub.size() == l.size());

  // dropping the empty set breaks closure: {0} ^ {1} escapes
  CHECK_THROWS_AS(sub_infsl(l, [](Elem e) { return e != 0; }), Error);
}
