#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <vector>

#include "sumlab/group.hpp"
#include "sumlab/rng.hpp"

using namespace sumlab;

namespace {

std::vector<std::int64_t> vec(std::initializer_list<std::int64_t> v) { return v; }

// independent oracle: smallest L >= 1 with L*xi_i = 0 mod N_i for all i,
// found by direct scan
std::int64_t order_by_scan(const std::vector<std::int64_t>& dims,
                           const std::vector<std::int64_t>& freq) {
  std::int64_t bound = 1;
  for (auto n : dims) bound = std::lcm(bound, n);
  for (std::int64_t L = 1; L <= bound; ++L) {
    bool ok = true;
    for (std::size_t i = 0; i < dims.size(); ++i)
      if ((L * freq[i]) % dims[i] != 0) ok = false;
    if (ok) return L;
  }
  return bound;
}

}  // namespace

TEST_CASE("group construction and sizes") {
  CHECK(GridGroup(vec({10})).size() == 10);
  GridGroup g(vec({4, 6}));
  CHECK(g.size() == 24);
  CHECK(g.dim_count() == 2);
  CHECK_THROWS_AS(GridGroup(vec({1})), std::invalid_argument);
  CHECK_THROWS_AS(GridGroup({}), std::invalid_argument);
}

TEST_CASE("coords/index round trip and arithmetic") {
  GridGroup g(vec({4, 6}));
  for (std::int64_t i = 0; i < g.size(); ++i) {
    auto c = g.coords(i);
    CHECK(g.index(c) == i);
  }
  // row-major: axis 0 slowest
  CHECK(g.coords(7) == vec({1, 1}));
  CHECK(g.add(g.index(vec({3, 5})), g.index(vec({1, 1}))) == g.index(vec({0, 0})));
  CHECK(g.negate(g.index(vec({1, 2}))) == g.index(vec({3, 4})));
}

TEST_CASE("proper subgroup flag") {
  CHECK_FALSE(GridGroup(vec({7})).has_proper_subgroup());
  CHECK_FALSE(GridGroup(vec({997})).has_proper_subgroup());
  CHECK(GridGroup(vec({6})).has_proper_subgroup());
  CHECK(GridGroup(vec({4, 6})).has_proper_subgroup());
  CHECK(GridGroup(vec({3, 5})).has_proper_subgroup());
}

TEST_CASE("character order") {
  CHECK(character_order(GridGroup(vec({12})), vec({1})) == 12);
  CHECK(character_order(GridGroup(vec({12})), vec({2})) == 6);
  CHECK(character_order(GridGroup(vec({4, 6})), vec({2, 3})) == 2);
  // cross-check against the scan oracle on assorted inputs
  GridGroup g12(vec({12}));
  for (std::int64_t xi = 0; xi < 12; ++xi)
    CHECK(character_order(g12, vec({xi})) == order_by_scan({12}, {xi}));
  GridGroup g46(vec({4, 6}));
  for (std::int64_t a = 0; a < 4; ++a)
    for (std::int64_t b = 0; b < 6; ++b)
      CHECK(character_order(g46, vec({a, b})) == order_by_scan({4, 6}, {a, b}));
}

TEST_CASE("character order is 1 iff frequency is zero") {
  GridGroup g(vec({4, 6}));
  for (std::int64_t a = 0; a < 4; ++a)
    for (std::int64_t b = 0; b < 6; ++b) {
      bool zero = (a == 0 && b == 0);
      CHECK((character_order(g, vec({a, b})) == 1) == zero);
    }
}

TEST_CASE("character evaluation is additive on the L-point circle") {
  GridGroup g(vec({4, 6}));
  Character chi(g, vec({2, 3}));
  const std::int64_t L = chi.order();
  auto rng = make_rng(11);
  for (int i = 0; i < 200; ++i) {
    auto x = static_cast<std::int64_t>(bounded(rng, 24));
    auto y = static_cast<std::int64_t>(bounded(rng, 24));
    CHECK(chi.eval_times_order(g.add(x, y)) ==
          (chi.eval_times_order(x) + chi.eval_times_order(y)) % L);
  }
}

TEST_CASE("phase table matches pointwise evaluation") {
  GridGroup g(vec({4, 6}));
  Character chi(g, vec({1, 2}));
  auto table = chi.phase_table();
  for (std::int64_t x = 0; x < g.size(); ++x)
    CHECK(table[static_cast<std::size_t>(x)] == chi.eval_times_order(x));
}

TEST_CASE("character class representative folds conjugates") {
  GridGroup g(vec({12}));
  CHECK(character_class_representative(g, vec({11})) == vec({1}));
  CHECK(character_class_representative(g, vec({5})) == vec({5}));
  CHECK(character_class_representative(g, vec({7})) == vec({5}));
  CHECK(character_class_representative(g, vec({6})) == vec({6}));
  GridGroup g2(vec({4, 6}));
  CHECK(character_class_representative(g2, vec({3, 5})) == vec({1, 1}));
}

TEST_CASE("bohr set materialization") {
  GridGroup g(vec({12}));
  {
    GroupSet s = bohr_set({Character(g, vec({1})), Arc{12, 0, 3}});
    CHECK(s.member_indices() == vec({0, 1, 2}));
  }
  {
    Character chi(g, vec({2}));
    CHECK(chi.order() == 6);
    GroupSet s = bohr_set({chi, Arc{6, 0, 2}});
    CHECK(s.member_indices() == vec({0, 1, 6, 7}));
  }
  {
    GridGroup g5(vec({5}));
    GroupSet s = bohr_set({Character(g5, vec({2})), Arc{5, 0, 5}});
    CHECK(s.cardinality() == 5);
  }
  CHECK_THROWS(bohr_set({Character(g, vec({0})), Arc{12, 0, 3}}));
}

TEST_CASE("bohr set measure equals arc measure") {
  GridGroup g(vec({4, 6}));
  auto rng = make_rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::int64_t> freq = {static_cast<std::int64_t>(bounded(rng, 4)),
                                      static_cast<std::int64_t>(bounded(rng, 6))};
    Character chi(g, freq);
    if (chi.is_zero()) continue;
    std::int64_t L = chi.order();
    Arc arc{L, static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(L))),
            static_cast<std::int64_t>(bounded(rng, static_cast<std::uint64_t>(L))) + 1};
    GroupSet s = bohr_set({chi, arc});
    CHECK(s.measure() == arc.measure());
  }
}

TEST_CASE("set algebra basics") {
  GridGroup g(vec({5}));
  GroupSet a = GroupSet::of(g, std::vector<std::int64_t>{0, 1});
  CHECK(symm_diff_measure(a, a) == Rational(0));
  CHECK(translate(a, 3).member_indices() == vec({3, 4}));
  GroupSet b = GroupSet::of(g, std::vector<std::int64_t>{1, 2});
  CHECK(reflect(b).member_indices() == vec({3, 4}));
  CHECK(complement(a).cardinality() == 3);
  CHECK(unite(a, b).cardinality() == 3);
  CHECK(intersect(a, b).member_indices() == vec({1}));
}

TEST_CASE("translate preserves cardinality, reflect is an involution") {
  GridGroup g(vec({4, 6}));
  auto rng = make_rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<bool> m(24);
    for (std::size_t i = 0; i < 24; ++i) m[i] = bounded(rng, 2) == 1;
    GroupSet a(g, m);
    auto x = static_cast<std::int64_t>(bounded(rng, 24));
    CHECK(translate(a, x).cardinality() == a.cardinality());
    CHECK(translate(translate(a, x), g.negate(x)) == a);
    CHECK(reflect(reflect(a)) == a);
  }
}

TEST_CASE("symmetric difference measure is a metric") {
  GridGroup g(vec({30}));
  auto rng = make_rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<bool> ma(30), mb(30), mc(30);
    for (std::size_t i = 0; i < 30; ++i) {
      ma[i] = bounded(rng, 2) == 1;
      mb[i] = bounded(rng, 2) == 1;
      mc[i] = bounded(rng, 2) == 1;
    }
    GroupSet a(g, ma), b(g, mb), c(g, mc);
    CHECK(symm_diff_measure(a, b) == symm_diff_measure(b, a));
    CHECK(symm_diff_measure(a, c) <= symm_diff_measure(a, b) + symm_diff_measure(b, c));
    CHECK((symm_diff_measure(a, b) == Rational(0)) == (a == b));
  }
}

TEST_CASE("interval constructor wraps") {
  GridGroup g(vec({10}));
  CHECK(GroupSet::interval(g, 8, 4).member_indices() == vec({0, 1, 8, 9}));
  CHECK(GroupSet::interval(g, 0, 10).cardinality() == 10);
}

TEST_CASE("set JSON round trip") {
  GridGroup g(vec({4, 6}));
  GroupSet a = GroupSet::of(g, std::vector<std::int64_t>{0, 5, 23});
  auto j = a.to_json();
  CHECK(j["dims"] == std::vector<std::int64_t>({4, 6}));
  CHECK(j["members"] == std::vector<std::int64_t>({0, 5, 23}));
  CHECK(GroupSet::from_json(j) == a);
  // malformed member order is rejected
  j["members"] = std::vector<std::int64_t>{5, 0};
  CHECK_THROWS(GroupSet::from_json(j));
}

TEST_CASE("bohr description JSON round trip") {
  GridGroup g(vec({12}));
  BohrDescription d{Character(g, vec({2})), Arc{6, 1, 2}};
  auto j = d.to_json();
  CHECK(j["order"] == 6);
  auto d2 = BohrDescription::from_json(g, j);
  CHECK(d2.character.freq() == d.character.freq());
  CHECK(d2.arc == d.arc);
  CHECK(bohr_set(d2) == bohr_set(d));
}

TEST_CASE("arc membership and validation") {
  Arc arc{10, 8, 4};
  CHECK(arc.contains(8));
  CHECK(arc.contains(1));
  CHECK_FALSE(arc.contains(2));
  CHECK(arc.measure() == Rational(2, 5));
  CHECK_THROWS(Arc{10, 8, 0}.validate());
  CHECK_THROWS(Arc{10, 10, 2}.validate());
}

TEST_CASE("primality helper") {
  CHECK(is_prime(2));
  CHECK(is_prime(997));
  CHECK(is_prime(6001) == false);  // 17 * 353
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(6000));
}
