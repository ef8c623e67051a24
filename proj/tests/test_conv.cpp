#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "sumlab/conv.hpp"
#include "sumlab/group.hpp"
#include "sumlab/rng.hpp"

using namespace sumlab;

namespace {

std::vector<std::int64_t> vec(std::initializer_list<std::int64_t> v) { return v; }

// independent oracle: quadratic pair loop written from the definition
std::vector<std::int64_t> oracle_convolve(const GroupSet& a, const GroupSet& b) {
  const auto& g = a.group();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(g.size()), 0);
  for (std::int64_t x = 0; x < g.size(); ++x)
    for (std::int64_t y = 0; y < g.size(); ++y)
      if (a.contains(x) && b.contains(y)) ++counts[static_cast<std::size_t>(g.add(x, y))];
  return counts;
}

GroupSet random_set(const GridGroup& g, std::mt19937_64& rng, double density = 0.5) {
  std::vector<bool> m(static_cast<std::size_t>(g.size()));
  bool any = false;
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = unit_real(rng) < density;
    any = any || m[i];
  }
  if (!any) m[bounded(rng, m.size())] = true;
  return GroupSet(g, m);
}

}  // namespace

TEST_CASE("convolution of singletons and small sets") {
  GridGroup g5(vec({5}));
  auto d = convolve(GroupSet::of(g5, std::vector<std::int64_t>{0}),
                    GroupSet::of(g5, std::vector<std::int64_t>{0}));
  CHECK(d.counts == vec({1, 0, 0, 0, 0}));

  auto p = convolve(GroupSet::of(g5, std::vector<std::int64_t>{0, 1}),
                    GroupSet::of(g5, std::vector<std::int64_t>{0, 2}));
  CHECK(p.counts == vec({1, 1, 1, 1, 0}));

  GridGroup g7(vec({7}));
  GroupSet full = GroupSet::full(g7);
  GroupSet b = GroupSet::of(g7, std::vector<std::int64_t>{1, 3, 4});
  auto f = convolve(full, b);
  for (auto c : f.counts) CHECK(c == 3);
}

TEST_CASE("convolution is commutative and matches the oracle") {
  GridGroup g(vec({23}));
  auto rng = make_rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    GroupSet a = random_set(g, rng);
    GroupSet b = random_set(g, rng);
    auto ab = convolve(a, b);
    CHECK(ab.counts == oracle_convolve(a, b));
    CHECK(ab.counts == convolve(b, a).counts);
  }
}

TEST_CASE("multi-dimensional convolution matches the oracle") {
  GridGroup g(vec({4, 6}));
  auto rng = make_rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    GroupSet a = random_set(g, rng);
    GroupSet b = random_set(g, rng);
    CHECK(convolve(a, b).counts == oracle_convolve(a, b));
    CHECK(convolve_ntt(a, b).counts == oracle_convolve(a, b));
  }
}

TEST_CASE("convolution rejects group mismatch") {
  GroupSet a = GroupSet::full(GridGroup(vec({5})));
  GroupSet b = GroupSet::full(GridGroup(vec({7})));
  CHECK_THROWS_AS(convolve(a, b), std::invalid_argument);
}

TEST_CASE("mass identity holds on every profile") {
  auto rng = make_rng(41);
  for (auto n : {16, 61, 100}) {
    GridGroup g(vec({n}));
    for (int trial = 0; trial < 25; ++trial) {
      GroupSet a = random_set(g, rng);
      GroupSet b = random_set(g, rng);
      auto p = convolve(a, b);
      CHECK(p.total_mass() == a.cardinality() * b.cardinality());
      CHECK(p.max_count() <= std::min(a.cardinality(), b.cardinality()));
    }
  }
}

TEST_CASE("direct and transform paths are bit-exact") {
  auto rng = make_rng(2024);
  for (auto n : {64, 1000, 4096}) {
    GridGroup g(vec({n}));
    for (int trial = 0; trial < 200; ++trial) {
      GroupSet a = random_set(g, rng, 0.15);
      GroupSet b = random_set(g, rng, 0.15);
      CHECK(convolve_direct(a, b).counts == convolve_ntt(a, b).counts);
    }
  }
}

TEST_CASE("sumset basics") {
  GridGroup g5(vec({5}));
  GroupSet s = GroupSet::of(g5, std::vector<std::int64_t>{0, 1});
  CHECK(sumset(s, s).member_indices() == vec({0, 1, 2}));
  CHECK(sumset(s, GroupSet::of(g5, std::vector<std::int64_t>{0})) == s);

  // interval addition achieves size a+b-1 on a prime modulus
  GridGroup g97(vec({97}));
  GroupSet a = GroupSet::interval(g97, 0, 11);
  GroupSet b = GroupSet::interval(g97, 0, 30);
  CHECK(sumset(a, b).cardinality() == 40);

  CHECK_THROWS_AS(sumset(GroupSet::empty(g5), s), std::invalid_argument);
}

TEST_CASE("partial sumset thresholding") {
  GridGroup g(vec({12}));
  GroupSet a = GroupSet::interval(g, 0, 3);
  CHECK(partial_sumset(a, a, Rational(2, 12)).member_indices() == vec({1, 2, 3}));
  CHECK(partial_sumset(a, a, Rational(1, 12)) == sumset(a, a));
  GroupSet full = GroupSet::full(g);
  CHECK(partial_sumset(full, full, Rational(1)) == full);
  CHECK_THROWS_AS(partial_sumset(a, a, Rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(partial_sumset(a, a, Rational(13, 12)), std::invalid_argument);
}

TEST_CASE("partial sumset is monotone in the threshold") {
  GridGroup g(vec({50}));
  auto rng = make_rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    GroupSet a = random_set(g, rng);
    GroupSet b = random_set(g, rng);
    GroupSet prev = partial_sumset(a, b, Rational(1, 50));
    for (std::int64_t k = 2; k <= 50; k += 7) {
      GroupSet cur = partial_sumset(a, b, Rational(k, 50));
      for (std::int64_t x = 0; x < 50; ++x)
        if (cur.contains(x)) CHECK(prev.contains(x));
      prev = cur;
    }
  }
}

TEST_CASE("iterated sumset") {
  GridGroup g(vec({40}));
  GroupSet c = GroupSet::interval(g, 0, 5);
  CHECK(iterated_sumset(c, 1) == c);
  // k-fold interval sum has size k(c-1)+1 while it fits
  for (std::int64_t k = 2; k <= 7; ++k)
    CHECK(iterated_sumset(c, k).cardinality() == k * 4 + 1);
  CHECK_THROWS_AS(iterated_sumset(c, 0), std::invalid_argument);

  // Bohr arcs iterate to Bohr arcs of k-fold arc length
  GridGroup g60(vec({60}));
  Character chi(g60, std::vector<std::int64_t>{1});
  GroupSet bohr = bohr_set({chi, Arc{60, 10, 6}});
  for (std::int64_t k = 2; k <= 4; ++k) {
    GroupSet expected = bohr_set({chi, Arc{60, 10 * k, k * 5 + 1}});
    CHECK(iterated_sumset(bohr, k) == expected);
  }
}

TEST_CASE("difference profile") {
  GridGroup g(vec({5}));
  auto d = difference_profile(GroupSet::of(g, std::vector<std::int64_t>{0}));
  CHECK(d.counts == vec({1, 0, 0, 0, 0}));
  auto p = difference_profile(GroupSet::of(g, std::vector<std::int64_t>{0, 1}));
  CHECK(p.counts == vec({2, 1, 0, 0, 1}));
  auto full = difference_profile(GroupSet::full(g));
  for (auto c : full.counts) CHECK(c == 5);
}

TEST_CASE("difference profile symmetry and center value") {
  GridGroup g(vec({37}));
  auto rng = make_rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    GroupSet a = random_set(g, rng);
    auto d = difference_profile(a);
    CHECK(d.counts[0] == a.cardinality());
    for (std::int64_t x = 1; x < 37; ++x)
      CHECK(d.counts[static_cast<std::size_t>(x)] ==
            d.counts[static_cast<std::size_t>(37 - x)]);
  }
}

TEST_CASE("profile summary statistics") {
  GridGroup g(vec({12}));
  GroupSet a = GroupSet::interval(g, 0, 3);
  auto p = convolve(a, a);
  CHECK(p.total_mass() == 9);
  CHECK(p.max_count() == 3);
  CHECK(p.support_size() == 5);
  CHECK(p.normalized(2) == Rational(3, 12));
}
