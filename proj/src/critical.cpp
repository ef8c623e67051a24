#include "sumlab/critical.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <stdexcept>

#include "sumlab/rng.hpp"

namespace sumlab {

CriticalityReport criticality(const GroupSet& a, const GroupSet& b, const Rational& delta) {
  if (a.is_empty() || b.is_empty()) throw std::invalid_argument("criticality: empty operand");
  if (delta <= Rational(0) || delta > Rational(1))
    throw std::invalid_argument("criticality: delta must lie in (0, 1]");
  CriticalityReport r;
  r.mu_a = a.measure();
  r.mu_b = b.measure();
  r.margin = std::min({r.mu_a, r.mu_b, Rational(1) - r.mu_a - r.mu_b});
  r.delta = delta;
  r.mu_partial = partial_sumset(a, b, delta).measure();
  r.defect = r.mu_partial - r.mu_a - r.mu_b;
  r.degenerate = r.margin <= Rational(0);
  return r;
}

ShiftResult find_shift_with_intersection(const GroupSet& a, std::int64_t target) {
  if (a.is_empty()) throw std::invalid_argument("find_shift_with_intersection: empty set");
  const std::int64_t n = a.group().size();
  const std::int64_t card = a.cardinality();
  if (target > card || static_cast<__int128>(target) * n < static_cast<__int128>(card) * card)
    throw std::invalid_argument("find_shift_with_intersection: target out of range");
  auto profile = difference_profile(a);
  ShiftResult best{0, profile.counts[0]};
  std::int64_t best_diff = std::llabs(profile.counts[0] - target);
  for (std::int64_t x = 1; x < n; ++x) {
    std::int64_t d = std::llabs(profile.counts[static_cast<std::size_t>(x)] - target);
    if (d < best_diff) {
      best_diff = d;
      best = ShiftResult{x, profile.counts[static_cast<std::size_t>(x)]};
    }
  }
  return best;
}

ShrinkResult shrink_to_small(const GroupSet& a, const GroupSet& b, const Rational& delta_target,
                             const Rational& tolerance, const Rational& delta) {
  auto initial = criticality(a, b, delta);
  if (initial.defect > tolerance)
    throw std::invalid_argument("shrink_to_small: initial pair not critical within tolerance");
  const std::int64_t n = a.group().size();
  const Rational cap = tolerance * Rational(10);
  const Rational half_margin = initial.margin / Rational(2);

  ShrinkResult result{b, {}, b.measure() <= delta_target, initial};
  if (result.reached_target) return result;

  GroupSet c = b;
  CriticalityReport rep = initial;
  int step = 0;
  while (c.measure() > delta_target && step < 200) {
    const std::int64_t card = c.cardinality();
    // Target intersection size per the descent schedule
    // max(mu(C)^2, mu(C) - margin/2), never overshooting the final target.
    std::int64_t floor_card =
        static_cast<std::int64_t>((static_cast<__int128>(card) * card + n - 1) / n);
    std::int64_t drop = card - static_cast<std::int64_t>((half_margin * Rational(n)).to_double());
    std::int64_t want = std::max(floor_card, drop);
    std::int64_t final_card =
        static_cast<std::int64_t>((delta_target * Rational(n)).to_double());
    if (want < final_card) want = std::max(floor_card, std::min(final_card, card));
    want = std::clamp(want, floor_card, card);
    auto shift = find_shift_with_intersection(c, want);
    if (shift.shift == 0) break;  // no progress possible
    GroupSet next = intersect(c, translate(c, shift.shift));
    if (next.is_empty()) break;
    auto next_rep = criticality(a, next, delta);
    if (next_rep.defect > cap) break;  // soft fail: keep the best C so far
    c = std::move(next);
    rep = next_rep;
    ++step;
    result.log.push_back(ShrinkStep{step, c.cardinality(), rep.defect});
  }
  result.set = c;
  result.report = rep;
  result.reached_target = c.measure() <= delta_target;
  return result;
}

AlmostSumset almost_sumset(const GroupSet& a, const GroupSet& b, const Rational& tolerance) {
  if (a.is_empty() || b.is_empty()) throw std::invalid_argument("almost_sumset: empty operand");
  const std::int64_t n = a.group().size();
  const Rational bound = a.measure() + b.measure() + tolerance;
  auto profile = convolve(a, b);
  for (std::int64_t k = 1; k <= n; k *= 2) {
    Rational delta(k, n);
    GroupSet candidate = threshold_set(profile, delta);
    if (candidate.measure() <= bound) return AlmostSumset{std::move(candidate), delta};
  }
  throw std::runtime_error("almost_sumset: no threshold in the schedule meets the bound");
}

TranslateApprox approximate_by_translates(const GroupSet& a, const GroupSet& b,
                                          const Rational& delta, int m, std::uint64_t seed) {
  if (a.is_empty() || b.is_empty())
    throw std::invalid_argument("approximate_by_translates: empty operand");
  if (m < 1) throw std::invalid_argument("approximate_by_translates: m must be >= 1");
  auto members = b.member_indices();
  auto rng = make_rng(seed);
  std::set<std::int64_t> chosen;
  const std::int64_t draws = static_cast<std::int64_t>(m) * m;
  for (std::int64_t i = 0; i < draws; ++i)
    chosen.insert(members[bounded(rng, members.size())]);

  GroupSet approx = GroupSet::empty(a.group());
  for (std::int64_t x : chosen) approx = unite(approx, translate(a, x));
  GroupSet partial = partial_sumset(a, b, delta);
  return TranslateApprox{std::vector<std::int64_t>(chosen.begin(), chosen.end()),
                         symm_diff_measure(approx, partial), std::move(approx)};
}

}  // namespace sumlab
