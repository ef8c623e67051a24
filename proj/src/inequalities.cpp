#include "sumlab/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sumlab/inverse.hpp"

namespace sumlab {

namespace {
void require_nonempty(const GroupSet& a, const GroupSet& b) {
  if (a.is_empty() || b.is_empty()) throw std::invalid_argument("empty operand");
}
}  // namespace

BoundReport check_kneser(const GroupSet& a, const GroupSet& b) {
  require_nonempty(a, b);
  const std::int64_t n = a.group().size();
  BoundReport r;
  r.connectedness_caveat = a.group().has_proper_subgroup();
  r.lhs = sumset(a, b).measure();
  // Discrete form of the bound: |A+B| >= min(|A|+|B|-1, N).
  r.rhs = Rational(std::min(a.cardinality() + b.cardinality() - 1, n), n);
  r.defect = r.lhs - r.rhs;
  r.holds = r.defect >= Rational(0);
  return r;
}

BoundReport ruzsa_functional(const GroupSet& a, const GroupSet& b, const Rational& t) {
  require_nonempty(a, b);
  const std::int64_t n = a.group().size();
  if (t < Rational(0) || t > std::min(a.measure(), b.measure()))
    throw std::invalid_argument("ruzsa_functional: t out of range");
  auto profile = convolve(a, b);
  // lhs = (1/N) sum_x min(counts(x)/N, t), exactly.
  Rational lhs(0);
  const Rational t_scaled = t * Rational(n);  // threshold in count units
  for (std::int64_t c : profile.counts) {
    Rational cr(c);
    lhs += (cr < t_scaled ? cr : t_scaled);
  }
  lhs = lhs / Rational(n) / Rational(n);
  BoundReport r;
  r.connectedness_caveat = a.group().has_proper_subgroup();
  r.lhs = lhs;
  r.rhs = t * std::min(a.measure() + b.measure() - t, Rational(1));
  r.defect = r.lhs - r.rhs;
  r.holds = r.defect >= Rational(0);
  return r;
}

BoundReport check_partial_bound(const GroupSet& a, const GroupSet& b, const Rational& eps) {
  require_nonempty(a, b);
  const std::int64_t n = a.group().size();
  Rational min_mu = std::min(a.measure(), b.measure());
  if (eps <= Rational(0) || eps >= min_mu * min_mu)
    throw std::invalid_argument("check_partial_bound: eps out of range");
  BoundReport r;
  r.connectedness_caveat = a.group().has_proper_subgroup();
  r.lhs = partial_sumset(a, b, eps).measure();
  // 2*sqrt(eps) rounded up to a dyadic rational, so rhs is rounded outward
  // and a floating sqrt can never produce a spurious violation.
  double root = std::sqrt(eps.to_double());
  Rational two_root = Rational::ceil_from_double(2.0 * std::nextafter(root, 2.0));
  r.rhs = std::min(a.measure() + b.measure(), Rational(1)) - two_root - Rational(2, n);
  r.defect = r.lhs - r.rhs;
  r.holds = r.defect >= Rational(0);
  return r;
}

BoundReport submodularity_defect(const GroupSet& a1, const GroupSet& a2, const GroupSet& b,
                                 const Rational& t) {
  if (a1.group() != a2.group() || a1.group() != b.group())
    throw std::invalid_argument("submodularity_defect: group mismatch");
  const std::int64_t n = b.group().size();
  auto c1 = convolve(a1, b);
  auto c2 = convolve(a2, b);
  auto ci = convolve(intersect(a1, a2), b);
  auto cu = convolve(unite(a1, a2), b);
  const Rational t_scaled = t * Rational(n);
  auto clip = [&](std::int64_t c) {
    Rational cr(c);
    return cr < t_scaled ? cr : t_scaled;
  };
  Rational lhs(0), rhs(0);
  Rational min_pointwise = Rational(n);  // larger than any single-point defect
  for (std::int64_t x = 0; x < n; ++x) {
    auto i = static_cast<std::size_t>(x);
    Rational lx = clip(c1.counts[i]) + clip(c2.counts[i]);
    Rational rx = clip(ci.counts[i]) + clip(cu.counts[i]);
    lhs += lx;
    rhs += rx;
    min_pointwise = std::min(min_pointwise, lx - rx);
  }
  const Rational norm = Rational(1, n) * Rational(1, n);
  BoundReport r;
  r.connectedness_caveat = b.group().has_proper_subgroup();
  r.lhs = lhs * norm;
  r.rhs = rhs * norm;
  r.defect = r.lhs - r.rhs;
  r.pointwise_min = min_pointwise * norm;
  r.holds = *r.pointwise_min >= Rational(0);
  return r;
}

std::string to_string(EqualityClass c) {
  switch (c) {
    case EqualityClass::MeasureZero: return "measure-zero-case";
    case EqualityClass::ParallelBohr: return "parallel-bohr-case";
    case EqualityClass::FullMeasure: return "full-measure-case";
    case EqualityClass::NonExtremal: return "non-extremal";
  }
  return "non-extremal";
}

EqualityClass classify_equality(const GroupSet& a, const GroupSet& b) {
  require_nonempty(a, b);
  const std::int64_t n = a.group().size();
  auto kneser = check_kneser(a, b);
  if (kneser.defect != Rational(0)) return EqualityClass::NonExtremal;
  if (std::min(a.cardinality(), b.cardinality()) <= 1) return EqualityClass::MeasureZero;
  if (a.cardinality() + b.cardinality() >= n) return EqualityClass::FullMeasure;

  RecoveryConfig config;
  config.tolerance = Rational(0);  // exactly extremal input
  Rational margin = std::min({a.measure(), b.measure(), Rational(1) - a.measure() - b.measure()});
  config.eps = margin.to_double();
  config.delta_target = std::min(a.measure(), b.measure());  // start from the smaller set as-is
  try {
    auto result = recover_bohr_pair(a, b, Rational(1, n), config);
    Rational bohr_tol(2, result.character.order());
    if (result.residual_a <= bohr_tol && result.residual_b <= bohr_tol)
      return EqualityClass::ParallelBohr;
  } catch (const std::exception&) {
    // recovery pipeline could not produce structure; fall through
  }
  return EqualityClass::NonExtremal;
}

}  // namespace sumlab
