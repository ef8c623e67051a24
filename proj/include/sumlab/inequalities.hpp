#pragma once

#include <optional>
#include <string>

#include "sumlab/conv.hpp"
#include "sumlab/group.hpp"
#include "sumlab/rational.hpp"

namespace sumlab {

struct BoundReport {
  Rational lhs;
  Rational rhs;
  bool holds = false;
  Rational defect;  // lhs - rhs
  // Set when the ambient group has proper nontrivial subgroups, where the
  // connected-group inequalities genuinely can fail.
  bool connectedness_caveat = false;
  // Submodularity only: the minimum pointwise defect across the group.
  std::optional<Rational> pointwise_min;
};

// Discrete Kneser / Cauchy-Davenport: |A+B| >= min(|A|+|B|-1, N).
BoundReport check_kneser(const GroupSet& a, const GroupSet& b);

// Pollard-type functional bound: (1/N^2) sum_x min(counts(x), tN)
// >= t * min(mu(A)+mu(B)-t, 1), for 0 <= t <= min(mu(A), mu(B)).
BoundReport ruzsa_functional(const GroupSet& a, const GroupSet& b, const Rational& t);

// mu(A +_eps B) >= min(mu(A)+mu(B), 1) - 2*sqrt(eps) - 2/N, with the sqrt
// rounded outward so the exact comparison cannot raise a false alarm.
BoundReport check_partial_bound(const GroupSet& a, const GroupSet& b, const Rational& eps);

// Pointwise min(c_{A1,B},tN) + min(c_{A2,B},tN)
//   >= min(c_{A1 cap A2,B},tN) + min(c_{A1 cup A2,B},tN),
// reported both integrated and as the minimum pointwise defect.
BoundReport submodularity_defect(const GroupSet& a1, const GroupSet& a2, const GroupSet& b,
                                 const Rational& t);

enum class EqualityClass { MeasureZero, ParallelBohr, FullMeasure, NonExtremal };

std::string to_string(EqualityClass c);

// Classifies exact equality in the discrete Kneser bound: singleton-like
// operands, saturated measures, recovered parallel Bohr structure, or
// non-extremal otherwise.
EqualityClass classify_equality(const GroupSet& a, const GroupSet& b);

}  // namespace sumlab
