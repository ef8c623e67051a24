#pragma once

#include <cstdint>
#include <vector>

#include "sumlab/conv.hpp"
#include "sumlab/group.hpp"
#include "sumlab/rational.hpp"

namespace sumlab {

struct CriticalityReport {
  Rational mu_a;
  Rational mu_b;
  Rational margin;      // min(mu_a, mu_b, 1 - mu_a - mu_b)
  Rational delta;       // partial-sumset threshold used
  Rational mu_partial;  // mu(A +_delta B)
  Rational defect;      // mu_partial - mu_a - mu_b
  bool degenerate = false;  // margin <= 0
};

CriticalityReport criticality(const GroupSet& a, const GroupSet& b, const Rational& delta);

struct ShiftResult {
  std::int64_t shift = 0;
  std::int64_t achieved = 0;  // |A cap (shift + A)|
};

// Discrete best-shift search: the shift x minimizing ||A cap (x+A)| - target|,
// ties broken by smallest linear index.  Valid targets span |A|^2/N .. |A|.
ShiftResult find_shift_with_intersection(const GroupSet& a, std::int64_t target);

struct ShrinkStep {
  int step = 0;
  std::int64_t cardinality = 0;
  Rational defect;
};

struct ShrinkResult {
  GroupSet set;
  std::vector<ShrinkStep> log;
  bool reached_target = false;
  CriticalityReport report;  // criticality of (A, C) at the final C
};

// Iterates C <- C cap (x + C) toward measure <= delta_target while keeping
// (A, C) critical.  Aborts (soft, returning the best C found) when the
// tracked defect exceeds the escalation cap of 10x the initial tolerance.
ShrinkResult shrink_to_small(const GroupSet& a, const GroupSet& b, const Rational& delta_target,
                             const Rational& tolerance, const Rational& delta);

struct AlmostSumset {
  GroupSet set;
  Rational delta_used;
};

// A +_delta B at the smallest delta in the schedule {k/N : k = 1,2,4,...}
// whose measure stays within tolerance of mu(A)+mu(B).
AlmostSumset almost_sumset(const GroupSet& a, const GroupSet& b, const Rational& tolerance);

struct TranslateApprox {
  std::vector<std::int64_t> translates;  // X, a subset of B with |X| <= m^2
  Rational sym_diff;                     // mu((A + X) delta (A +_delta B))
  GroupSet approx;                       // A + X
};

TranslateApprox approximate_by_translates(const GroupSet& a, const GroupSet& b,
                                          const Rational& delta, int m, std::uint64_t seed);

}  // namespace sumlab
