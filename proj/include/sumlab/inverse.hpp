#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sumlab/critical.hpp"
#include "sumlab/group.hpp"
#include "sumlab/rational.hpp"

namespace sumlab {

// Fiber-average density of a set along a character: f(alpha) =
// |A cap phi^{-1}(alpha)| / (N/L), optionally box-smoothed over `window`
// consecutive classes.  Values are exact rationals in [0,1].
struct DensityFunction {
  std::int64_t circle_size = 1;
  std::vector<Rational> values;
  std::int64_t window = 0;

  Rational mass() const;  // (1/L) * sum_alpha f(alpha)
};

struct SpectrumEntry {
  std::vector<std::int64_t> freq;
  double magnitude = 0.0;  // |sum_{x in A} e^{-2 pi i phi(x)}| / N
};

// Full DFT of the indicator, one entry per frequency vector.
std::vector<SpectrumEntry> spectrum(const GroupSet& a);

struct DetectedCharacter {
  std::vector<std::int64_t> freq;  // canonical class representative
  double magnitude = 0.0;
  bool weak = false;  // magnitude < 0.5 * mu(set)
};

// The nonzero frequency class maximizing spectral magnitude; ties resolved
// by smallest character order, then lexicographically smallest representative.
DetectedCharacter detect_character(const GroupSet& c2);

DensityFunction pushforward(const GroupSet& a, const Character& chi, std::int64_t window);

// Top level of the density: the largest value t whose superlevel set still
// carries at least (1-theta) of the total mass.
double estimate_sup(const DensityFunction& f, double theta = 0.05);

// The cover multiplicity m in [1, m_max] whose level-1/m arc hypothesis
// fits the density best (L1 residual), tie-broken by |1/m - tau|.
int estimate_multiplicity(const DensityFunction& f, double tau, int m_max = 16);

// Solves m * chi' = chi; among all solutions returns the one of smallest
// order (then lexicographically smallest frequency).
Character quotient_character(const Character& chi, std::int64_t m);

struct ArcFit {
  Arc arc;
  double residual = 0.0;  // (1/L) sum |f - level * 1_arc|
};

// Best arc of length round(target_mass * L / level) by captured mass,
// found with a circular sliding window.
ArcFit fit_arc(const DensityFunction& f, const Rational& target_mass, double level);

struct TransferResult {
  Arc arc;
  Rational residual;  // mu(A delta Bohr(chi, arc))
};

// Given that the partner Bohr(chi, partner_arc) forms a critical pair with
// A, recover A's arc by pushforward + arc fitting.
TransferResult transfer_structure(const GroupSet& a, const Character& chi, const Arc& partner_arc,
                                  const Rational& tolerance);

struct RecoveryConfig {
  Rational tolerance = Rational(1, 100);  // criticality defect cap
  double eps = 0.05;                      // residual threshold for success
  std::int64_t window = -1;               // pushforward smoothing; -1 = ceil(L/256)
  int m_max = 16;
  int k_steps = 8;            // linear-growth check depth
  double theta = 0.05;        // estimate_sup mass fraction
  Rational delta_target = 0;  // shrink target measure; 0 = auto (margin/4)
};

struct RecoveryResult {
  Character character;  // final, quotiented character
  Arc arc_a;
  Arc arc_b;
  double tau = 0.0;
  int multiplicity = 1;
  std::vector<std::int64_t> detected_freq;  // pre-quotient class representative
  Rational residual_a;
  Rational residual_b;
  bool success = false;
  std::vector<std::string> diagnostics;
};

// End-to-end structure recovery: shrink to a small critical companion,
// detect the character on its doubled almost sumset, estimate tau and the
// cover multiplicity, quotient the character, and transfer arcs to A and B.
RecoveryResult recover_bohr_pair(const GroupSet& a, const GroupSet& b, const Rational& delta,
                                 const RecoveryConfig& config = {});

}  // namespace sumlab
