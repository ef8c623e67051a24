#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sumlab/rational.hpp"

#include "json.hpp"

namespace sumlab {

// Finite discretization Z/N1 x ... x Z/Nd of a torus.  Elements are
// linearized row-major indices (axis 0 slowest); all arithmetic is
// componentwise mod Ni.
class GridGroup {
public:
  explicit GridGroup(std::vector<std::int64_t> dims);

  const std::vector<std::int64_t>& dims() const { return dims_; }
  int dim_count() const { return static_cast<int>(dims_.size()); }
  std::int64_t size() const { return size_; }

  std::vector<std::int64_t> coords(std::int64_t index) const;
  std::int64_t index(std::span<const std::int64_t> coords) const;

  std::int64_t add(std::int64_t a, std::int64_t b) const;
  std::int64_t negate(std::int64_t a) const;

  // True unless the group is Z/p for prime p; composite or product groups
  // contain proper nontrivial subgroups and the Kneser bound can fail.
  bool has_proper_subgroup() const;

  bool operator==(const GridGroup& other) const { return dims_ == other.dims_; }
  bool operator!=(const GridGroup& other) const { return !(*this == other); }

private:
  std::vector<std::int64_t> dims_;
  std::vector<std::int64_t> strides_;
  std::int64_t size_ = 1;
};

GridGroup make_group(std::vector<std::int64_t> dims);

// Dense membership indicator over a GridGroup with cached cardinality.
class GroupSet {
public:
  GroupSet(GridGroup group, std::vector<bool> membership);

  static GroupSet empty(const GridGroup& group);
  static GroupSet full(const GridGroup& group);
  static GroupSet of(const GridGroup& group, std::span<const std::int64_t> members);
  // Cyclic interval {start, ..., start+length-1 mod N} on a 1-d group.
  static GroupSet interval(const GridGroup& group, std::int64_t start, std::int64_t length);

  const GridGroup& group() const { return group_; }
  bool contains(std::int64_t index) const { return membership_[static_cast<std::size_t>(index)]; }
  std::int64_t cardinality() const { return cardinality_; }
  bool is_empty() const { return cardinality_ == 0; }
  Rational measure() const { return Rational(cardinality_, group_.size()); }
  const std::vector<bool>& membership() const { return membership_; }
  std::vector<std::int64_t> member_indices() const;

  static GroupSet from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  bool operator==(const GroupSet& other) const {
    return group_ == other.group_ && membership_ == other.membership_;
  }

private:
  GridGroup group_;
  std::vector<bool> membership_;
  std::int64_t cardinality_ = 0;
};

GroupSet unite(const GroupSet& a, const GroupSet& b);
GroupSet intersect(const GroupSet& a, const GroupSet& b);
GroupSet complement(const GroupSet& a);
GroupSet translate(const GroupSet& a, std::int64_t shift);
GroupSet reflect(const GroupSet& a);
Rational symm_diff_measure(const GroupSet& a, const GroupSet& b);
std::int64_t symm_diff_count(const GroupSet& a, const GroupSet& b);

// Character x -> sum_i xi_i * x_i / N_i mod 1, with order L = size of the
// image circle.  Evaluation is exact integer arithmetic on the L-point
// circle: eval_times_order(x) = phi(x)*L in Z/L.
class Character {
public:
  Character(GridGroup group, std::vector<std::int64_t> freq);

  const GridGroup& group() const { return group_; }
  const std::vector<std::int64_t>& freq() const { return freq_; }
  std::int64_t order() const { return order_; }
  bool is_zero() const { return order_ == 1; }

  std::int64_t eval_times_order(std::int64_t index) const;
  // phi(x)*L for every linear index x, computed in one pass.
  std::vector<std::int64_t> phase_table() const;

  // Canonical representative of the conjugate class {xi, -xi}:
  // the lexicographically smaller of the two frequency vectors.
  std::vector<std::int64_t> class_representative() const;

private:
  GridGroup group_;
  std::vector<std::int64_t> freq_;
  std::vector<std::int64_t> coeffs_;  // xi_i * L / N_i mod L
  std::int64_t order_ = 1;
};

std::int64_t character_order(const GridGroup& group, std::span<const std::int64_t> freq);

// Frequency vectors xi and -xi carry the same structure; this folds a
// vector onto the canonical class representative.
std::vector<std::int64_t> character_class_representative(const GridGroup& group,
                                                         std::span<const std::int64_t> freq);

// Cyclic arc {start, ..., start+length-1 mod L} on the L-point circle.
struct Arc {
  std::int64_t circle_size = 1;
  std::int64_t start = 0;
  std::int64_t length = 1;

  bool contains(std::int64_t residue) const {
    std::int64_t d = residue - start;
    d %= circle_size;
    if (d < 0) d += circle_size;
    return d < length;
  }
  Rational measure() const { return Rational(length, circle_size); }
  void validate() const;
  bool operator==(const Arc&) const = default;
};

struct BohrDescription {
  Character character;
  Arc arc;

  static BohrDescription from_json(const GridGroup& group, const nlohmann::json& j);
  nlohmann::json to_json() const;
};

GroupSet bohr_set(const BohrDescription& desc);

bool is_prime(std::int64_t n);

}  // namespace sumlab
