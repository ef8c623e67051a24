#include "sumlab/group.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace sumlab {

GridGroup::GridGroup(std::vector<std::int64_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("GridGroup: dims must be non-empty");
  for (std::int64_t n : dims_) {
    if (n < 2) throw std::invalid_argument("GridGroup: every modulus must be >= 2");
    if (size_ > (std::int64_t{1} << 40) / n)
      throw std::invalid_argument("GridGroup: total size too large");
    size_ *= n;
  }
  strides_.assign(dims_.size(), 1);
  for (int i = dim_count() - 2; i >= 0; --i)
    strides_[static_cast<std::size_t>(i)] =
        strides_[static_cast<std::size_t>(i) + 1] * dims_[static_cast<std::size_t>(i) + 1];
}

GridGroup make_group(std::vector<std::int64_t> dims) { return GridGroup(std::move(dims)); }

std::vector<std::int64_t> GridGroup::coords(std::int64_t index) const {
  std::vector<std::int64_t> c(dims_.size());
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    c[i] = (index / strides_[i]) % dims_[i];
  }
  return c;
}

std::int64_t GridGroup::index(std::span<const std::int64_t> coords) const {
  if (coords.size() != dims_.size())
    throw std::invalid_argument("GridGroup::index: wrong coordinate count");
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    std::int64_t c = coords[i] % dims_[i];
    if (c < 0) c += dims_[i];
    idx += c * strides_[i];
  }
  return idx;
}

std::int64_t GridGroup::add(std::int64_t a, std::int64_t b) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    std::int64_t ca = (a / strides_[i]) % dims_[i];
    std::int64_t cb = (b / strides_[i]) % dims_[i];
    std::int64_t c = ca + cb;
    if (c >= dims_[i]) c -= dims_[i];
    idx += c * strides_[i];
  }
  return idx;
}

std::int64_t GridGroup::negate(std::int64_t a) const {
  std::int64_t idx = 0;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    std::int64_t ca = (a / strides_[i]) % dims_[i];
    std::int64_t c = ca == 0 ? 0 : dims_[i] - ca;
    idx += c * strides_[i];
  }
  return idx;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool GridGroup::has_proper_subgroup() const {
  return dim_count() > 1 || !is_prime(dims_[0]);
}

GroupSet::GroupSet(GridGroup group, std::vector<bool> membership)
    : group_(std::move(group)), membership_(std::move(membership)) {
  if (static_cast<std::int64_t>(membership_.size()) != group_.size())
    throw std::invalid_argument("GroupSet: membership size mismatch");
  cardinality_ = std::count(membership_.begin(), membership_.end(), true);
}

GroupSet GroupSet::empty(const GridGroup& group) {
  return GroupSet(group, std::vector<bool>(static_cast<std::size_t>(group.size()), false));
}

GroupSet GroupSet::full(const GridGroup& group) {
  return GroupSet(group, std::vector<bool>(static_cast<std::size_t>(group.size()), true));
}

GroupSet GroupSet::of(const GridGroup& group, std::span<const std::int64_t> members) {
  std::vector<bool> m(static_cast<std::size_t>(group.size()), false);
  for (std::int64_t i : members) {
    if (i < 0 || i >= group.size()) throw std::invalid_argument("GroupSet::of: index out of range");
    m[static_cast<std::size_t>(i)] = true;
  }
  return GroupSet(group, std::move(m));
}

GroupSet GroupSet::interval(const GridGroup& group, std::int64_t start, std::int64_t length) {
  if (group.dim_count() != 1)
    throw std::invalid_argument("GroupSet::interval: 1-d groups only");
  if (length < 0 || length > group.size())
    throw std::invalid_argument("GroupSet::interval: bad length");
  std::vector<bool> m(static_cast<std::size_t>(group.size()), false);
  for (std::int64_t k = 0; k < length; ++k) {
    std::int64_t x = (start + k) % group.size();
    if (x < 0) x += group.size();
    m[static_cast<std::size_t>(x)] = true;
  }
  return GroupSet(group, std::move(m));
}

std::vector<std::int64_t> GroupSet::member_indices() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(cardinality_));
  for (std::int64_t i = 0; i < group_.size(); ++i)
    if (membership_[static_cast<std::size_t>(i)]) out.push_back(i);
  return out;
}

GroupSet GroupSet::from_json(const nlohmann::json& j) {
  GridGroup group(j.at("dims").get<std::vector<std::int64_t>>());
  auto members = j.at("members").get<std::vector<std::int64_t>>();
  for (std::size_t i = 1; i < members.size(); ++i)
    if (members[i] <= members[i - 1])
      throw std::invalid_argument("GroupSet::from_json: members must be strictly increasing");
  return of(group, members);
}

nlohmann::json GroupSet::to_json() const {
  return nlohmann::json{{"dims", group_.dims()}, {"members", member_indices()}};
}

namespace {
void require_same_group(const GroupSet& a, const GroupSet& b) {
  if (a.group() != b.group()) throw std::invalid_argument("group mismatch");
}
}  // namespace

GroupSet unite(const GroupSet& a, const GroupSet& b) {
  require_same_group(a, b);
  std::vector<bool> m(a.membership());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (b.membership()[i]) m[i] = true;
  return GroupSet(a.group(), std::move(m));
}

GroupSet intersect(const GroupSet& a, const GroupSet& b) {
  require_same_group(a, b);
  std::vector<bool> m(a.membership());
  for (std::size_t i = 0; i < m.size(); ++i)
    if (!b.membership()[i]) m[i] = false;
  return GroupSet(a.group(), std::move(m));
}

GroupSet complement(const GroupSet& a) {
  std::vector<bool> m(a.membership());
  m.flip();
  return GroupSet(a.group(), std::move(m));
}

GroupSet translate(const GroupSet& a, std::int64_t shift) {
  const auto& g = a.group();
  std::vector<bool> m(static_cast<std::size_t>(g.size()), false);
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (a.contains(i)) m[static_cast<std::size_t>(g.add(i, shift))] = true;
  return GroupSet(g, std::move(m));
}

GroupSet reflect(const GroupSet& a) {
  const auto& g = a.group();
  std::vector<bool> m(static_cast<std::size_t>(g.size()), false);
  for (std::int64_t i = 0; i < g.size(); ++i)
    if (a.contains(i)) m[static_cast<std::size_t>(g.negate(i))] = true;
  return GroupSet(g, std::move(m));
}

std::int64_t symm_diff_count(const GroupSet& a, const GroupSet& b) {
  require_same_group(a, b);
  std::int64_t count = 0;
  for (std::size_t i = 0; i < a.membership().size(); ++i)
    if (a.membership()[i] != b.membership()[i]) ++count;
  return count;
}

Rational symm_diff_measure(const GroupSet& a, const GroupSet& b) {
  return Rational(symm_diff_count(a, b), a.group().size());
}

std::int64_t character_order(const GridGroup& group, std::span<const std::int64_t> freq) {
  if (static_cast<int>(freq.size()) != group.dim_count())
    throw std::invalid_argument("character_order: frequency dimension mismatch");
  std::int64_t order = 1;
  for (std::size_t i = 0; i < freq.size(); ++i) {
    std::int64_t n = group.dims()[i];
    std::int64_t f = freq[i] % n;
    if (f < 0) f += n;
    std::int64_t g = std::gcd(f, n);  // gcd(0, n) = n, contributing order 1
    order = std::lcm(order, n / g);
  }
  return order;
}

Character::Character(GridGroup group, std::vector<std::int64_t> freq)
    : group_(std::move(group)), freq_(std::move(freq)) {
  if (static_cast<int>(freq_.size()) != group_.dim_count())
    throw std::invalid_argument("Character: frequency dimension mismatch");
  for (std::size_t i = 0; i < freq_.size(); ++i) {
    std::int64_t n = group_.dims()[i];
    freq_[i] %= n;
    if (freq_[i] < 0) freq_[i] += n;
  }
  order_ = character_order(group_, freq_);
  coeffs_.resize(freq_.size());
  for (std::size_t i = 0; i < freq_.size(); ++i) {
    std::int64_t n = group_.dims()[i];
    std::int64_t g = std::gcd(freq_[i], n);
    // xi * L / N is an integer because (N / gcd(xi, N)) divides L.
    coeffs_[i] = ((freq_[i] / g) % order_) * ((order_ / (n / g)) % order_) % order_;
  }
}

std::int64_t Character::eval_times_order(std::int64_t index) const {
  auto c = group_.coords(index);
  std::int64_t v = 0;
  for (std::size_t i = 0; i < c.size(); ++i) v = (v + c[i] % order_ * coeffs_[i]) % order_;
  return v;
}

std::vector<std::int64_t> Character::phase_table() const {
  std::vector<std::int64_t> table(static_cast<std::size_t>(group_.size()), 0);
  // Build axis by axis: phases add under the row-major mixed-radix layout.
  std::int64_t block = group_.size();
  for (std::size_t axis = 0; axis < freq_.size(); ++axis) {
    std::int64_t n = group_.dims()[axis];
    block /= n;
    std::int64_t repeat = group_.size() / (block * n);
    std::size_t pos = 0;
    for (std::int64_t r = 0; r < repeat; ++r) {
      std::int64_t phase = 0;
      for (std::int64_t c = 0; c < n; ++c) {
        for (std::int64_t k = 0; k < block; ++k) {
          table[pos] = (table[pos] + phase) % order_;
          ++pos;
        }
        phase += coeffs_[axis];
        if (phase >= order_) phase -= order_;
      }
    }
  }
  return table;
}

std::vector<std::int64_t> character_class_representative(const GridGroup& group,
                                                         std::span<const std::int64_t> freq) {
  std::vector<std::int64_t> f(freq.begin(), freq.end());
  std::vector<std::int64_t> neg(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::int64_t n = group.dims()[i];
    f[i] %= n;
    if (f[i] < 0) f[i] += n;
    neg[i] = f[i] == 0 ? 0 : n - f[i];
  }
  return std::min(f, neg);
}

std::vector<std::int64_t> Character::class_representative() const {
  return character_class_representative(group_, freq_);
}

void Arc::validate() const {
  if (circle_size < 1) throw std::invalid_argument("Arc: circle size must be positive");
  if (start < 0 || start >= circle_size) throw std::invalid_argument("Arc: start out of range");
  if (length < 1 || length > circle_size) throw std::invalid_argument("Arc: bad length");
}

BohrDescription BohrDescription::from_json(const GridGroup& group, const nlohmann::json& j) {
  Character chi(group, j.at("freq").get<std::vector<std::int64_t>>());
  if (j.contains("order") && j.at("order").get<std::int64_t>() != chi.order())
    throw std::invalid_argument("BohrDescription: declared order does not match frequency");
  const auto& ja = j.at("arc");
  Arc arc{chi.order(), ja.at("start").get<std::int64_t>(), ja.at("length").get<std::int64_t>()};
  arc.validate();
  return BohrDescription{std::move(chi), arc};
}

nlohmann::json BohrDescription::to_json() const {
  return nlohmann::json{{"freq", character.freq()},
                        {"order", character.order()},
                        {"arc", {{"start", arc.start}, {"length", arc.length}}}};
}

GroupSet bohr_set(const BohrDescription& desc) {
  desc.arc.validate();
  if (desc.arc.circle_size != desc.character.order())
    throw std::invalid_argument("bohr_set: arc circle size must equal character order");
  if (desc.character.is_zero() && desc.arc.length != 1)
    throw std::invalid_argument("bohr_set: zero character admits no nontrivial arc");
  auto phases = desc.character.phase_table();
  std::vector<bool> m(phases.size(), false);
  for (std::size_t i = 0; i < phases.size(); ++i) m[i] = desc.arc.contains(phases[i]);
  GroupSet result(desc.character.group(), std::move(m));
  return result;
}

}  // namespace sumlab
