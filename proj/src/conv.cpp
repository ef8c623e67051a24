#include "sumlab/conv.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumlab {

namespace {
constexpr std::int64_t kDirectThreshold = 2048;  // direct pair loop below, NTT above

void require_same_group(const GroupSet& a, const GroupSet& b) {
  if (a.group() != b.group()) throw std::invalid_argument("group mismatch");
}
}  // namespace

std::int64_t ConvolutionProfile::total_mass() const {
  std::int64_t s = 0;
  for (std::int64_t c : counts) s += c;
  return s;
}

std::int64_t ConvolutionProfile::max_count() const {
  return counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

std::int64_t ConvolutionProfile::support_size() const {
  return std::count_if(counts.begin(), counts.end(), [](std::int64_t c) { return c > 0; });
}

ConvolutionProfile convolve_direct(const GroupSet& a, const GroupSet& b) {
  require_same_group(a, b);
  const auto& g = a.group();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(g.size()), 0);
  auto ma = a.member_indices();
  auto mb = b.member_indices();
  if (g.dim_count() == 1) {
    std::int64_t n = g.size();
    for (std::int64_t x : ma)
      for (std::int64_t y : mb) {
        std::int64_t s = x + y;
        if (s >= n) s -= n;
        ++counts[static_cast<std::size_t>(s)];
      }
  } else {
    for (std::int64_t x : ma)
      for (std::int64_t y : mb) ++counts[static_cast<std::size_t>(g.add(x, y))];
  }
  return ConvolutionProfile{g, std::move(counts)};
}

ConvolutionProfile convolve_ntt(const GroupSet& a, const GroupSet& b) {
  require_same_group(a, b);
  const auto& g = a.group();
  std::vector<std::int64_t> fa(static_cast<std::size_t>(g.size()), 0);
  std::vector<std::int64_t> fb(static_cast<std::size_t>(g.size()), 0);
  for (std::int64_t i = 0; i < g.size(); ++i) {
    if (a.contains(i)) fa[static_cast<std::size_t>(i)] = 1;
    if (b.contains(i)) fb[static_cast<std::size_t>(i)] = 1;
  }
  return ConvolutionProfile{g, detail::ntt_cyclic_convolve(g, fa, fb)};
}

ConvolutionProfile convolve(const GroupSet& a, const GroupSet& b) {
  require_same_group(a, b);
  if (a.group().size() <= kDirectThreshold) return convolve_direct(a, b);
  return convolve_ntt(a, b);
}

GroupSet threshold_set(const ConvolutionProfile& profile, const Rational& threshold) {
  // counts(x)/N >= t, compared exactly.
  const std::int64_t n = profile.group.size();
  std::vector<bool> m(profile.counts.size(), false);
  for (std::size_t i = 0; i < profile.counts.size(); ++i) {
    __int128 lhs = static_cast<__int128>(profile.counts[i]) * threshold.den();
    __int128 rhs = static_cast<__int128>(threshold.num()) * n;
    m[i] = lhs >= rhs;
  }
  return GroupSet(profile.group, std::move(m));
}

GroupSet sumset(const GroupSet& a, const GroupSet& b) {
  if (a.is_empty() || b.is_empty()) throw std::invalid_argument("sumset: empty operand");
  auto profile = convolve(a, b);
  std::vector<bool> m(profile.counts.size(), false);
  for (std::size_t i = 0; i < profile.counts.size(); ++i) m[i] = profile.counts[i] > 0;
  return GroupSet(a.group(), std::move(m));
}

GroupSet partial_sumset(const GroupSet& a, const GroupSet& b, const Rational& threshold) {
  require_same_group(a, b);
  if (threshold <= Rational(0) || threshold > Rational(1))
    throw std::invalid_argument("partial_sumset: threshold must lie in (0, 1]");
  return threshold_set(convolve(a, b), threshold);
}

GroupSet iterated_sumset(const GroupSet& c, std::int64_t k) {
  if (k < 1) throw std::invalid_argument("iterated_sumset: k must be >= 1");
  if (c.is_empty()) throw std::invalid_argument("iterated_sumset: empty operand");
  GroupSet acc = c;
  for (std::int64_t i = 1; i < k; ++i) acc = sumset(acc, c);
  return acc;
}

ConvolutionProfile difference_profile(const GroupSet& a) {
  if (a.is_empty()) throw std::invalid_argument("difference_profile: empty input");
  return convolve(a, reflect(a));
}

}  // namespace sumlab
