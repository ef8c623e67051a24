#pragma once

#include <cstdint>
#include <vector>

#include "sumlab/group.hpp"
#include "sumlab/rational.hpp"

namespace sumlab {

// Integer pair-count vector counts(x) = #{(a,b) in A x B : a+b = x}.
// counts(x)/N is the grid value of the normalized convolution 1_A * 1_B.
struct ConvolutionProfile {
  GridGroup group;
  std::vector<std::int64_t> counts;

  std::int64_t total_mass() const;
  std::int64_t max_count() const;
  std::int64_t support_size() const;
  Rational normalized(std::int64_t x) const {
    return Rational(counts[static_cast<std::size_t>(x)], group.size());
  }
};

// Exact cyclic convolution of the indicators.  Dispatches between the
// direct pair loop (small N) and the NTT/CRT transform path (large N);
// the two are bit-identical and the test suite enforces it.
ConvolutionProfile convolve(const GroupSet& a, const GroupSet& b);

// The two concrete paths, exposed so tests can cross-check them.
ConvolutionProfile convolve_direct(const GroupSet& a, const GroupSet& b);
ConvolutionProfile convolve_ntt(const GroupSet& a, const GroupSet& b);

GroupSet sumset(const GroupSet& a, const GroupSet& b);
GroupSet partial_sumset(const GroupSet& a, const GroupSet& b, const Rational& threshold);
GroupSet iterated_sumset(const GroupSet& c, std::int64_t k);
ConvolutionProfile difference_profile(const GroupSet& a);

GroupSet threshold_set(const ConvolutionProfile& profile, const Rational& threshold);

namespace detail {
// Exact cyclic convolution of two integer arrays over the grid group,
// via power-of-two NTTs on zero-padded axes and CRT over two primes.
std::vector<std::int64_t> ntt_cyclic_convolve(const GridGroup& group,
                                              const std::vector<std::int64_t>& a,
                                              const std::vector<std::int64_t>& b);
}  // namespace detail

}  // namespace sumlab
