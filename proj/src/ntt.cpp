#include <cstdint>
#include <stdexcept>
#include <vector>

#include "sumlab/conv.hpp"

namespace sumlab::detail {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Two NTT-friendly primes; p1*p2 ~ 1e18 comfortably covers every pair count
// at grid scale (counts are bounded by min(|A|,|B|) <= N).
constexpr u64 kPrimes[2] = {998244353ULL, 1004535809ULL};
constexpr u64 kRoots[2] = {3ULL, 3ULL};

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// In-place radix-2 NTT of length n (a power of two dividing 2^21).
void ntt_pow2(std::vector<u64>& a, bool inverse, u64 p, u64 g) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = powmod(g, (p - 1) / len, p);
    if (inverse) w = powmod(w, p - 2, p);
    for (std::size_t i = 0; i < n; i += len) {
      u64 wn = 1;
      for (std::size_t k = 0; k < len / 2; ++k) {
        u64 u = a[i + k];
        u64 v = mulmod(a[i + k + len / 2], wn, p);
        a[i + k] = u + v < p ? u + v : u + v - p;
        a[i + k + len / 2] = u >= v ? u - v : u + p - v;
        wn = mulmod(wn, w, p);
      }
    }
  }
  if (inverse) {
    u64 inv_n = powmod(n % p, p - 2, p);
    for (auto& x : a) x = mulmod(x, inv_n, p);
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Transform every axis of a row-major d-dimensional array.
void ntt_nd(std::vector<u64>& data, const std::vector<std::size_t>& dims, bool inverse, u64 p,
            u64 g) {
  std::size_t total = data.size();
  std::size_t stride = total;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    std::size_t n = dims[axis];
    stride /= n;
    std::vector<u64> line(n);
    std::size_t outer = total / (n * stride);
    for (std::size_t o = 0; o < outer; ++o) {
      std::size_t base = o * n * stride;
      for (std::size_t s = 0; s < stride; ++s) {
        for (std::size_t c = 0; c < n; ++c) line[c] = data[base + c * stride + s];
        ntt_pow2(line, inverse, p, g);
        for (std::size_t c = 0; c < n; ++c) data[base + c * stride + s] = line[c];
      }
    }
  }
}

u64 crt_pair(u64 r1, u64 r2) {
  // x = r1 + p1 * ((r2 - r1) * p1^{-1} mod p2), 0 <= x < p1*p2.
  static const u64 inv_p1 = powmod(kPrimes[0] % kPrimes[1], kPrimes[1] - 2, kPrimes[1]);
  u64 d = r2 >= r1 % kPrimes[1] ? r2 - r1 % kPrimes[1] : r2 + kPrimes[1] - r1 % kPrimes[1];
  u64 k = mulmod(d, inv_p1, kPrimes[1]);
  return r1 + kPrimes[0] * k;
}

}  // namespace

std::vector<std::int64_t> ntt_cyclic_convolve(const GridGroup& group,
                                              const std::vector<std::int64_t>& a,
                                              const std::vector<std::int64_t>& b) {
  const auto& dims = group.dims();
  // Pad each axis past 2*N-1 so the padded cyclic convolution is linear,
  // then fold the linear result back mod the true axis lengths.
  std::vector<std::size_t> padded(dims.size());
  std::size_t padded_total = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    padded[i] = next_pow2(static_cast<std::size_t>(2 * dims[i] - 1));
    padded_total *= padded[i];
  }

  auto embed = [&](const std::vector<std::int64_t>& src, u64 p) {
    std::vector<u64> dst(padded_total, 0);
    for (std::int64_t idx = 0; idx < group.size(); ++idx) {
      if (src[static_cast<std::size_t>(idx)] == 0) continue;
      auto c = group.coords(idx);
      std::size_t pos = 0;
      for (std::size_t i = 0; i < c.size(); ++i) pos = pos * padded[i] + static_cast<std::size_t>(c[i]);
      dst[pos] = static_cast<u64>(src[static_cast<std::size_t>(idx)]) % p;
    }
    return dst;
  };

  std::vector<u64> residues[2];
  for (int pi = 0; pi < 2; ++pi) {
    u64 p = kPrimes[pi], g = kRoots[pi];
    auto fa = embed(a, p);
    auto fb = embed(b, p);
    ntt_nd(fa, padded, false, p, g);
    ntt_nd(fb, padded, false, p, g);
    for (std::size_t i = 0; i < padded_total; ++i) fa[i] = mulmod(fa[i], fb[i], p);
    ntt_nd(fa, padded, true, p, g);
    residues[pi] = std::move(fa);
  }

  std::vector<std::int64_t> out(static_cast<std::size_t>(group.size()), 0);
  std::vector<std::size_t> coord(dims.size(), 0);
  for (std::size_t pos = 0; pos < padded_total; ++pos) {
    u64 v1 = residues[0][pos];
    u64 v2 = residues[1][pos];
    if (v1 != 0 || v2 != 0) {
      u64 value = crt_pair(v1, v2);
      std::size_t target = 0;
      for (std::size_t i = 0; i < dims.size(); ++i) {
        std::size_t c = coord[i] % static_cast<std::size_t>(dims[i]);
        target = target * static_cast<std::size_t>(dims[i]) + c;
      }
      out[target] += static_cast<std::int64_t>(value);
    }
    // advance padded coordinate (row-major)
    for (std::size_t i = dims.size(); i-- > 0;) {
      if (++coord[i] < padded[i]) break;
      coord[i] = 0;
    }
  }
  return out;
}

}  // namespace sumlab::detail
