#include "sumlab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sumlab {
namespace {

using cd = std::complex<double>;

void fft_pow2(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    cd wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cd w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        cd u = a[i + k];
        cd v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Bluestein: arbitrary-length DFT as a linear convolution with a chirp.
void dft_any(std::vector<cd>& a, int sign) {
  const std::size_t n = a.size();
  if (n == 0) return;
  if ((n & (n - 1)) == 0) {
    fft_pow2(a, sign);
    return;
  }
  std::vector<cd> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    // angle uses k^2 mod 2n to keep the argument small
    std::size_t q = static_cast<std::size_t>((static_cast<unsigned __int128>(k) * k) % (2 * n));
    double ang = sign * std::numbers::pi * static_cast<double>(q) / static_cast<double>(n);
    chirp[k] = cd(std::cos(ang), std::sin(ang));
  }
  std::size_t m = next_pow2(2 * n - 1);
  std::vector<cd> u(m, cd(0, 0)), v(m, cd(0, 0));
  for (std::size_t k = 0; k < n; ++k) u[k] = a[k] * chirp[k];
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = std::conj(chirp[k]);
    if (k != 0) v[m - k] = std::conj(chirp[k]);
  }
  fft_pow2(u, -1);
  fft_pow2(v, -1);
  for (std::size_t k = 0; k < m; ++k) u[k] *= v[k];
  fft_pow2(u, +1);
  for (std::size_t k = 0; k < n; ++k) a[k] = u[k] * chirp[k] / static_cast<double>(m);
}

}  // namespace

void dft_nd(std::vector<cd>& data, const std::vector<std::int64_t>& dims, int sign) {
  std::size_t total = data.size();
  std::size_t expected = 1;
  for (auto d : dims) expected *= static_cast<std::size_t>(d);
  if (expected != total) throw std::invalid_argument("dft_nd: dims do not match data size");
  std::size_t stride = total;
  for (std::size_t axis = 0; axis < dims.size(); ++axis) {
    std::size_t n = static_cast<std::size_t>(dims[axis]);
    stride /= n;
    std::vector<cd> line(n);
    std::size_t outer = total / (n * stride);
    for (std::size_t o = 0; o < outer; ++o) {
      std::size_t base = o * n * stride;
      for (std::size_t s = 0; s < stride; ++s) {
        for (std::size_t c = 0; c < n; ++c) line[c] = data[base + c * stride + s];
        dft_any(line, sign);
        for (std::size_t c = 0; c < n; ++c) data[base + c * stride + s] = line[c];
      }
    }
  }
}

}  // namespace sumlab
