#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace sumlab {

// Floating-point DFT over a product of cyclic groups, used only for
// spectral magnitudes (set measures stay exact elsewhere).
// sign = -1 gives X(k) = sum_x f(x) e^{-2 pi i <k,x>}, unnormalized.
void dft_nd(std::vector<std::complex<double>>& data, const std::vector<std::int64_t>& dims,
            int sign);

}  // namespace sumlab
