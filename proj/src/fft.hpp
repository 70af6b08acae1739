#pragma once

#include <complex>
#include <vector>

namespace thetapr::detail {

// Unnormalized DFT of v in place; sign -1 is the forward transform,
// sign +1 the backward one. Any length.
void fft(std::vector<std::complex<double>>& v, int sign);

} // namespace thetapr::detail
