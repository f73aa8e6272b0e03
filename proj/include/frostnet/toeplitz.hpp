#pragma once

#include <vector>

namespace frostnet {

// r[d] = sum_i x[i] x[i+d] for d in [0, n).
std::vector<double> autocorrelation(const std::vector<double>& x);

// y[i] = sum_j kernel[|i-j|] x[j]; kernel has the same length as x.
std::vector<double> symmetric_toeplitz_apply(const std::vector<double>& kernel,
                                             const std::vector<double>& x);

}  // namespace frostnet
