#pragma once

#include <vector>

#include "sec/image.hpp"

namespace sec {

// Peak signal-to-noise ratio at peak 1.0; MSE over all channels and pixels.
// Identical images give +infinity.
double psnr(const Image& a, const Image& b);

// Mean SSIM over valid 11x11 windows (Gaussian weights, sigma=1.5), computed
// on the channel-mean luminance; C1=0.01^2, C2=0.03^2 at peak 1.0.
double ssim(const Image& a, const Image& b);

// Spearman rank correlation, average ranks on ties.  Throws DataError for
// length < 3, length mismatch, or a constant input.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

// Fraction of positions where the two lists agree exactly.
double selection_accuracy(const std::vector<double>& selected,
                          const std::vector<double>& oracle);

}  // namespace sec
