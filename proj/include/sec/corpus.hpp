#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sec/image.hpp"

// Synthetic test imagery.  The blur ladder (white noise at increasing
// Gaussian blur) spans a wide range of spectral centroids, and cosine
// gratings put all their energy in one exactly-known radial bin, so both
// serve as analytic ground truth for the spectral pipeline and as a
// download-free training corpus.

namespace sec {

Image white_noise(int channels, int height, int width, uint64_t seed);

// Separable Gaussian blur, kernel truncated at 3*sigma, reflect-101 borders.
// sigma = 0 returns the input unchanged.
Image gaussian_blur(const Image& img, double sigma);

// A[n,m] = 0.5 + 0.5*cos(2*pi*freq*n/H) (axis=0, varying along rows) or the
// analogous pattern along columns (axis=1).  With the DC bin excluded, the
// whole spectrum sits in radial bin `freq`, so SEC == freq.
// Requires 1 <= freq < extent/2 so the two conjugate peaks stay distinct.
Image cosine_grating(int channels, int height, int width, int freq, int axis = 0);

struct CorpusImage {
    std::string id;
    Image image;
    double blur_sigma = 0.0;
};

// `count` white-noise images cycling through blur sigmas {0,1,2,4,8}px,
// deterministic in `seed`.  Ids look like "noise03_s2.0".
std::vector<CorpusImage> blur_ladder(int count, int channels, int height, int width,
                                     uint64_t seed);

}  // namespace sec
