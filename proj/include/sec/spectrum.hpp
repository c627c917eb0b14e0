#pragma once

#include <string>
#include <vector>

#include "sec/image.hpp"

namespace sec {

// How the radial energy spectrum is accumulated.
struct SpectrumVariant {
    bool squared = true;     // |F|^2 per bin (false: |F|)
    bool include_dc = false; // keep the radius-0 (mean brightness) bin
};

enum class SecStatistic { mean, median };

SecStatistic parse_sec_statistic(const std::string& s);
const char* name(SecStatistic s);

// Full description of a SEC measurement.
struct SecVariant {
    SecStatistic statistic = SecStatistic::mean;
    SpectrumVariant spectrum;
};

// Wrap a centered frequency index back into standard DFT order.
inline int shift_index(int u, int n) { return ((u % n) + n) % n; }

// Largest radial bin index for an NxM image.
int max_radius(int height, int width);

// Radial energy spectrum, length max_radius(h,w)+1: bin r collects
// sum over channels of the chosen magnitude measure at every centered
// frequency (u,v) with floor(sqrt(u^2+v^2)) == r.  Centered indices run over
// [-floor(N/2), ceil(N/2)-1] per axis.
std::vector<double> radial_energy(const Image& img, const SpectrumVariant& variant);

// Spectral energy centroid of a radial spectrum.  'mean' is the expectation
// of r under the L1-normalized spectrum; 'median' the smallest r whose
// cumulative normalized energy reaches 0.5.  An all-zero spectrum has no
// energy to locate and yields 0 by convention.
double sec_from_spectrum(const std::vector<double>& energy, SecStatistic stat);

double image_sec(const Image& img, const SecVariant& variant);

}  // namespace sec
