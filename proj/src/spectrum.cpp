#include "sec/spectrum.hpp"

#include <cmath>

#include "sec/errors.hpp"
#include "sec/fft.hpp"

namespace sec {

SecStatistic parse_sec_statistic(const std::string& s) {
    if (s == "mean") return SecStatistic::mean;
    if (s == "median") return SecStatistic::median;
    throw DataError("unknown SEC statistic '" + s + "' (expected mean|median)");
}

const char* name(SecStatistic s) {
    return s == SecStatistic::mean ? "mean" : "median";
}

int max_radius(int height, int width) {
    const double hu = std::ceil(height / 2.0);
    const double hv = std::ceil(width / 2.0);
    return static_cast<int>(std::floor(std::sqrt(hu * hu + hv * hv)));
}

std::vector<double> radial_energy(const Image& img, const SpectrumVariant& variant) {
    if (img.height < 2 || img.width < 2 || img.channels < 1)
        throw DataError("radial_energy: image must be at least 2x2 with one channel");
    const int n = img.height, m = img.width;
    std::vector<double> bins(max_radius(n, m) + 1, 0.0);
    for (int c = 0; c < img.channels; ++c) {
        const Spectrum2d spec = dft2d(img.channel(c), n, m);
        for (int u = -(n / 2); u <= (n + 1) / 2 - 1; ++u) {
            for (int v = -(m / 2); v <= (m + 1) / 2 - 1; ++v) {
                const double mag2 = std::norm(spec.at(shift_index(u, n), shift_index(v, m)));
                const int r = static_cast<int>(
                    std::floor(std::sqrt(static_cast<double>(u) * u + static_cast<double>(v) * v)));
                bins[r] += variant.squared ? mag2 : std::sqrt(mag2);
            }
        }
    }
    // Transform floor noise puts ~1e-17-relative garbage in bins that are
    // exactly zero in real arithmetic (constant image, pure grating).  Snap
    // bins below the fp noise floor — measured against the DC-inclusive
    // total — so "all-zero spectrum" is actually reachable.
    double total = 0.0;
    for (double b : bins) total += b;
    const double floor_rel = variant.squared ? 1e-24 : 1e-12;
    for (double& b : bins)
        if (b <= floor_rel * total) b = 0.0;
    if (!variant.include_dc) bins[0] = 0.0;
    return bins;
}

double sec_from_spectrum(const std::vector<double>& energy, SecStatistic stat) {
    double total = 0.0;
    for (double e : energy) {
        if (e < 0.0 || !std::isfinite(e))
            throw DataError("sec_from_spectrum: spectrum entries must be finite and non-negative");
        total += e;
    }
    if (total == 0.0) return 0.0;
    if (stat == SecStatistic::mean) {
        // Weight by the normalized share so a single-bin spectrum lands on its
        // radius exactly (e/total == 1.0 bitwise).
        double acc = 0.0;
        for (size_t r = 0; r < energy.size(); ++r)
            acc += static_cast<double>(r) * (energy[r] / total);
        return acc;
    }
    double cum = 0.0;
    for (size_t r = 0; r < energy.size(); ++r) {
        cum += energy[r];
        if (cum >= 0.5 * total) return static_cast<double>(r);
    }
    return static_cast<double>(energy.size() - 1);  // unreachable with finite input
}

double image_sec(const Image& img, const SecVariant& variant) {
    return sec_from_spectrum(radial_energy(img, variant.spectrum), variant.statistic);
}

}  // namespace sec
