#include "sec/corpus.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

#include "sec/errors.hpp"
#include "sec/rng.hpp"

namespace sec {
namespace {

// reflect-101: ...3 2 1 | 0 1 2 3 | 2 1 0...
int reflect(int i, int n) {
    if (n == 1) return 0;
    const int period = 2 * (n - 1);
    i = ((i % period) + period) % period;
    return i < n ? i : period - i;
}

std::vector<double> gaussian_kernel(double sigma) {
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    std::vector<double> k(2 * radius + 1);
    double total = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        k[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        total += k[i + radius];
    }
    for (double& v : k) v /= total;
    return k;
}

}  // namespace

Image white_noise(int channels, int height, int width, uint64_t seed) {
    Image img = Image::zeros(channels, height, width);
    Rng rng(seed);
    for (double& v : img.data) v = rng.uniform01();
    return img;
}

Image gaussian_blur(const Image& img, double sigma) {
    if (sigma < 0.0) throw DataError("gaussian_blur: sigma must be non-negative");
    if (sigma == 0.0) return img;
    const auto kernel = gaussian_kernel(sigma);
    const int radius = (static_cast<int>(kernel.size()) - 1) / 2;
    const int h = img.height, w = img.width;

    Image tmp = Image::zeros(img.channels, h, w);
    for (int c = 0; c < img.channels; ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k)
                    acc += kernel[k + radius] * img.at(c, y, reflect(x + k, w));
                tmp.at(c, y, x) = acc;
            }
        }
    }
    Image out = Image::zeros(img.channels, h, w);
    for (int c = 0; c < img.channels; ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                double acc = 0.0;
                for (int k = -radius; k <= radius; ++k)
                    acc += kernel[k + radius] * tmp.at(c, reflect(y + k, h), x);
                out.at(c, y, x) = acc;
            }
        }
    }
    // Convolving values in [0,1] with a normalized kernel stays in [0,1] up
    // to roundoff; clamp to keep the Image invariant airtight.
    clamp_image(out, "gaussian_blur");
    return out;
}

Image cosine_grating(int channels, int height, int width, int freq, int axis) {
    const int extent = axis == 0 ? height : width;
    if (freq < 1 || 2 * freq >= extent)
        throw DataError("cosine_grating: frequency must satisfy 1 <= freq < extent/2");
    Image img = Image::zeros(channels, height, width);
    const double tau = 2.0 * std::numbers::pi;
    for (int c = 0; c < channels; ++c)
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x) {
                const int n = axis == 0 ? y : x;
                img.at(c, y, x) = 0.5 + 0.5 * std::cos(tau * freq * n / extent);
            }
    clamp_image(img, "cosine_grating");
    return img;
}

std::vector<CorpusImage> blur_ladder(int count, int channels, int height, int width,
                                     uint64_t seed) {
    static const double kSigmas[] = {0.0, 1.0, 2.0, 4.0, 8.0};
    std::vector<CorpusImage> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double sigma = kSigmas[i % 5];
        CorpusImage ci;
        char id[64];
        std::snprintf(id, sizeof(id), "noise%02d_s%.1f", i, sigma);
        ci.id = id;
        ci.blur_sigma = sigma;
        ci.image = gaussian_blur(white_noise(channels, height, width, mix_seed(seed, i)), sigma);
        out.push_back(std::move(ci));
    }
    return out;
}

}  // namespace sec
