#include "sec/image.hpp"

#include <cmath>

#include "sec/errors.hpp"

namespace sec {

Image Image::zeros(int channels, int height, int width) {
    Image img;
    img.channels = channels;
    img.height = height;
    img.width = width;
    img.data.assign(static_cast<size_t>(channels) * height * width, 0.0);
    return img;
}

void validate_image(const Image& img, const std::string& what) {
    if (img.channels < 1)
        throw DataError(what + ": image needs at least one channel");
    if (img.height < 2 || img.width < 2)
        throw DataError(what + ": image dimensions must be at least 2x2, got " +
                        std::to_string(img.height) + "x" + std::to_string(img.width));
    if (img.data.size() != static_cast<size_t>(img.channels) * img.height * img.width)
        throw DataError(what + ": image buffer size does not match dimensions");
    for (double v : img.data) {
        if (!std::isfinite(v))
            throw DataError(what + ": image contains a non-finite value");
        if (v < 0.0 || v > 1.0)
            throw DataError(what + ": image value outside [0,1]");
    }
}

void clamp_image(Image& img, const std::string& what) {
    for (double& v : img.data) {
        if (!std::isfinite(v))
            throw DataError(what + ": non-finite value cannot be clamped");
        if (v < 0.0) v = 0.0;
        if (v > 1.0) v = 1.0;
    }
}

CoordGrid pixel_center_grid(int height, int width) {
    CoordGrid g;
    g.height = height;
    g.width = width;
    g.pts.resize(2 * static_cast<size_t>(height) * width);
    size_t k = 0;
    for (int n = 0; n < height; ++n) {
        const double y = -1.0 + 2.0 * (n + 0.5) / height;
        for (int m = 0; m < width; ++m) {
            g.pts[k++] = -1.0 + 2.0 * (m + 0.5) / width;
            g.pts[k++] = y;
        }
    }
    return g;
}

}  // namespace sec
