#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace sec {

// Planar multi-channel raster: data laid out [channel][row][col], values in
// [0,1].  Height and width must each be >= 2 so the centered spectrum index
// range is non-degenerate.
struct Image {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<double> data;

    static Image zeros(int channels, int height, int width);

    double& at(int c, int y, int x) {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    double at(int c, int y, int x) const {
        return data[(static_cast<size_t>(c) * height + y) * width + x];
    }
    const double* channel(int c) const {
        return data.data() + static_cast<size_t>(c) * height * width;
    }
    double* channel(int c) {
        return data.data() + static_cast<size_t>(c) * height * width;
    }
    size_t pixel_count() const { return static_cast<size_t>(height) * width; }
};

// Throws DataError if dimensions are out of contract or any value is
// non-finite or outside [0,1].
void validate_image(const Image& img, const std::string& what);

// Clamp every value into [0,1]; non-finite values raise DataError.
void clamp_image(Image& img, const std::string& what);

// Row-major list of 2D sample points, one per pixel: [pixel][x, y].
struct CoordGrid {
    int height = 0;
    int width = 0;
    std::vector<double> pts;

    size_t count() const { return static_cast<size_t>(height) * width; }
    const double* point(size_t i) const { return pts.data() + 2 * i; }
};

// Pixel-center coordinates over [-1,1]^2: column m maps to
// x = -1 + 2(m+0.5)/W and row n to y = -1 + 2(n+0.5)/H, so no sample sits on
// the domain boundary and resampling at another resolution stays aligned.
CoordGrid pixel_center_grid(int height, int width);

}  // namespace sec
