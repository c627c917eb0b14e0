#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "sec/corpus.hpp"
#include "sec/errors.hpp"
#include "sec/image.hpp"
#include "sec/metrics.hpp"

using namespace sec;

namespace {

// Direct per-window SSIM: 2D Gaussian weights accumulated window by window,
// no separable passes, as an independent check of the library pipeline.
double reference_ssim(const Image& a, const Image& b) {
    REQUIRE(a.channels == b.channels);
    REQUIRE(a.height == b.height);
    REQUIRE(a.width == b.width);
    const int h = a.height, w = a.width, win = 11;
    const size_t n_px = static_cast<size_t>(h) * w;

    auto lum = [&](const Image& img) {
        std::vector<double> out(n_px, 0.0);
        for (int c = 0; c < img.channels; ++c)
            for (size_t p = 0; p < n_px; ++p) out[p] += img.data[c * n_px + p];
        for (double& v : out) v /= img.channels;
        return out;
    };
    const std::vector<double> x = lum(a), y = lum(b);

    std::vector<double> w2(static_cast<size_t>(win) * win);
    double wsum = 0.0;
    for (int dy = 0; dy < win; ++dy)
        for (int dx = 0; dx < win; ++dx) {
            const double ry = dy - 5.0, rx = dx - 5.0;
            w2[dy * win + dx] = std::exp(-(rx * rx + ry * ry) / (2.0 * 1.5 * 1.5));
            wsum += w2[dy * win + dx];
        }
    for (double& v : w2) v /= wsum;

    double total = 0.0;
    int windows = 0;
    for (int y0 = 0; y0 + win <= h; ++y0)
        for (int x0 = 0; x0 + win <= w; ++x0) {
            double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
            for (int dy = 0; dy < win; ++dy)
                for (int dx = 0; dx < win; ++dx) {
                    const double wv = w2[dy * win + dx];
                    const double xv = x[(y0 + dy) * w + (x0 + dx)];
                    const double yv = y[(y0 + dy) * w + (x0 + dx)];
                    mx += wv * xv;
                    my += wv * yv;
                    mxx += wv * xv * xv;
                    myy += wv * yv * yv;
                    mxy += wv * xv * yv;
                }
            const double var_x = mxx - mx * mx, var_y = myy - my * my, cov = mxy - mx * my;
            const double c1 = 1e-4, c2 = 9e-4;
            total += ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
                     ((mx * mx + my * my + c1) * (var_x + var_y + c2));
            ++windows;
        }
    return total / windows;
}

Image constant_image(int c, int h, int w, double v) {
    Image img = Image::zeros(c, h, w);
    for (double& d : img.data) d = v;
    return img;
}

}  // namespace

TEST_CASE("psnr reference points") {
    const Image zeros = Image::zeros(3, 8, 8);
    CHECK(psnr(zeros, zeros) == std::numeric_limits<double>::infinity());
    CHECK(psnr(zeros, constant_image(3, 8, 8, 0.1)) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(psnr(zeros, constant_image(3, 8, 8, 1.0)) == 0.0);
}

TEST_CASE("psnr is symmetric and decreases with error magnitude") {
    const Image a = white_noise(3, 12, 12, 1);
    const Image b = white_noise(3, 12, 12, 2);
    CHECK(psnr(a, b) == psnr(b, a));
    // Noise is centered near 0.5, so a far-off constant has the larger error.
    CHECK(psnr(a, constant_image(3, 12, 12, 0.4)) > psnr(a, constant_image(3, 12, 12, 0.9)));
}

TEST_CASE("psnr rejects mismatched or invalid input") {
    const Image a = Image::zeros(3, 8, 8);
    CHECK_THROWS_AS(psnr(a, Image::zeros(3, 8, 9)), DataError);
    CHECK_THROWS_AS(psnr(a, Image::zeros(1, 8, 8)), DataError);
    Image bad = Image::zeros(3, 8, 8);
    bad.data[5] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(psnr(a, bad), DataError);
}

TEST_CASE("ssim of an image with itself is exactly one") {
    const Image a = white_noise(3, 16, 16, 9);
    CHECK(ssim(a, a) == 1.0);
    const Image tiny = white_noise(1, 11, 11, 4);  // single valid window
    CHECK(ssim(tiny, tiny) == 1.0);
}

TEST_CASE("ssim of flat black versus flat white is the luminance floor") {
    const Image black = Image::zeros(1, 16, 16);
    const Image white = constant_image(1, 16, 16, 1.0);
    // mu_x=0, mu_y=1, no variance: score reduces to C1/(1+C1).
    CHECK(ssim(black, white) == doctest::Approx(1e-4 / (1.0 + 1e-4)).epsilon(1e-12));
}

TEST_CASE("ssim is negative for a contrast-inverted texture") {
    const Image a = white_noise(1, 16, 16, 3);
    Image inv = a;
    for (double& v : inv.data) v = 1.0 - v;
    CHECK(ssim(a, inv) < 0.0);
}

TEST_CASE("ssim matches a direct per-window evaluation") {
    const Image a1 = white_noise(3, 16, 16, 101);
    const Image b1 = gaussian_blur(a1, 1.0);
    CHECK(std::fabs(ssim(a1, b1) - reference_ssim(a1, b1)) <= 1e-12);

    const Image a2 = white_noise(1, 20, 12, 202);  // non-square, single channel
    const Image b2 = white_noise(1, 20, 12, 303);
    CHECK(std::fabs(ssim(a2, b2) - reference_ssim(a2, b2)) <= 1e-12);

    const Image a3 = gaussian_blur(white_noise(3, 13, 18, 404), 2.0);
    Image b3 = a3;
    for (size_t i = 0; i < b3.data.size(); ++i) b3.data[i] = 0.8 * b3.data[i] + 0.1;
    CHECK(std::fabs(ssim(a3, b3) - reference_ssim(a3, b3)) <= 1e-12);
}

TEST_CASE("ssim degrades as the distortion grows") {
    const Image a = white_noise(3, 24, 24, 7);
    CHECK(ssim(a, gaussian_blur(a, 0.5)) > ssim(a, gaussian_blur(a, 2.0)));
}

TEST_CASE("ssim rejects images smaller than its window") {
    CHECK_THROWS_AS(ssim(Image::zeros(1, 10, 16), Image::zeros(1, 10, 16)), DataError);
    CHECK_THROWS_AS(ssim(Image::zeros(1, 16, 10), Image::zeros(1, 16, 10)), DataError);
    CHECK_THROWS_AS(ssim(Image::zeros(1, 16, 16), Image::zeros(1, 16, 15)), DataError);
}

TEST_CASE("spearman reference values") {
    CHECK(spearman({1, 2, 3, 4, 5}, {10, 20, 30, 40, 50}) == 1.0);
    CHECK(spearman({1, 2, 3, 4, 5}, {50, 40, 30, 20, 10}) == -1.0);
    CHECK(spearman({1, 2, 3, 4}, {1, 3, 2, 4}) == 0.8);
    CHECK(spearman({1, 2, 2, 3}, {10, 20, 20, 30}) == 1.0);  // matching tie pattern
}

TEST_CASE("spearman is invariant under monotone transforms") {
    const std::vector<double> x = {0.3, -1.2, 2.5, 0.9, -0.4, 1.7};
    const std::vector<double> y = {1.0, 4.2, -2.2, 0.4, 3.1, -0.9};
    std::vector<double> ey(y.size());
    for (size_t i = 0; i < y.size(); ++i) ey[i] = std::exp(y[i]);
    CHECK(spearman(x, ey) == spearman(x, y));
}

TEST_CASE("spearman rejects degenerate input") {
    CHECK_THROWS_AS(spearman({1, 2}, {1, 2}), DataError);
    CHECK_THROWS_AS(spearman({1, 2, 3}, {1, 2}), DataError);
    CHECK_THROWS_AS(spearman({2, 2, 2}, {1, 2, 3}), DataError);
    CHECK_THROWS_AS(spearman({1, 2, 3}, {5, 5, 5}), DataError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(spearman({1, nan, 3}, {1, 2, 3}), DataError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(spearman({1, 2, 3}, {1, inf, 3}), DataError);
}

TEST_CASE("selection accuracy counts exact agreements") {
    CHECK(selection_accuracy({30, 60, 90}, {30, 60, 90}) == 1.0);
    CHECK(selection_accuracy({30, 60, 90}, {30, 10, 90}) == doctest::Approx(2.0 / 3.0));
    CHECK(selection_accuracy({30, 60}, {10, 90}) == 0.0);
    CHECK(selection_accuracy({}, {}) == 1.0);
}
