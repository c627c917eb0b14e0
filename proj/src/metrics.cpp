#include "sec/metrics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "sec/errors.hpp"

namespace sec {

namespace {

void check_same_shape(const Image& a, const Image& b, const char* op) {
    if (a.channels != b.channels || a.height != b.height || a.width != b.width)
        throw DataError(std::string(op) + ": image dimensions differ");
}

}  // namespace

double psnr(const Image& a, const Image& b) {
    check_same_shape(a, b, "psnr");
    validate_image(a, "psnr input");
    validate_image(b, "psnr input");
    double acc = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) {
        const double d = a.data[i] - b.data[i];
        acc += d * d;
    }
    const double mse = acc / a.data.size();
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return -10.0 * std::log10(mse);
}

namespace {

constexpr int kWin = 11;

std::vector<double> gaussian_taps() {
    std::vector<double> taps(kWin);
    const double sigma = 1.5;
    double total = 0.0;
    for (int i = 0; i < kWin; ++i) {
        const double d = i - (kWin - 1) / 2.0;
        taps[i] = std::exp(-d * d / (2.0 * sigma * sigma));
        total += taps[i];
    }
    for (double& t : taps) t /= total;
    return taps;
}

// Valid-mode separable weighted smoothing: output is (h-10) x (w-10).
std::vector<double> window_means(const std::vector<double>& img, int h, int w,
                                 const std::vector<double>& taps) {
    const int wo = w - kWin + 1, ho = h - kWin + 1;
    std::vector<double> rows(static_cast<size_t>(h) * wo);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < wo; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWin; ++k) acc += taps[k] * img[y * w + x + k];
            rows[y * wo + x] = acc;
        }
    std::vector<double> out(static_cast<size_t>(ho) * wo);
    for (int y = 0; y < ho; ++y)
        for (int x = 0; x < wo; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWin; ++k) acc += taps[k] * rows[(y + k) * wo + x];
            out[y * wo + x] = acc;
        }
    return out;
}

std::vector<double> luminance(const Image& img) {
    std::vector<double> lum(img.pixel_count(), 0.0);
    for (int c = 0; c < img.channels; ++c)
        for (size_t p = 0; p < lum.size(); ++p)
            lum[p] += img.data[static_cast<size_t>(c) * lum.size() + p];
    for (double& v : lum) v /= img.channels;
    return lum;
}

}  // namespace

double ssim(const Image& a, const Image& b) {
    check_same_shape(a, b, "ssim");
    validate_image(a, "ssim input");
    validate_image(b, "ssim input");
    if (a.height < kWin || a.width < kWin)
        throw DataError("ssim: images must be at least 11x11");

    const std::vector<double> taps = gaussian_taps();
    const int h = a.height, w = a.width;
    const std::vector<double> x = luminance(a);
    const std::vector<double> y = luminance(b);

    std::vector<double> xx(x.size()), yy(x.size()), xy(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }

    const std::vector<double> mx = window_means(x, h, w, taps);
    const std::vector<double> my = window_means(y, h, w, taps);
    const std::vector<double> mxx = window_means(xx, h, w, taps);
    const std::vector<double> myy = window_means(yy, h, w, taps);
    const std::vector<double> mxy = window_means(xy, h, w, taps);

    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;
    double total = 0.0;
    for (size_t i = 0; i < mx.size(); ++i) {
        const double var_x = mxx[i] - mx[i] * mx[i];
        const double var_y = myy[i] - my[i] * my[i];
        const double cov = mxy[i] - mx[i] * my[i];
        const double num = (2.0 * mx[i] * my[i] + c1) * (2.0 * cov + c2);
        const double den = (mx[i] * mx[i] + my[i] * my[i] + c1) * (var_x + var_y + c2);
        total += num / den;
    }
    return total / mx.size();
}

namespace {

// Average ranks on ties, 1-based.
std::vector<double> ranks_of(const std::vector<double>& v) {
    const size_t n = v.size();
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&](size_t i, size_t j) { return v[i] < v[j]; });
    std::vector<double> ranks(n);
    size_t i = 0;
    while (i < n) {
        size_t j = i;
        while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
        const double avg = (static_cast<double>(i) + j) / 2.0 + 1.0;
        for (size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw DataError("spearman: length mismatch");
    if (x.size() < 3) throw DataError("spearman: need at least 3 samples");
    for (double v : x)
        if (!std::isfinite(v)) throw DataError("spearman: non-finite value");
    for (double v : y)
        if (!std::isfinite(v)) throw DataError("spearman: non-finite value");

    const std::vector<double> rx = ranks_of(x);
    const std::vector<double> ry = ranks_of(y);
    const double n = static_cast<double>(x.size());
    const double mean = (n + 1.0) / 2.0;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (size_t i = 0; i < rx.size(); ++i) {
        const double dx = rx[i] - mean, dy = ry[i] - mean;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw DataError("spearman: constant input has no defined rank correlation");
    return sxy / std::sqrt(sxx * syy);
}

double selection_accuracy(const std::vector<double>& selected,
                          const std::vector<double>& oracle) {
    assert(selected.size() == oracle.size());
    if (selected.empty()) return 1.0;
    size_t hits = 0;
    for (size_t i = 0; i < selected.size(); ++i)
        if (selected[i] == oracle[i]) ++hits;
    return static_cast<double>(hits) / selected.size();
}

}  // namespace sec
