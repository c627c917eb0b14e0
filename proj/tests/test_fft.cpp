#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sec/fft.hpp"
#include "support/reference_dft.hpp"

using sec::cplx;
using sec::dft2d;
using sec::idft2d;
using sec::Spectrum2d;

namespace {

std::vector<double> random_grid(int rows, int cols, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::vector<double> v(static_cast<size_t>(rows) * cols);
    for (auto& x : v) x = (gen() >> 11) * 0x1.0p-53;
    return v;
}

const std::vector<std::pair<int, int>> kShapes{
    {2, 2}, {3, 3}, {4, 4}, {5, 5}, {7, 6}, {8, 8}, {9, 12}, {16, 16},
    {17, 17}, {5, 8}, {31, 17}, {27, 27}, {32, 32}, {30, 20}, {64, 48},
};

}  // namespace

TEST_CASE("fast transform matches direct summation oracle") {
    for (auto [rows, cols] : kShapes) {
        CAPTURE(rows);
        CAPTURE(cols);
        const auto grid = random_grid(rows, cols, 100 + rows * 1000 + cols);
        const Spectrum2d fast = dft2d(grid.data(), rows, cols);
        const Spectrum2d slow = testsupport::reference_dft2d(grid.data(), rows, cols);
        double max_err = 0.0;
        for (size_t i = 0; i < fast.v.size(); ++i)
            max_err = std::max(max_err, std::abs(fast.v[i] - slow.v[i]));
        CHECK(max_err <= 1e-12);
    }
}

TEST_CASE("forward/inverse round trip reconstructs the input") {
    for (auto [rows, cols] : kShapes) {
        CAPTURE(rows);
        CAPTURE(cols);
        const auto grid = random_grid(rows, cols, 7 + rows + cols);
        const auto back = idft2d(dft2d(grid.data(), rows, cols));
        for (size_t i = 0; i < grid.size(); ++i) {
            CHECK(std::fabs(back[i].real() - grid[i]) <= 1e-12);
            CHECK(std::fabs(back[i].imag()) <= 1e-12);
        }
    }
}

TEST_CASE("unit impulse transforms to a flat spectrum of 1/(N*M)") {
    const int rows = 12, cols = 10;
    std::vector<double> grid(rows * cols, 0.0);
    grid[0] = 1.0;
    const Spectrum2d spec = dft2d(grid.data(), rows, cols);
    for (const cplx& z : spec.v) {
        CHECK(z.real() == doctest::Approx(1.0 / (rows * cols)).epsilon(1e-12));
        CHECK(std::fabs(z.imag()) <= 1e-15);
    }
}

TEST_CASE("constant image concentrates all mass in the DC coefficient") {
    const int rows = 9, cols = 14;
    std::vector<double> grid(static_cast<size_t>(rows) * cols, 0.4);
    const Spectrum2d spec = dft2d(grid.data(), rows, cols);
    CHECK(spec.at(0, 0).real() == doctest::Approx(0.4).epsilon(1e-13));
    double off_dc = 0.0;
    for (int u = 0; u < rows; ++u)
        for (int v = 0; v < cols; ++v)
            if (u || v) off_dc = std::max(off_dc, std::abs(spec.at(u, v)));
    CHECK(off_dc <= 1e-14);
}

TEST_CASE("transform is linear") {
    const int rows = 11, cols = 13;  // prime sizes exercise the chirp-z path
    const auto a = random_grid(rows, cols, 21);
    const auto b = random_grid(rows, cols, 22);
    std::vector<double> mix(a.size());
    for (size_t i = 0; i < a.size(); ++i) mix[i] = 2.0 * a[i] - 0.5 * b[i];
    const Spectrum2d fa = dft2d(a.data(), rows, cols);
    const Spectrum2d fb = dft2d(b.data(), rows, cols);
    const Spectrum2d fmix = dft2d(mix.data(), rows, cols);
    for (size_t i = 0; i < fmix.v.size(); ++i)
        CHECK(std::abs(fmix.v[i] - (2.0 * fa.v[i] - 0.5 * fb.v[i])) <= 1e-13);
}
