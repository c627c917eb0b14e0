#include "sec/fft.hpp"

#include <cassert>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace sec {
namespace {

constexpr double kPi = std::numbers::pi;

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

int next_pow2(int n) {
    int p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Iterative in-place radix-2 FFT (decimation in time), forward convention
// exp(-2*pi*i*k/n), no normalization.
struct Radix2Plan {
    int n = 0;
    std::vector<int> rev;
    std::vector<cplx> tw;  // tw[k] = exp(-2*pi*i*k/n), k < n/2

    explicit Radix2Plan(int size) : n(size) {
        assert(is_pow2(n));
        rev.resize(n);
        int bits = 0;
        while ((1 << bits) < n) ++bits;
        for (int i = 0; i < n; ++i) {
            int r = 0;
            for (int b = 0; b < bits; ++b)
                if (i & (1 << b)) r |= 1 << (bits - 1 - b);
            rev[i] = r;
        }
        tw.resize(n / 2);
        for (int k = 0; k < n / 2; ++k) {
            const double ang = -2.0 * kPi * k / n;
            tw[k] = {std::cos(ang), std::sin(ang)};
        }
    }

    void forward(cplx* x) const {
        for (int i = 0; i < n; ++i)
            if (rev[i] > i) std::swap(x[i], x[rev[i]]);
        for (int len = 2; len <= n; len <<= 1) {
            const int half = len / 2;
            const int step = n / len;
            for (int base = 0; base < n; base += len) {
                for (int j = 0; j < half; ++j) {
                    const cplx w = tw[j * step];
                    const cplx u = x[base + j];
                    const cplx t = w * x[base + j + half];
                    x[base + j] = u + t;
                    x[base + j + half] = u - t;
                }
            }
        }
    }
};

// Arbitrary-length forward DFT.  Power-of-two sizes run radix-2 directly;
// any other size goes through the Bluestein chirp-z transform, which reduces
// the DFT to a circular convolution of padded power-of-two length.
struct Fft1d {
    int n = 0;
    bool pow2 = false;
    Radix2Plan plan;          // size n (pow2) or size m (bluestein)
    std::vector<cplx> chirp;  // w[k] = exp(-i*pi*k^2/n)
    std::vector<cplx> fb;     // FFT of the symmetric conj-chirp, length m
    int m = 0;

    explicit Fft1d(int size)
        : n(size), pow2(is_pow2(size)), plan(pow2 ? size : next_pow2(2 * size - 1)) {
        if (pow2) return;
        m = plan.n;
        chirp.resize(n);
        for (int k = 0; k < n; ++k) {
            // k^2 mod 2n keeps the chirp angle small and exact for any k.
            const uint64_t kk = (static_cast<uint64_t>(k) * k) % (2ull * n);
            const double ang = -kPi * static_cast<double>(kk) / n;
            chirp[k] = {std::cos(ang), std::sin(ang)};
        }
        std::vector<cplx> b(m, cplx{0.0, 0.0});
        b[0] = std::conj(chirp[0]);
        for (int k = 1; k < n; ++k) {
            b[k] = std::conj(chirp[k]);
            b[m - k] = std::conj(chirp[k]);
        }
        plan.forward(b.data());
        fb = std::move(b);
    }

    void forward(cplx* x) const {
        if (pow2) {
            plan.forward(x);
            return;
        }
        std::vector<cplx> a(m, cplx{0.0, 0.0});
        for (int k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
        plan.forward(a.data());
        for (int k = 0; k < m; ++k) a[k] *= fb[k];
        // Inverse FFT of length m via conjugation, including the 1/m scale.
        for (auto& z : a) z = std::conj(z);
        plan.forward(a.data());
        const double inv_m = 1.0 / m;
        for (int j = 0; j < n; ++j)
            x[j] = chirp[j] * std::conj(a[j]) * inv_m;
    }

    void inverse_unscaled(cplx* x) const {
        for (int k = 0; k < n; ++k) x[k] = std::conj(x[k]);
        forward(x);
        for (int k = 0; k < n; ++k) x[k] = std::conj(x[k]);
    }
};

void transform_2d(std::vector<cplx>& v, int rows, int cols, bool inverse) {
    const Fft1d row_plan(cols);
    for (int r = 0; r < rows; ++r) {
        cplx* row = v.data() + static_cast<size_t>(r) * cols;
        inverse ? row_plan.inverse_unscaled(row) : row_plan.forward(row);
    }
    const Fft1d col_plan(rows);
    std::vector<cplx> tmp(rows);
    for (int c = 0; c < cols; ++c) {
        for (int r = 0; r < rows; ++r) tmp[r] = v[static_cast<size_t>(r) * cols + c];
        inverse ? col_plan.inverse_unscaled(tmp.data()) : col_plan.forward(tmp.data());
        for (int r = 0; r < rows; ++r) v[static_cast<size_t>(r) * cols + c] = tmp[r];
    }
}

}  // namespace

Spectrum2d dft2d(const double* data, int rows, int cols) {
    assert(rows >= 1 && cols >= 1);
    Spectrum2d spec;
    spec.rows = rows;
    spec.cols = cols;
    spec.v.assign(static_cast<size_t>(rows) * cols, cplx{0.0, 0.0});
    for (size_t i = 0; i < spec.v.size(); ++i) spec.v[i] = cplx{data[i], 0.0};
    transform_2d(spec.v, rows, cols, false);
    const double scale = 1.0 / (static_cast<double>(rows) * cols);
    for (auto& z : spec.v) z *= scale;
    return spec;
}

std::vector<cplx> idft2d(const Spectrum2d& spec) {
    std::vector<cplx> out = spec.v;
    transform_2d(out, spec.rows, spec.cols, true);
    return out;
}

}  // namespace sec
