// NEON kernel variants for aarch64.  The linear-algebra kernels are
// vectorized with float64x2; sin/cos/exp stay on libm (NEON has no wide
// advantage for double-precision transcendentals worth the maintenance).

#include "sec/kernels.hpp"

#include <arm_neon.h>
#include <cmath>

namespace sec::kernels {
namespace neon {

double dot(const double* a, const double* b, size_t n) {
    float64x2_t acc0 = vdupq_n_f64(0.0), acc1 = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc0 = vfmaq_f64(acc0, vld1q_f64(a + i), vld1q_f64(b + i));
        acc1 = vfmaq_f64(acc1, vld1q_f64(a + i + 2), vld1q_f64(b + i + 2));
    }
    double acc = vaddvq_f64(acc0) + vaddvq_f64(acc1);
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void dot4(const double* w, const double* a0, const double* a1,
          const double* a2, const double* a3, size_t n, double* out) {
    float64x2_t s0 = vdupq_n_f64(0.0), s1 = vdupq_n_f64(0.0);
    float64x2_t s2 = vdupq_n_f64(0.0), s3 = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t wv = vld1q_f64(w + i);
        s0 = vfmaq_f64(s0, wv, vld1q_f64(a0 + i));
        s1 = vfmaq_f64(s1, wv, vld1q_f64(a1 + i));
        s2 = vfmaq_f64(s2, wv, vld1q_f64(a2 + i));
        s3 = vfmaq_f64(s3, wv, vld1q_f64(a3 + i));
    }
    double r0 = vaddvq_f64(s0), r1 = vaddvq_f64(s1);
    double r2 = vaddvq_f64(s2), r3 = vaddvq_f64(s3);
    for (; i < n; ++i) {
        const double wi = w[i];
        r0 += wi * a0[i];
        r1 += wi * a1[i];
        r2 += wi * a2[i];
        r3 += wi * a3[i];
    }
    out[0] = r0; out[1] = r1; out[2] = r2; out[3] = r3;
}

void dot2x4(const double* w0, const double* w1, const double* a0, const double* a1,
            const double* a2, const double* a3, size_t n, double* out) {
    dot4(w0, a0, a1, a2, a3, n, out);
    dot4(w1, a0, a1, a2, a3, n, out + 4);
}

void axpy(double* y, double a, const double* x, size_t n) {
    const float64x2_t av = vdupq_n_f64(a);
    size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
    for (; i < n; ++i) y[i] += a * x[i];
}

void axpy4(double* y, const double* c, const double* x0, const double* x1,
           const double* x2, const double* x3, size_t n) {
    const float64x2_t c0 = vdupq_n_f64(c[0]), c1 = vdupq_n_f64(c[1]);
    const float64x2_t c2 = vdupq_n_f64(c[2]), c3 = vdupq_n_f64(c[3]);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t yv = vld1q_f64(y + i);
        yv = vfmaq_f64(yv, c0, vld1q_f64(x0 + i));
        yv = vfmaq_f64(yv, c1, vld1q_f64(x1 + i));
        yv = vfmaq_f64(yv, c2, vld1q_f64(x2 + i));
        yv = vfmaq_f64(yv, c3, vld1q_f64(x3 + i));
        vst1q_f64(y + i, yv);
    }
    for (; i < n; ++i)
        y[i] += c[0] * x0[i] + c[1] * x1[i] + c[2] * x2[i] + c[3] * x3[i];
}

double sum(const double* x, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) acc = vaddq_f64(acc, vld1q_f64(x + i));
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double sum_sq(const double* x, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t v = vld1q_f64(x + i);
        acc = vfmaq_f64(acc, v, v);
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) r += x[i] * x[i];
    return r;
}

double sq_diff_sum(const double* a, const double* b, size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const float64x2_t d = vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i));
        acc = vfmaq_f64(acc, d, d);
    }
    double r = vaddvq_f64(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        r += d * d;
    }
    return r;
}

void cdot(const double* w, const double* a, size_t n, double* out) {
    double re = 0.0, im = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double wr = w[2 * i], wi = w[2 * i + 1];
        const double ar = a[2 * i], ai = a[2 * i + 1];
        re += wr * ar - wi * ai;
        im += wr * ai + wi * ar;
    }
    out[0] = re; out[1] = im;
}

void caxpy_conj(double* y, double cr, double ci, const double* x, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        y[2 * i]     += cr * xr + ci * xi;
        y[2 * i + 1] += ci * xr - cr * xi;
    }
}

void vsin(const double* x, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = std::sin(x[i]);
}

void vsincos(const double* x, double* s, double* c, size_t n) {
    for (size_t i = 0; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void vexp(const double* x, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = std::exp(x[i]);
}

void adam_update(double* p, double* m, double* v, const double* g, size_t n,
                 double lr, double beta1, double beta2, double eps,
                 double bc1, double bc2) {
    for (size_t i = 0; i < n; ++i) {
        const double gi = g[i];
        m[i] = beta1 * m[i] + (1.0 - beta1) * gi;
        v[i] = beta2 * v[i] + (1.0 - beta2) * gi * gi;
        p[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
}

}  // namespace neon

static const Ops g_neon_ops = {
    neon::dot,  neon::dot4, neon::dot2x4, neon::axpy, neon::axpy4,
    neon::sum,  neon::sum_sq, neon::sq_diff_sum,
    neon::cdot, neon::caxpy_conj,
    neon::vsin, neon::vsincos, neon::vexp,
    neon::adam_update,
};

const Ops* neon_ops_if_supported() {
    // Advanced SIMD is part of the base aarch64 profile.
    return &g_neon_ops;
}

}  // namespace sec::kernels
