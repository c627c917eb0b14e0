#include "sec/kernels.hpp"

#include <cassert>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <string>

namespace sec::kernels {

namespace scalar {

double dot(const double* a, const double* b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void dot4(const double* w, const double* a0, const double* a1,
          const double* a2, const double* a3, size_t n, double* out) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double wi = w[i];
        s0 += wi * a0[i];
        s1 += wi * a1[i];
        s2 += wi * a2[i];
        s3 += wi * a3[i];
    }
    out[0] = s0; out[1] = s1; out[2] = s2; out[3] = s3;
}

void dot2x4(const double* w0, const double* w1, const double* a0, const double* a1,
            const double* a2, const double* a3, size_t n, double* out) {
    dot4(w0, a0, a1, a2, a3, n, out);
    dot4(w1, a0, a1, a2, a3, n, out + 4);
}

void axpy(double* y, double a, const double* x, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy4(double* y, const double* c, const double* x0, const double* x1,
           const double* x2, const double* x3, size_t n) {
    const double c0 = c[0], c1 = c[1], c2 = c[2], c3 = c[3];
    for (size_t i = 0; i < n; ++i)
        y[i] += c0 * x0[i] + c1 * x1[i] + c2 * x2[i] + c3 * x3[i];
}

double sum(const double* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double sum_sq(const double* x, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double sq_diff_sum(const double* a, const double* b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
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
        const double mhat = m[i] / bc1;
        const double vhat = v[i] / bc2;
        p[i] -= lr * mhat / (std::sqrt(vhat) + eps);
    }
}

}  // namespace scalar

static const Ops g_scalar_ops = {
    scalar::dot,  scalar::dot4, scalar::dot2x4, scalar::axpy, scalar::axpy4,
    scalar::sum,  scalar::sum_sq, scalar::sq_diff_sum,
    scalar::cdot, scalar::caxpy_conj,
    scalar::vsin, scalar::vsincos, scalar::vexp,
    scalar::adam_update,
};

// Defined in kernels_avx2.cpp / kernels_neon.cpp; null when not compiled in
// or unusable on this CPU.
const Ops* avx2_ops_if_supported();
const Ops* neon_ops_if_supported();

#if !SEC_HAVE_AVX2_TU
const Ops* avx2_ops_if_supported() { return nullptr; }
#endif
#if !SEC_HAVE_NEON_TU
const Ops* neon_ops_if_supported() { return nullptr; }
#endif

const char* name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
        case Backend::neon: return "neon";
    }
    return "?";
}

const Ops* table(Backend b) {
    switch (b) {
        case Backend::scalar: return &g_scalar_ops;
        case Backend::avx2: return avx2_ops_if_supported();
        case Backend::neon: return neon_ops_if_supported();
    }
    return nullptr;
}

std::vector<Backend> available() {
    std::vector<Backend> out{Backend::scalar};
    if (table(Backend::avx2)) out.push_back(Backend::avx2);
    if (table(Backend::neon)) out.push_back(Backend::neon);
    return out;
}

namespace {

Backend best_available() {
    if (table(Backend::avx2)) return Backend::avx2;
    if (table(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend resolve_initial() {
    if (const char* env = std::getenv("SEC_KERNELS")) {
        const std::string v(env);
        if (v == "scalar") return Backend::scalar;
        if (v == "avx2" && table(Backend::avx2)) return Backend::avx2;
        if (v == "neon" && table(Backend::neon)) return Backend::neon;
        // "auto" or anything unusable falls through to detection.
    }
    return best_available();
}

Backend& active_slot() {
    static Backend b = resolve_initial();
    return b;
}

}  // namespace

Backend active() { return active_slot(); }

bool set_backend(Backend b) {
    if (!table(b)) return false;
    active_slot() = b;
    return true;
}

const Ops& ops() { return *table(active_slot()); }

}  // namespace sec::kernels
