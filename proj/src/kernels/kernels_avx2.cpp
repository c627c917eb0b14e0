// AVX2+FMA kernel variants.  This translation unit is compiled with
// -mavx2 -mfma on x86-64 only; whether it is actually used is decided at
// runtime via cpuid (see avx2_ops_if_supported at the bottom).
//
// sin/cos/exp use Cody-Waite argument reduction with the classic Cephes
// polynomial approximations (~1 ulp on the reduced interval).  Lanes the
// vector path cannot handle (|x| beyond the reduction range, non-finite
// input, exp overflow range) are recomputed with libm, so results stay
// accurate over the full double range.

#include "sec/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <immintrin.h>

namespace sec::kernels {
namespace avx2 {

static inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d shuf = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot(const double* a, const double* b, size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd(), acc3 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void dot4(const double* w, const double* a0, const double* a1,
          const double* a2, const double* a3, size_t n, double* out) {
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wv = _mm256_loadu_pd(w + i);
        s0 = _mm256_fmadd_pd(wv, _mm256_loadu_pd(a0 + i), s0);
        s1 = _mm256_fmadd_pd(wv, _mm256_loadu_pd(a1 + i), s1);
        s2 = _mm256_fmadd_pd(wv, _mm256_loadu_pd(a2 + i), s2);
        s3 = _mm256_fmadd_pd(wv, _mm256_loadu_pd(a3 + i), s3);
    }
    double r0 = hsum(s0), r1 = hsum(s1), r2 = hsum(s2), r3 = hsum(s3);
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
    // 8 accumulators, 6 loads per 8 FMAs: the port-5/port-0 FMA pipes, not
    // the load ports, are the bottleneck.
    __m256d s00 = _mm256_setzero_pd(), s01 = _mm256_setzero_pd();
    __m256d s02 = _mm256_setzero_pd(), s03 = _mm256_setzero_pd();
    __m256d s10 = _mm256_setzero_pd(), s11 = _mm256_setzero_pd();
    __m256d s12 = _mm256_setzero_pd(), s13 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d wv0 = _mm256_loadu_pd(w0 + i);
        const __m256d wv1 = _mm256_loadu_pd(w1 + i);
        const __m256d v0 = _mm256_loadu_pd(a0 + i);
        const __m256d v1 = _mm256_loadu_pd(a1 + i);
        const __m256d v2 = _mm256_loadu_pd(a2 + i);
        const __m256d v3 = _mm256_loadu_pd(a3 + i);
        s00 = _mm256_fmadd_pd(wv0, v0, s00);
        s01 = _mm256_fmadd_pd(wv0, v1, s01);
        s02 = _mm256_fmadd_pd(wv0, v2, s02);
        s03 = _mm256_fmadd_pd(wv0, v3, s03);
        s10 = _mm256_fmadd_pd(wv1, v0, s10);
        s11 = _mm256_fmadd_pd(wv1, v1, s11);
        s12 = _mm256_fmadd_pd(wv1, v2, s12);
        s13 = _mm256_fmadd_pd(wv1, v3, s13);
    }
    double r00 = hsum(s00), r01 = hsum(s01), r02 = hsum(s02), r03 = hsum(s03);
    double r10 = hsum(s10), r11 = hsum(s11), r12 = hsum(s12), r13 = hsum(s13);
    for (; i < n; ++i) {
        const double wi0 = w0[i], wi1 = w1[i];
        r00 += wi0 * a0[i];
        r01 += wi0 * a1[i];
        r02 += wi0 * a2[i];
        r03 += wi0 * a3[i];
        r10 += wi1 * a0[i];
        r11 += wi1 * a1[i];
        r12 += wi1 * a2[i];
        r13 += wi1 * a3[i];
    }
    out[0] = r00; out[1] = r01; out[2] = r02; out[3] = r03;
    out[4] = r10; out[5] = r11; out[6] = r12; out[7] = r13;
}

void axpy(double* y, double a, const double* x, size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void axpy4(double* y, const double* c, const double* x0, const double* x1,
           const double* x2, const double* x3, size_t n) {
    const __m256d c0 = _mm256_set1_pd(c[0]), c1 = _mm256_set1_pd(c[1]);
    const __m256d c2 = _mm256_set1_pd(c[2]), c3 = _mm256_set1_pd(c[3]);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(c0, _mm256_loadu_pd(x0 + i), yv);
        yv = _mm256_fmadd_pd(c1, _mm256_loadu_pd(x1 + i), yv);
        yv = _mm256_fmadd_pd(c2, _mm256_loadu_pd(x2 + i), yv);
        yv = _mm256_fmadd_pd(c3, _mm256_loadu_pd(x3 + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i)
        y[i] += c[0] * x0[i] + c[1] * x1[i] + c[2] * x2[i] + c[3] * x3[i];
}

double sum(const double* x, size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
        acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x + i + 4));
    }
    for (; i + 4 <= n; i += 4) acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x + i));
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i];
    return acc;
}

double sum_sq(const double* x, size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d v0 = _mm256_loadu_pd(x + i);
        const __m256d v1 = _mm256_loadu_pd(x + i + 4);
        acc0 = _mm256_fmadd_pd(v0, v0, acc0);
        acc1 = _mm256_fmadd_pd(v1, v1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        acc0 = _mm256_fmadd_pd(v, v, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += x[i] * x[i];
    return acc;
}

double sq_diff_sum(const double* a, const double* b, size_t n) {
    __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4));
        acc0 = _mm256_fmadd_pd(d0, d0, acc0);
        acc1 = _mm256_fmadd_pd(d1, d1, acc1);
    }
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc0 = _mm256_fmadd_pd(d, d, acc0);
    }
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

void cdot(const double* w, const double* a, size_t n, double* out) {
    // Interleaved pairs: each 256-bit load covers two complex numbers.
    // acc_re lanes hold +wr*ar / -wi*ai terms, acc_im lanes wr*ai / wi*ar.
    const __m256d negodd = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    __m256d acc_re = _mm256_setzero_pd(), acc_im = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d wv = _mm256_loadu_pd(w + 2 * i);
        const __m256d av = _mm256_loadu_pd(a + 2 * i);
        acc_re = _mm256_fmadd_pd(wv, _mm256_xor_pd(av, negodd), acc_re);
        acc_im = _mm256_fmadd_pd(wv, _mm256_permute_pd(av, 0b0101), acc_im);
    }
    double re = hsum(acc_re), im = hsum(acc_im);
    for (; i < n; ++i) {
        const double wr = w[2 * i], wi = w[2 * i + 1];
        const double ar = a[2 * i], ai = a[2 * i + 1];
        re += wr * ar - wi * ai;
        im += wr * ai + wi * ar;
    }
    out[0] = re; out[1] = im;
}

void caxpy_conj(double* y, double cr, double ci, const double* x, size_t n) {
    // y_re += cr*xr + ci*xi ; y_im += ci*xr - cr*xi
    const __m256d va = _mm256_set_pd(-cr, cr, -cr, cr);
    const __m256d vb = _mm256_set1_pd(ci);
    size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(x + 2 * i);
        __m256d yv = _mm256_loadu_pd(y + 2 * i);
        yv = _mm256_fmadd_pd(va, xv, yv);
        yv = _mm256_fmadd_pd(vb, _mm256_permute_pd(xv, 0b0101), yv);
        _mm256_storeu_pd(y + 2 * i, yv);
    }
    for (; i < n; ++i) {
        const double xr = x[2 * i], xi = x[2 * i + 1];
        y[2 * i]     += cr * xr + ci * xi;
        y[2 * i + 1] += ci * xr - cr * xi;
    }
}

// ---- vectorized sin/cos/exp ------------------------------------------------

namespace {

// fdlibm-style split of pi/2 (33 significant bits + tail); n*PIO2_1 is exact
// for |n| < 2^20, which bounds the vector path to |x| <= SINCOS_MAX.
constexpr double INV_PIO2 = 6.36619772367581382433e-01;
constexpr double PIO2_1 = 1.57079632673412561417e+00;
constexpr double PIO2_1T = 6.07710050650619224932e-11;
constexpr double SINCOS_MAX = 1.0e6;

// Cephes polynomial coefficients for sin/cos on |y| <= pi/4.
constexpr double SC0 = 1.58962301576546568060e-10;
constexpr double SC1 = -2.50507477628578072866e-8;
constexpr double SC2 = 2.75573136213857245213e-6;
constexpr double SC3 = -1.98412698295895385996e-4;
constexpr double SC4 = 8.33333333332211858878e-3;
constexpr double SC5 = -1.66666666666666307295e-1;

constexpr double CC0 = -1.13585365213876817300e-11;
constexpr double CC1 = 2.08757008419747316778e-9;
constexpr double CC2 = -2.75573141792967388112e-7;
constexpr double CC3 = 2.48015872888517179954e-5;
constexpr double CC4 = -1.38888888888730564116e-3;
constexpr double CC5 = 4.16666666666665929218e-2;

struct SinCosVec {
    __m256d s, c;
    int bad;  // movemask of lanes that must be recomputed scalarly
};

inline SinCosVec sincos4(__m256d x) {
    const __m256d absx = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
    // Catches both large arguments and NaN (comparison is false for NaN,
    // so NaN is flagged via !(absx <= MAX)).
    const __m256d ok = _mm256_cmp_pd(absx, _mm256_set1_pd(SINCOS_MAX), _CMP_LE_OQ);
    const int bad = (~_mm256_movemask_pd(ok)) & 0xf;

    const __m256d fn = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(INV_PIO2)),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d y = _mm256_fnmadd_pd(fn, _mm256_set1_pd(PIO2_1), x);
    y = _mm256_fnmadd_pd(fn, _mm256_set1_pd(PIO2_1T), y);

    const __m256d z = _mm256_mul_pd(y, y);
    // sin(y) = y + y*z*P(z)
    __m256d ps = _mm256_set1_pd(SC0);
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(SC1));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(SC2));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(SC3));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(SC4));
    ps = _mm256_fmadd_pd(ps, z, _mm256_set1_pd(SC5));
    const __m256d siny = _mm256_fmadd_pd(_mm256_mul_pd(y, z), ps, y);
    // cos(y) = 1 - z/2 + z*z*Q(z)
    __m256d pc = _mm256_set1_pd(CC0);
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(CC1));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(CC2));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(CC3));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(CC4));
    pc = _mm256_fmadd_pd(pc, z, _mm256_set1_pd(CC5));
    __m256d cosy = _mm256_fmadd_pd(_mm256_mul_pd(z, z), pc,
                                   _mm256_fnmadd_pd(z, _mm256_set1_pd(0.5), _mm256_set1_pd(1.0)));

    // Quadrant selection from q = fn mod 4.
    const __m128i qi = _mm_and_si128(_mm256_cvtpd_epi32(fn), _mm_set1_epi32(3));
    const __m256d is1 = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpeq_epi32(qi, _mm_set1_epi32(1))));
    const __m256d is2 = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpeq_epi32(qi, _mm_set1_epi32(2))));
    const __m256d is3 = _mm256_castsi256_pd(_mm256_cvtepi32_epi64(_mm_cmpeq_epi32(qi, _mm_set1_epi32(3))));

    const __m256d swap = _mm256_or_pd(is1, is3);          // odd quadrants swap sin/cos
    const __m256d neg_s = _mm256_or_pd(is2, is3);         // sin negated in q2,q3
    const __m256d neg_c = _mm256_or_pd(is1, is2);         // cos negated in q1,q2
    const __m256d signbit = _mm256_set1_pd(-0.0);

    __m256d s = _mm256_blendv_pd(siny, cosy, swap);
    __m256d c = _mm256_blendv_pd(cosy, siny, swap);
    s = _mm256_xor_pd(s, _mm256_and_pd(neg_s, signbit));
    c = _mm256_xor_pd(c, _mm256_and_pd(neg_c, signbit));
    return {s, c, bad};
}

constexpr double LOG2E = 1.44269504088896340736;
constexpr double LN2_HI = 6.93147180369123816490e-01;
constexpr double LN2_LO = 1.90821492927058770002e-10;
constexpr double EXP_MAX = 700.0;

// 2^k for integer k in the normal range, via exponent-field construction.
inline __m256d pow2i(__m128i k) {
    const __m256i k64 = _mm256_cvtepi32_epi64(k);
    const __m256i bits = _mm256_slli_epi64(_mm256_add_epi64(k64, _mm256_set1_epi64x(1023)), 52);
    return _mm256_castsi256_pd(bits);
}

struct ExpVec {
    __m256d e;
    int bad;
};

inline ExpVec exp4(__m256d x) {
    const __m256d absx = _mm256_andnot_pd(_mm256_set1_pd(-0.0), x);
    const __m256d ok = _mm256_cmp_pd(absx, _mm256_set1_pd(EXP_MAX), _CMP_LE_OQ);
    const int bad = (~_mm256_movemask_pd(ok)) & 0xf;

    const __m256d fn = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(LOG2E)),
                                       _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
    __m256d r = _mm256_fnmadd_pd(fn, _mm256_set1_pd(LN2_HI), x);
    r = _mm256_fnmadd_pd(fn, _mm256_set1_pd(LN2_LO), r);

    // Taylor series on |r| <= ln2/2; the |r|^14/14! remainder is ~4e-18.
    __m256d p = _mm256_set1_pd(1.0 / 6227020800.0);  // 1/13!
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 479001600.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 39916800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 3628800.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 362880.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 40320.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 5040.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 720.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 120.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 24.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0 / 6.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(0.5));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));
    p = _mm256_fmadd_pd(p, r, _mm256_set1_pd(1.0));

    const __m128i k = _mm256_cvtpd_epi32(fn);
    return {_mm256_mul_pd(p, pow2i(k)), bad};
}

}  // namespace

void vsin(const double* x, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const SinCosVec r = sincos4(_mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, r.s);
        if (r.bad)
            for (int l = 0; l < 4; ++l)
                if (r.bad & (1 << l)) out[i + l] = std::sin(x[i + l]);
    }
    for (; i < n; ++i) out[i] = std::sin(x[i]);
}

void vsincos(const double* x, double* s, double* c, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const SinCosVec r = sincos4(_mm256_loadu_pd(x + i));
        _mm256_storeu_pd(s + i, r.s);
        _mm256_storeu_pd(c + i, r.c);
        if (r.bad)
            for (int l = 0; l < 4; ++l)
                if (r.bad & (1 << l)) {
                    s[i + l] = std::sin(x[i + l]);
                    c[i + l] = std::cos(x[i + l]);
                }
    }
    for (; i < n; ++i) {
        s[i] = std::sin(x[i]);
        c[i] = std::cos(x[i]);
    }
}

void vexp(const double* x, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const ExpVec r = exp4(_mm256_loadu_pd(x + i));
        _mm256_storeu_pd(out + i, r.e);
        if (r.bad)
            for (int l = 0; l < 4; ++l)
                if (r.bad & (1 << l)) out[i + l] = std::exp(x[i + l]);
    }
    for (; i < n; ++i) out[i] = std::exp(x[i]);
}

void adam_update(double* p, double* m, double* v, const double* g, size_t n,
                 double lr, double beta1, double beta2, double eps,
                 double bc1, double bc2) {
    const __m256d b1 = _mm256_set1_pd(beta1), c1 = _mm256_set1_pd(1.0 - beta1);
    const __m256d b2 = _mm256_set1_pd(beta2), c2 = _mm256_set1_pd(1.0 - beta2);
    const __m256d vlr = _mm256_set1_pd(lr), veps = _mm256_set1_pd(eps);
    const __m256d rbc1 = _mm256_set1_pd(1.0 / bc1), rbc2 = _mm256_set1_pd(1.0 / bc2);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d gv = _mm256_loadu_pd(g + i);
        __m256d mv = _mm256_fmadd_pd(b1, _mm256_loadu_pd(m + i), _mm256_mul_pd(c1, gv));
        __m256d vv = _mm256_fmadd_pd(b2, _mm256_loadu_pd(v + i),
                                     _mm256_mul_pd(c2, _mm256_mul_pd(gv, gv)));
        _mm256_storeu_pd(m + i, mv);
        _mm256_storeu_pd(v + i, vv);
        const __m256d mhat = _mm256_mul_pd(mv, rbc1);
        const __m256d denom = _mm256_add_pd(_mm256_sqrt_pd(_mm256_mul_pd(vv, rbc2)), veps);
        const __m256d step = _mm256_div_pd(_mm256_mul_pd(vlr, mhat), denom);
        _mm256_storeu_pd(p + i, _mm256_sub_pd(_mm256_loadu_pd(p + i), step));
    }
    for (; i < n; ++i) {
        const double gi = g[i];
        m[i] = beta1 * m[i] + (1.0 - beta1) * gi;
        v[i] = beta2 * v[i] + (1.0 - beta2) * gi * gi;
        p[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
}

}  // namespace avx2

static const Ops g_avx2_ops = {
    avx2::dot,  avx2::dot4, avx2::dot2x4, avx2::axpy, avx2::axpy4,
    avx2::sum,  avx2::sum_sq, avx2::sq_diff_sum,
    avx2::cdot, avx2::caxpy_conj,
    avx2::vsin, avx2::vsincos, avx2::vexp,
    avx2::adam_update,
};

const Ops* avx2_ops_if_supported() {
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &g_avx2_ops;
    return nullptr;
}

}  // namespace sec::kernels
