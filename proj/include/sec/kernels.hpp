#pragma once

#include <cstddef>
#include <vector>

// Low-level numeric kernels used by the hot paths (network forward/backward,
// Adam updates, activation evaluation).  Every operation has a scalar
// reference implementation; on x86-64 an AVX2+FMA variant and on aarch64 a
// NEON variant are compiled in and selected at runtime.  All variants use a
// fixed summation order per backend, so results are reproducible run-to-run
// on the same machine/backend.

namespace sec::kernels {

enum class Backend { scalar, avx2, neon };

const char* name(Backend b);

// Backends compiled in and usable on this CPU.
std::vector<Backend> available();

// Currently active backend.  Resolution order: explicit set_backend() call,
// SEC_KERNELS environment variable (scalar|avx2|neon|auto), best available.
Backend active();

// Force a backend; returns false (and leaves the active one untouched) if it
// is not available on this host.
bool set_backend(Backend b);

struct Ops {
    // sum_i a[i]*b[i]
    double (*dot)(const double* a, const double* b, size_t n);
    // One weight row against four activation vectors: out[k] = sum_i w[i]*ak[i].
    // Amortizes the weight-row loads across four pixels.
    void (*dot4)(const double* w, const double* a0, const double* a1,
                 const double* a2, const double* a3, size_t n, double* out);
    // Two rows against four vectors: out[4k+j] = sum_i wk[i]*aj[i], the
    // 2x4 GEMM microkernel (8 accumulators; FMA-bound rather than load-bound).
    void (*dot2x4)(const double* w0, const double* w1, const double* a0, const double* a1,
                   const double* a2, const double* a3, size_t n, double* out);
    // y[i] += a*x[i]
    void (*axpy)(double* y, double a, const double* x, size_t n);
    // y[i] += c[0]*x0[i] + c[1]*x1[i] + c[2]*x2[i] + c[3]*x3[i]
    void (*axpy4)(double* y, const double* c, const double* x0, const double* x1,
                  const double* x2, const double* x3, size_t n);
    double (*sum)(const double* x, size_t n);
    double (*sum_sq)(const double* x, size_t n);
    // sum_i (a[i]-b[i])^2
    double (*sq_diff_sum)(const double* a, const double* b, size_t n);
    // Complex dot over interleaved re/im pairs: out = sum_i w[i]*a[i].
    // n counts complex elements (arrays hold 2n doubles).
    void (*cdot)(const double* w, const double* a, size_t n, double* out);
    // y[i] += (cr + j*ci) * conj(x[i]) over interleaved pairs; n complex elements.
    void (*caxpy_conj)(double* y, double cr, double ci, const double* x, size_t n);
    void (*vsin)(const double* x, double* out, size_t n);
    void (*vsincos)(const double* x, double* s, double* c, size_t n);
    void (*vexp)(const double* x, double* out, size_t n);
    // One Adam step on a parameter block.  bc1/bc2 are the bias corrections
    // 1-beta1^t and 1-beta2^t for the step being applied.
    void (*adam_update)(double* p, double* m, double* v, const double* g, size_t n,
                        double lr, double beta1, double beta2, double eps,
                        double bc1, double bc2);
};

// Table for a specific backend (null pointers if not compiled in).
const Ops* table(Backend b);

// Active table, resolved once on first use.
const Ops& ops();

// Convenience forwarders through the active table.
inline double dot(const double* a, const double* b, size_t n) { return ops().dot(a, b, n); }
inline void dot4(const double* w, const double* a0, const double* a1,
                 const double* a2, const double* a3, size_t n, double* out) {
    ops().dot4(w, a0, a1, a2, a3, n, out);
}
inline void dot2x4(const double* w0, const double* w1, const double* a0, const double* a1,
                   const double* a2, const double* a3, size_t n, double* out) {
    ops().dot2x4(w0, w1, a0, a1, a2, a3, n, out);
}
inline void axpy(double* y, double a, const double* x, size_t n) { ops().axpy(y, a, x, n); }
inline void axpy4(double* y, const double* c, const double* x0, const double* x1,
                  const double* x2, const double* x3, size_t n) {
    ops().axpy4(y, c, x0, x1, x2, x3, n);
}
inline double sum(const double* x, size_t n) { return ops().sum(x, n); }
inline double sum_sq(const double* x, size_t n) { return ops().sum_sq(x, n); }
inline double sq_diff_sum(const double* a, const double* b, size_t n) { return ops().sq_diff_sum(a, b, n); }
inline void cdot(const double* w, const double* a, size_t n, double* out) { ops().cdot(w, a, n, out); }
inline void caxpy_conj(double* y, double cr, double ci, const double* x, size_t n) {
    ops().caxpy_conj(y, cr, ci, x, n);
}
inline void vsin(const double* x, double* out, size_t n) { ops().vsin(x, out, n); }
inline void vsincos(const double* x, double* s, double* c, size_t n) { ops().vsincos(x, s, c, n); }
inline void vexp(const double* x, double* out, size_t n) { ops().vexp(x, out, n); }
inline void adam_update(double* p, double* m, double* v, const double* g, size_t n,
                        double lr, double beta1, double beta2, double eps,
                        double bc1, double bc2) {
    ops().adam_update(p, m, v, g, n, lr, beta1, beta2, eps, bc1, bc2);
}

}  // namespace sec::kernels
