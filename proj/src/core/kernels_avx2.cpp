// AVX2/FMA variants of the f64 kernels. Compiled with -mavx2 -mfma on x86-64;
// the dispatcher only hands these out after a cpuid check.

#include "viasnet/core/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <algorithm>

namespace viasnet::kernels {
namespace {

void add_v(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] + b[i];
}
void sub_v(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] - b[i];
}
void mul_v(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] * b[i];
}
void div_v(const double* a, const double* b, double* out, size_t n) {
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_div_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    for (; i < n; ++i) out[i] = a[i] / b[i];
}
void axpy_v(double alpha, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}
void scale_v(double alpha, double* x, size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(lo) + _mm_cvtsd_f64(_mm_unpackhi_pd(lo, lo));
}

double dot_v(const double* a, const double* b, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double r = hsum(acc);
    for (; i < n; ++i) r += a[i] * b[i];
    return r;
}
double sum_v(const double* a, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += a[i];
    return r;
}
double maxv_v(const double* a, size_t n) {
    if (n < 4) {
        double m = a[0];
        for (size_t i = 1; i < n; ++i) m = std::max(m, a[i]);
        return m;
    }
    __m256d acc = _mm256_loadu_pd(a);
    size_t i = 4;
    for (; i + 4 <= n; i += 4) acc = _mm256_max_pd(acc, _mm256_loadu_pd(a + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
    for (; i < n; ++i) m = std::max(m, a[i]);
    return m;
}
void relu_v(const double* x, double* y, size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) _mm256_storeu_pd(y + i, _mm256_max_pd(zero, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}
void relu_bwd_v(const double* x, const double* gy, double* gx, size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_GT_OQ);
        __m256d g = _mm256_and_pd(mask, _mm256_loadu_pd(gy + i));
        _mm256_storeu_pd(gx + i, _mm256_add_pd(_mm256_loadu_pd(gx + i), g));
    }
    for (; i < n; ++i)
        if (x[i] > 0.0) gx[i] += gy[i];
}

// 4x8 register-blocked microkernel; B is streamed row-wise so remainders fall
// back to plain loops.
void gemm_tail(size_t rows, size_t cols, size_t K, const double* A, size_t lda, const double* B,
               size_t ldb, double* C, size_t ldc, bool accumulate) {
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < cols; ++j) {
            double acc = accumulate ? C[i * ldc + j] : 0.0;
            for (size_t k = 0; k < K; ++k) acc += A[i * lda + k] * B[k * ldb + j];
            C[i * ldc + j] = acc;
        }
    }
}

void gemm_v(size_t M, size_t N, size_t K, const double* A, size_t lda, const double* B, size_t ldb,
            double* C, size_t ldc, bool accumulate) {
    const size_t MB = M / 4 * 4;
    const size_t NB = N / 8 * 8;
    for (size_t i = 0; i < MB; i += 4) {
        const double* a0 = A + (i + 0) * lda;
        const double* a1 = A + (i + 1) * lda;
        const double* a2 = A + (i + 2) * lda;
        const double* a3 = A + (i + 3) * lda;
        for (size_t j = 0; j < NB; j += 8) {
            __m256d c00, c01, c10, c11, c20, c21, c30, c31;
            if (accumulate) {
                c00 = _mm256_loadu_pd(C + (i + 0) * ldc + j);
                c01 = _mm256_loadu_pd(C + (i + 0) * ldc + j + 4);
                c10 = _mm256_loadu_pd(C + (i + 1) * ldc + j);
                c11 = _mm256_loadu_pd(C + (i + 1) * ldc + j + 4);
                c20 = _mm256_loadu_pd(C + (i + 2) * ldc + j);
                c21 = _mm256_loadu_pd(C + (i + 2) * ldc + j + 4);
                c30 = _mm256_loadu_pd(C + (i + 3) * ldc + j);
                c31 = _mm256_loadu_pd(C + (i + 3) * ldc + j + 4);
            } else {
                c00 = c01 = c10 = c11 = c20 = c21 = c30 = c31 = _mm256_setzero_pd();
            }
            for (size_t k = 0; k < K; ++k) {
                const __m256d b0 = _mm256_loadu_pd(B + k * ldb + j);
                const __m256d b1 = _mm256_loadu_pd(B + k * ldb + j + 4);
                __m256d a = _mm256_set1_pd(a0[k]);
                c00 = _mm256_fmadd_pd(a, b0, c00);
                c01 = _mm256_fmadd_pd(a, b1, c01);
                a = _mm256_set1_pd(a1[k]);
                c10 = _mm256_fmadd_pd(a, b0, c10);
                c11 = _mm256_fmadd_pd(a, b1, c11);
                a = _mm256_set1_pd(a2[k]);
                c20 = _mm256_fmadd_pd(a, b0, c20);
                c21 = _mm256_fmadd_pd(a, b1, c21);
                a = _mm256_set1_pd(a3[k]);
                c30 = _mm256_fmadd_pd(a, b0, c30);
                c31 = _mm256_fmadd_pd(a, b1, c31);
            }
            _mm256_storeu_pd(C + (i + 0) * ldc + j, c00);
            _mm256_storeu_pd(C + (i + 0) * ldc + j + 4, c01);
            _mm256_storeu_pd(C + (i + 1) * ldc + j, c10);
            _mm256_storeu_pd(C + (i + 1) * ldc + j + 4, c11);
            _mm256_storeu_pd(C + (i + 2) * ldc + j, c20);
            _mm256_storeu_pd(C + (i + 2) * ldc + j + 4, c21);
            _mm256_storeu_pd(C + (i + 3) * ldc + j, c30);
            _mm256_storeu_pd(C + (i + 3) * ldc + j + 4, c31);
        }
        if (NB < N) gemm_tail(4, N - NB, K, A + i * lda, lda, B + NB, ldb, C + i * ldc + NB, ldc, accumulate);
    }
    if (MB < M) gemm_tail(M - MB, N, K, A + MB * lda, lda, B, ldb, C + MB * ldc, ldc, accumulate);
}

} // namespace

const Ops& avx2_ops() {
    static const Ops ops = {
        "avx2",  add_v,  sub_v,  mul_v,  div_v,      axpy_v, scale_v,
        dot_v,   sum_v,  maxv_v, relu_v, relu_bwd_v, gemm_v,
    };
    return ops;
}

} // namespace viasnet::kernels

#else

namespace viasnet::kernels {
const Ops& avx2_ops() { return scalar_ops(); }
} // namespace viasnet::kernels

#endif
