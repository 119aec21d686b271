#pragma once

#include <cstddef>

namespace viasnet::kernels {

// Dispatch table for the f64 inner loops everything upstream is built on.
// Scalar versions are the reference semantics; SIMD variants must agree with
// them within floating-point reassociation tolerance (see kernel tests).
struct Ops {
    const char* name;
    void (*add)(const double* a, const double* b, double* out, size_t n);
    void (*sub)(const double* a, const double* b, double* out, size_t n);
    void (*mul)(const double* a, const double* b, double* out, size_t n);
    void (*div)(const double* a, const double* b, double* out, size_t n);
    void (*axpy)(double alpha, const double* x, double* y, size_t n); // y += alpha*x
    void (*scale)(double alpha, double* x, size_t n);                 // x *= alpha
    double (*dot)(const double* a, const double* b, size_t n);
    double (*sum)(const double* a, size_t n);
    double (*maxv)(const double* a, size_t n); // n >= 1
    void (*relu)(const double* x, double* y, size_t n);
    void (*relu_bwd)(const double* x, const double* gy, double* gx, size_t n); // gx += gy * (x>0)
    // Row-major C[M,N] (+)= A[M,K] * B[K,N].
    void (*gemm)(size_t M, size_t N, size_t K, const double* A, size_t lda, const double* B,
                 size_t ldb, double* C, size_t ldc, bool accumulate);
};

const Ops& scalar_ops();
bool avx2_supported();
const Ops& avx2_ops(); // valid only when avx2_supported()

// Active table: AVX2 when the CPU has it, scalar otherwise. The environment
// variable VIASNET_KERNELS=scalar|avx2 forces a backend (avx2 silently falls
// back when unsupported).
const Ops& active();

} // namespace viasnet::kernels
