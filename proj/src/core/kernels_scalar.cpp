#include "viasnet/core/kernels.hpp"

#include <algorithm>

namespace viasnet::kernels {
namespace {

void add_s(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}
void sub_s(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}
void mul_s(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}
void div_s(const double* a, const double* b, double* out, size_t n) {
    for (size_t i = 0; i < n; ++i) out[i] = a[i] / b[i];
}
void axpy_s(double alpha, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}
void scale_s(double alpha, double* x, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= alpha;
}
double dot_s(const double* a, const double* b, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}
double sum_s(const double* a, size_t n) {
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}
double maxv_s(const double* a, size_t n) {
    double m = a[0];
    for (size_t i = 1; i < n; ++i) m = std::max(m, a[i]);
    return m;
}
void relu_s(const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}
void relu_bwd_s(const double* x, const double* gy, double* gx, size_t n) {
    for (size_t i = 0; i < n; ++i)
        if (x[i] > 0.0) gx[i] += gy[i];
}

void gemm_s(size_t M, size_t N, size_t K, const double* A, size_t lda, const double* B, size_t ldb,
            double* C, size_t ldc, bool accumulate) {
    for (size_t i = 0; i < M; ++i) {
        double* c = C + i * ldc;
        if (!accumulate)
            for (size_t j = 0; j < N; ++j) c[j] = 0.0;
        const double* a = A + i * lda;
        for (size_t k = 0; k < K; ++k) {
            const double av = a[k];
            const double* b = B + k * ldb;
            for (size_t j = 0; j < N; ++j) c[j] += av * b[j];
        }
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar", add_s,  sub_s,  mul_s,      div_s,      axpy_s, scale_s,
        dot_s,    sum_s,  maxv_s, relu_s,     relu_bwd_s, gemm_s,
    };
    return ops;
}

} // namespace viasnet::kernels
