#pragma once

#include <vector>

#include "viasnet/core/autograd.hpp"

namespace viasnet::ag {

// Elementwise with numpy-style right-aligned broadcasting.
Var add(const Var& a, const Var& b);
Var sub(const Var& a, const Var& b);
Var mul(const Var& a, const Var& b);
Var div(const Var& a, const Var& b);
Var addc(const Var& a, double c);
Var mulc(const Var& a, double c);
inline Var neg(const Var& a) { return mulc(a, -1.0); }

// A (M,K)x(K,N); rank-3 operands batch over the leading axis, a rank-2
// operand against a rank-3 one broadcasts.
Var matmul(const Var& a, const Var& b);

Var relu(const Var& a);
Var softplus(const Var& a); // ln(1+e^x), overflow-safe
Var exp_(const Var& a);
Var log_(const Var& a); // caller keeps inputs positive
Var sqrt_(const Var& a);
Var tanh_(const Var& a);

Var softmax_last(const Var& a);

Var sum_all(const Var& a);  // -> shape (1)
Var mean_all(const Var& a); // -> shape (1)
Var sum_axis(const Var& a, int axis, bool keepdim);
Var mean_axis(const Var& a, int axis, bool keepdim);

Var reshape(const Var& a, Shape s);
Var permute(const Var& a, const std::vector<int>& axes);
Var slice(const Var& a, int axis, int64_t start, int64_t len);
Var concat(const std::vector<Var>& parts, int axis);
Var pad_axis(const Var& a, int axis, int64_t before, int64_t after); // zero fill

// (N,C,H,W) -> (N, C*kh*kw, OH*OW) patch matrix; col2im is its adjoint and
// maps patches back to (N,C,H,W) by scatter-add.
Var im2col(const Var& x, int kh, int kw, int sh, int sw, int ph, int pw);
Var col2im(const Var& cols, int64_t C, int64_t H, int64_t W, int kh, int kw, int sh, int sw,
           int ph, int pw);

Var gather_rows(const Var& table, const std::vector<int64_t>& ids);

// Linear interpolation along one axis (align-corners endpoints).
Var interp_linear(const Var& a, int axis, int64_t out_len);
// Adaptive mean pooling along one axis.
Var avgpool_axis(const Var& a, int axis, int64_t out_len);

// Convolution output extent for one spatial axis.
inline int64_t conv_out(int64_t in, int k, int s, int p) { return (in + 2 * p - k) / s + 1; }

} // namespace viasnet::ag
