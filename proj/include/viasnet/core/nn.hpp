#pragma once

#include <optional>
#include <string>

#include "viasnet/core/ops.hpp"

namespace viasnet::nn {

using ag::Var;

// Functional convolution pieces; layer structs below wrap them with parameters.
// x (N,C,H,W), w (O,C,kh,kw), optional bias (O).
Var conv2d(const Var& x, const Var& w, const Var* bias, int sh, int sw, int ph, int pw);
// x (N,C,H,W), w (C,O,k,k), stride k==s upsampling (k=s covers the x2 decoder
// steps and the 1x1 readout restore).
Var conv_transpose2d(const Var& x, const Var& w, const Var* bias, int k, int s);
// x (N,C,S), w (O,C,k): 1-D convolution via the 2-D path.
Var conv1d(const Var& x, const Var& w, const Var* bias, int k, int s, int p);

// Sinusoidal position table (L,D), parameter-free.
Tensor sincos_positions(int64_t len, int64_t dim);

struct Linear {
    Var w, b; // w (in,out)
    Linear() = default;
    Linear(ag::ParamStore& ps, const std::string& prefix, int64_t in, int64_t out);
    Var operator()(const Var& x) const; // (...,in) -> (...,out), rank 2 or 3
};

struct Conv2d {
    Var w, b;
    int kh = 1, kw = 1, sh = 1, sw = 1, ph = 0, pw = 0;
    Conv2d() = default;
    Conv2d(ag::ParamStore& ps, const std::string& prefix, int64_t in_c, int64_t out_c, int kh,
           int kw, int sh, int sw, int ph, int pw);
    static Conv2d square(ag::ParamStore& ps, const std::string& prefix, int64_t in_c, int64_t out_c,
                         int k, int s, int p) {
        return Conv2d(ps, prefix, in_c, out_c, k, k, s, s, p, p);
    }
    Var operator()(const Var& x) const { return conv2d(x, w, &b, sh, sw, ph, pw); }
};

struct ConvT2d {
    Var w, b; // (in,out,k,k)
    int k = 1, s = 1;
    ConvT2d() = default;
    ConvT2d(ag::ParamStore& ps, const std::string& prefix, int64_t in_c, int64_t out_c, int k, int s);
    Var operator()(const Var& x) const { return conv_transpose2d(x, w, &b, k, s); }
};

struct Conv1d {
    Var w, b; // (out,in,k)
    int k = 1, s = 1, p = 0;
    Conv1d() = default;
    Conv1d(ag::ParamStore& ps, const std::string& prefix, int64_t in_c, int64_t out_c, int k, int s,
           int p);
    Var operator()(const Var& x) const { return conv1d(x, w, &b, k, s, p); }
};

struct LayerNorm {
    Var gamma, beta;
    double eps = 1e-5;
    LayerNorm() = default;
    LayerNorm(ag::ParamStore& ps, const std::string& prefix, int64_t dim);
    Var operator()(const Var& x) const; // normalizes the last axis
};

// Multi-head self-attention on (B,N,D). key_bias, when given, is an additive
// (B,1,N) term on the pre-softmax scores (0 keep / large-negative drop).
struct Mha {
    Linear q, k, v, o;
    int heads = 1;
    Mha() = default;
    Mha(ag::ParamStore& ps, const std::string& prefix, int64_t dim, int heads);
    Var operator()(const Var& x, const Tensor* key_bias = nullptr) const;
};

// Pre-LN attention + feed-forward block; the unified-attention unit used at
// fusion time and in every decoder upsampling step.
struct AttentionBlock {
    LayerNorm ln1, ln2;
    Mha attn;
    Linear ff1, ff2;
    AttentionBlock() = default;
    AttentionBlock(ag::ParamStore& ps, const std::string& prefix, int64_t dim, int heads,
                   int64_t ff_dim);
    Var operator()(const Var& x, const Tensor* key_bias = nullptr) const;
};

} // namespace viasnet::nn
