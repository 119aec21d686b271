#include "viasnet/core/nn.hpp"

#include <cmath>
#include <stdexcept>

namespace viasnet::nn {

using namespace viasnet::ag;

Var conv2d(const Var& x, const Var& w, const Var* bias, int sh, int sw, int ph, int pw) {
    const int64_t N = x->value.dim(0);
    const int64_t O = w->value.dim(0);
    const int kh = static_cast<int>(w->value.dim(2));
    const int kw = static_cast<int>(w->value.dim(3));
    if (x->value.dim(1) != w->value.dim(1))
        throw std::invalid_argument("conv2d: channel mismatch " + x->value.shape_str() + " vs " +
                                    w->value.shape_str());
    const int64_t OH = conv_out(x->value.dim(2), kh, sh, ph);
    const int64_t OW = conv_out(x->value.dim(3), kw, sw, pw);
    Var cols = im2col(x, kh, kw, sh, sw, ph, pw);
    Var wmat = reshape(w, {O, w->value.dim(1) * kh * kw});
    Var y = matmul(wmat, cols); // (N,O,OH*OW)
    if (bias) y = add(y, reshape(*bias, {1, O, 1}));
    return reshape(y, {N, O, OH, OW});
}

Var conv_transpose2d(const Var& x, const Var& w, const Var* bias, int k, int s) {
    const int64_t N = x->value.dim(0);
    const int64_t C = x->value.dim(1);
    const int64_t H = x->value.dim(2);
    const int64_t W = x->value.dim(3);
    const int64_t O = w->value.dim(1);
    if (w->value.dim(0) != C)
        throw std::invalid_argument("conv_transpose2d: channel mismatch " + x->value.shape_str() +
                                    " vs " + w->value.shape_str());
    const int64_t OH = (H - 1) * s + k;
    const int64_t OW = (W - 1) * s + k;
    Var wmat = permute(reshape(w, {C, O * k * k}), {1, 0}); // (O*k*k, C)
    Var cols = matmul(wmat, reshape(x, {N, C, H * W }));    // (N, O*k*k, H*W)
    Var y = col2im(cols, O, OH, OW, k, k, s, s, 0, 0);      // (N,O,OH,OW)
    if (bias) y = add(y, reshape(*bias, {1, O, 1, 1}));
    return y;
}

Var conv1d(const Var& x, const Var& w, const Var* bias, int k, int s, int p) {
    const int64_t N = x->value.dim(0);
    const int64_t C = x->value.dim(1);
    const int64_t S = x->value.dim(2);
    const int64_t O = w->value.dim(0);
    Var x4 = reshape(x, {N, C, S, 1});
    Var w4 = reshape(w, {O, w->value.dim(1), k, 1});
    Var y = conv2d(x4, w4, bias, s, 1, p, 0);
    return reshape(y, {N, O, y->value.dim(2)});
}

Tensor sincos_positions(int64_t len, int64_t dim) {
    Tensor t(Shape{len, dim});
    for (int64_t p = 0; p < len; ++p) {
        for (int64_t i = 0; i < dim; ++i) {
            const double freq = std::pow(10000.0, -2.0 * static_cast<double>(i / 2) / static_cast<double>(dim));
            const double angle = static_cast<double>(p) * freq;
            t.at(p, i) = (i % 2 == 0) ? std::sin(angle) : std::cos(angle);
        }
    }
    return t;
}

Linear::Linear(ag::ParamStore& ps, const std::string& prefix, int64_t in, int64_t out) {
    w = ps.create(prefix + ".w", {in, out}, Init::Normal, std::sqrt(1.0 / static_cast<double>(in)));
    b = ps.create(prefix + ".b", {out}, Init::Zeros);
}

Var Linear::operator()(const Var& x) const {
    Var y = matmul(x, w);
    return add(y, b); // (...,out) + (out) broadcasts
}

Conv2d::Conv2d(ag::ParamStore& ps, const std::string& prefix, int64_t in_c, int64_t out_c, int kh,
               int kw, int sh, int sw, int ph, int pw)
    : kh(kh), kw(kw), sh(sh), sw(sw), ph(ph), pw(pw) {
    w = ps.create(prefix + ".w", {out_c, in_c, kh, kw}, Init::HeFanIn,
                  static_cast<double>(in_c * kh * kw));
    b = ps.create(prefix + ".b", {out_c}, Init::Zeros);
}

ConvT2d::ConvT2d(ag::ParamStore& ps, const std::string& prefix, int64_t in_c, int64_t out_c, int k,
                 int s)
    : k(k), s(s) {
    w = ps.create(prefix + ".w", {in_c, out_c, k, k}, Init::HeFanIn,
                  static_cast<double>(in_c * k * k));
    b = ps.create(prefix + ".b", {out_c}, Init::Zeros);
}

Conv1d::Conv1d(ag::ParamStore& ps, const std::string& prefix, int64_t in_c, int64_t out_c, int k,
               int s, int p)
    : k(k), s(s), p(p) {
    w = ps.create(prefix + ".w", {out_c, in_c, k}, Init::HeFanIn, static_cast<double>(in_c * k));
    b = ps.create(prefix + ".b", {out_c}, Init::Zeros);
}

LayerNorm::LayerNorm(ag::ParamStore& ps, const std::string& prefix, int64_t dim) {
    gamma = ps.create(prefix + ".g", {dim}, Init::One);
    beta = ps.create(prefix + ".b", {dim}, Init::Zeros);
}

Var LayerNorm::operator()(const Var& x) const {
    Var mu = mean_axis(x, -1, true);
    Var xc = sub(x, mu);
    Var var = mean_axis(mul(xc, xc), -1, true);
    Var norm = div(xc, sqrt_(addc(var, eps)));
    return add(mul(norm, gamma), beta);
}

Mha::Mha(ag::ParamStore& ps, const std::string& prefix, int64_t dim, int heads)
    : q(ps, prefix + ".q", dim, dim),
      k(ps, prefix + ".k", dim, dim),
      v(ps, prefix + ".v", dim, dim),
      o(ps, prefix + ".o", dim, dim),
      heads(heads) {}

Var Mha::operator()(const Var& x, const Tensor* key_bias) const {
    const int64_t B = x->value.dim(0);
    const int64_t N = x->value.dim(1);
    const int64_t D = x->value.dim(2);
    const int64_t dh = D / heads;
    if (dh * heads != D) throw std::invalid_argument("Mha: dim not divisible by heads");

    auto split = [&](const Var& t) {
        // (B,N,D) -> (B*h, N, dh)
        Var r = reshape(t, {B, N, heads, dh});
        r = permute(r, {0, 2, 1, 3});
        return reshape(r, {B * heads, N, dh});
    };
    Var qs = split(q(x));
    Var ks = split(k(x));
    Var vs = split(v(x));
    Var scores = mulc(matmul(qs, permute(ks, {0, 2, 1})), 1.0 / std::sqrt(static_cast<double>(dh)));
    if (key_bias) {
        // (B,1,N) -> tiled (B*h,1,N), additive on every query row
        Tensor tiled(Shape{B * heads, 1, N});
        for (int64_t b = 0; b < B; ++b)
            for (int h = 0; h < heads; ++h)
                for (int64_t j = 0; j < N; ++j)
                    tiled.at(b * heads + h, 0, j) = key_bias->at(b, 0, j);
        scores = add(scores, constant(std::move(tiled)));
    }
    Var attn = softmax_last(scores);
    Var ctx = matmul(attn, vs); // (B*h, N, dh)
    ctx = reshape(ctx, {B, heads, N, dh});
    ctx = permute(ctx, {0, 2, 1, 3});
    ctx = reshape(ctx, {B, N, D});
    return o(ctx);
}

AttentionBlock::AttentionBlock(ag::ParamStore& ps, const std::string& prefix, int64_t dim,
                               int heads, int64_t ff_dim)
    : ln1(ps, prefix + ".ln1", dim),
      ln2(ps, prefix + ".ln2", dim),
      attn(ps, prefix + ".attn", dim, heads),
      ff1(ps, prefix + ".ff1", dim, ff_dim),
      ff2(ps, prefix + ".ff2", ff_dim, dim) {}

Var AttentionBlock::operator()(const Var& x, const Tensor* key_bias) const {
    Var h = add(x, attn(ln1(x), key_bias));
    Var f = ff2(relu(ff1(ln2(h))));
    return add(h, f);
}

} // namespace viasnet::nn
