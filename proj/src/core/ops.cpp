#include "viasnet/core/ops.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "viasnet/core/kernels.hpp"

namespace viasnet::ag {
namespace {

const kernels::Ops& K() { return kernels::active(); }

void check_axis(const Var& a, int& axis) {
    if (axis < 0) axis += a->value.rank();
    if (axis < 0 || axis >= a->value.rank())
        throw std::invalid_argument("axis out of range for " + a->value.shape_str());
}

// (outer, len, inner) view of one axis.
struct AxisView {
    int64_t outer = 1, len = 1, inner = 1;
};
AxisView axis_view(const Shape& s, int axis) {
    AxisView v;
    for (int i = 0; i < axis; ++i) v.outer *= s[static_cast<size_t>(i)];
    v.len = s[static_cast<size_t>(axis)];
    for (size_t i = static_cast<size_t>(axis) + 1; i < s.size(); ++i) v.inner *= s[i];
    return v;
}

Shape bcast_shape(const Shape& a, const Shape& b) {
    size_t r = std::max(a.size(), b.size());
    Shape out(r);
    for (size_t i = 0; i < r; ++i) {
        int64_t da = i < r - a.size() ? 1 : a[i - (r - a.size())];
        int64_t db = i < r - b.size() ? 1 : b[i - (r - b.size())];
        if (da != db && da != 1 && db != 1)
            throw std::invalid_argument("cannot broadcast " + shape_str(a) + " with " + shape_str(b));
        out[i] = std::max(da, db);
    }
    return out;
}

std::vector<int64_t> bcast_strides(const Shape& out, const Shape& in) {
    size_t r = out.size();
    std::vector<int64_t> strides(r, 0);
    int64_t acc = 1;
    for (size_t i = 0; i < in.size(); ++i) {
        size_t oi = r - 1 - i;
        size_t ii = in.size() - 1 - i;
        strides[oi] = (in[ii] == 1 && out[oi] != 1) ? 0 : acc;
        acc *= in[ii];
    }
    return strides;
}

// f(out_idx, a_off, b_off) over the broadcast space.
template <class F>
void bcast_iterate(const Shape& out, const Shape& sa, const Shape& sb, F&& f) {
    const int r = static_cast<int>(out.size());
    const int64_t n = numel(out);
    auto stA = bcast_strides(out, sa);
    auto stB = bcast_strides(out, sb);
    std::vector<int64_t> ctr(static_cast<size_t>(r), 0);
    int64_t offA = 0, offB = 0;
    for (int64_t i = 0; i < n; ++i) {
        f(i, offA, offB);
        for (int k = r - 1; k >= 0; --k) {
            if (++ctr[static_cast<size_t>(k)] < out[static_cast<size_t>(k)]) {
                offA += stA[static_cast<size_t>(k)];
                offB += stB[static_cast<size_t>(k)];
                break;
            }
            ctr[static_cast<size_t>(k)] = 0;
            offA -= stA[static_cast<size_t>(k)] * (out[static_cast<size_t>(k)] - 1);
            offB -= stB[static_cast<size_t>(k)] * (out[static_cast<size_t>(k)] - 1);
        }
    }
}

enum class BinOp { Add, Sub, Mul, Div };

Var binary(const Var& a, const Var& b, BinOp op) {
    auto n = std::make_shared<Node>();
    const Tensor& A = a->value;
    const Tensor& B = b->value;
    if (A.same_shape(B)) {
        n->value = Tensor(A.shape());
        size_t cnt = static_cast<size_t>(A.size());
        switch (op) {
            case BinOp::Add: K().add(A.data(), B.data(), n->value.data(), cnt); break;
            case BinOp::Sub: K().sub(A.data(), B.data(), n->value.data(), cnt); break;
            case BinOp::Mul: K().mul(A.data(), B.data(), n->value.data(), cnt); break;
            case BinOp::Div: K().div(A.data(), B.data(), n->value.data(), cnt); break;
        }
    } else {
        Shape os = bcast_shape(A.shape(), B.shape());
        n->value = Tensor(os);
        double* out = n->value.data();
        const double* pa = A.data();
        const double* pb = B.data();
        switch (op) {
            case BinOp::Add:
                bcast_iterate(os, A.shape(), B.shape(),
                              [&](int64_t i, int64_t ia, int64_t ib) { out[i] = pa[ia] + pb[ib]; });
                break;
            case BinOp::Sub:
                bcast_iterate(os, A.shape(), B.shape(),
                              [&](int64_t i, int64_t ia, int64_t ib) { out[i] = pa[ia] - pb[ib]; });
                break;
            case BinOp::Mul:
                bcast_iterate(os, A.shape(), B.shape(),
                              [&](int64_t i, int64_t ia, int64_t ib) { out[i] = pa[ia] * pb[ib]; });
                break;
            case BinOp::Div:
                bcast_iterate(os, A.shape(), B.shape(),
                              [&](int64_t i, int64_t ia, int64_t ib) { out[i] = pa[ia] / pb[ib]; });
                break;
        }
    }
    n->requires_grad = a->requires_grad || b->requires_grad;
    if (n->requires_grad) {
        n->parents = {a, b};
        Var av = a, bv = b;
        n->backprop = [av, bv, op](Node& self) {
            const Tensor& g = self.grad;
            const Tensor& A = av->value;
            const Tensor& B = bv->value;
            const bool same = A.same_shape(B);
            double* ga = av->requires_grad ? av->ensure_grad().data() : nullptr;
            double* gb = bv->requires_grad ? bv->ensure_grad().data() : nullptr;
            const double* pg = g.data();
            const double* pa = A.data();
            const double* pb = B.data();
            auto each = [&](auto&& f) {
                if (same) {
                    const int64_t cnt = A.size();
                    for (int64_t i = 0; i < cnt; ++i) f(i, i, i);
                } else {
                    bcast_iterate(g.shape(), A.shape(), B.shape(), f);
                }
            };
            switch (op) {
                case BinOp::Add:
                    each([&](int64_t i, int64_t ia, int64_t ib) {
                        if (ga) ga[ia] += pg[i];
                        if (gb) gb[ib] += pg[i];
                    });
                    break;
                case BinOp::Sub:
                    each([&](int64_t i, int64_t ia, int64_t ib) {
                        if (ga) ga[ia] += pg[i];
                        if (gb) gb[ib] -= pg[i];
                    });
                    break;
                case BinOp::Mul:
                    each([&](int64_t i, int64_t ia, int64_t ib) {
                        if (ga) ga[ia] += pg[i] * pb[ib];
                        if (gb) gb[ib] += pg[i] * pa[ia];
                    });
                    break;
                case BinOp::Div:
                    each([&](int64_t i, int64_t ia, int64_t ib) {
                        if (ga) ga[ia] += pg[i] / pb[ib];
                        if (gb) gb[ib] -= pg[i] * pa[ia] / (pb[ib] * pb[ib]);
                    });
                    break;
            }
        };
    }
    return n;
}

template <class Fwd, class Bwd>
Var unary(const Var& a, Fwd fwd, Bwd bwd) {
    auto n = std::make_shared<Node>();
    n->value = Tensor(a->value.shape());
    const int64_t cnt = a->value.size();
    for (int64_t i = 0; i < cnt; ++i) n->value[i] = fwd(a->value[i]);
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av, bwd](Node& self) {
            Tensor& ga = av->ensure_grad();
            const int64_t cnt = self.grad.size();
            for (int64_t i = 0; i < cnt; ++i)
                ga[i] += self.grad[i] * bwd(av->value[i], self.value[i]);
        };
    }
    return n;
}

void transpose2d(const double* src, double* dst, int64_t rows, int64_t cols) {
    for (int64_t i = 0; i < rows; ++i)
        for (int64_t j = 0; j < cols; ++j) dst[j * rows + i] = src[i * cols + j];
}

void im2col_gather(const double* x, double* cols, int64_t C, int64_t H, int64_t W, int kh, int kw,
                   int sh, int sw, int ph, int pw, int64_t OH, int64_t OW) {
    const int64_t L = OH * OW;
    for (int64_t c = 0; c < C; ++c) {
        for (int ki = 0; ki < kh; ++ki) {
            for (int kj = 0; kj < kw; ++kj) {
                double* row = cols + ((c * kh + ki) * kw + kj) * L;
                for (int64_t oh = 0; oh < OH; ++oh) {
                    const int64_t ih = oh * sh - ph + ki;
                    double* dst = row + oh * OW;
                    if (ih < 0 || ih >= H) {
                        std::memset(dst, 0, static_cast<size_t>(OW) * sizeof(double));
                        continue;
                    }
                    const double* srow = x + (c * H + ih) * W;
                    if (sw == 1) {
                        const int64_t iw0 = -pw + kj;
                        int64_t lo = std::max<int64_t>(0, -iw0);
                        int64_t hi = std::min<int64_t>(OW, W - iw0);
                        if (lo > 0) std::memset(dst, 0, static_cast<size_t>(lo) * sizeof(double));
                        if (hi > lo)
                            std::memcpy(dst + lo, srow + iw0 + lo,
                                        static_cast<size_t>(hi - lo) * sizeof(double));
                        if (hi < OW)
                            std::memset(dst + std::max<int64_t>(hi, lo), 0,
                                        static_cast<size_t>(OW - std::max<int64_t>(hi, lo)) * sizeof(double));
                    } else {
                        for (int64_t ow = 0; ow < OW; ++ow) {
                            const int64_t iw = ow * sw - pw + kj;
                            dst[ow] = (iw >= 0 && iw < W) ? srow[iw] : 0.0;
                        }
                    }
                }
            }
        }
    }
}

void col2im_scatter(const double* cols, double* x, int64_t C, int64_t H, int64_t W, int kh, int kw,
                    int sh, int sw, int ph, int pw, int64_t OH, int64_t OW) {
    const int64_t L = OH * OW;
    for (int64_t c = 0; c < C; ++c) {
        for (int ki = 0; ki < kh; ++ki) {
            for (int kj = 0; kj < kw; ++kj) {
                const double* row = cols + ((c * kh + ki) * kw + kj) * L;
                for (int64_t oh = 0; oh < OH; ++oh) {
                    const int64_t ih = oh * sh - ph + ki;
                    if (ih < 0 || ih >= H) continue;
                    double* drow = x + (c * H + ih) * W;
                    const double* src = row + oh * OW;
                    for (int64_t ow = 0; ow < OW; ++ow) {
                        const int64_t iw = ow * sw - pw + kj;
                        if (iw >= 0 && iw < W) drow[iw] += src[ow];
                    }
                }
            }
        }
    }
}

} // namespace

Var add(const Var& a, const Var& b) { return binary(a, b, BinOp::Add); }
Var sub(const Var& a, const Var& b) { return binary(a, b, BinOp::Sub); }
Var mul(const Var& a, const Var& b) { return binary(a, b, BinOp::Mul); }
Var div(const Var& a, const Var& b) { return binary(a, b, BinOp::Div); }

Var addc(const Var& a, double c) {
    return unary(a, [c](double x) { return x + c; }, [](double, double) { return 1.0; });
}

Var mulc(const Var& a, double c) {
    return unary(a, [c](double x) { return x * c; }, [c](double, double) { return c; });
}

Var relu(const Var& a) {
    auto n = std::make_shared<Node>();
    n->value = Tensor(a->value.shape());
    K().relu(a->value.data(), n->value.data(), static_cast<size_t>(a->value.size()));
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av](Node& self) {
            K().relu_bwd(av->value.data(), self.grad.data(), av->ensure_grad().data(),
                         static_cast<size_t>(self.grad.size()));
        };
    }
    return n;
}

Var softplus(const Var& a) {
    return unary(
        a,
        [](double x) { return std::max(x, 0.0) + std::log1p(std::exp(-std::fabs(x))); },
        [](double x, double) {
            return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
        });
}

Var exp_(const Var& a) {
    return unary(a, [](double x) { return std::exp(x); }, [](double, double y) { return y; });
}

Var log_(const Var& a) {
    return unary(a, [](double x) { return std::log(x); }, [](double x, double) { return 1.0 / x; });
}

Var sqrt_(const Var& a) {
    return unary(a, [](double x) { return std::sqrt(x); },
                 [](double, double y) { return 0.5 / y; });
}

Var tanh_(const Var& a) {
    return unary(a, [](double x) { return std::tanh(x); },
                 [](double, double y) { return 1.0 - y * y; });
}

Var matmul(const Var& a, const Var& b) {
    const Tensor& A = a->value;
    const Tensor& B = b->value;
    if (A.rank() < 2 || A.rank() > 3 || B.rank() < 2 || B.rank() > 3)
        throw std::invalid_argument("matmul: ranks must be 2 or 3, got " + A.shape_str() + " x " +
                                    B.shape_str());
    const int64_t batchA = A.rank() == 3 ? A.dim(0) : 0;
    const int64_t batchB = B.rank() == 3 ? B.dim(0) : 0;
    if (batchA && batchB && batchA != batchB)
        throw std::invalid_argument("matmul: batch mismatch " + A.shape_str() + " x " + B.shape_str());
    const int64_t M = A.dim(A.rank() - 2), Ka = A.dim(A.rank() - 1);
    const int64_t Kb = B.dim(B.rank() - 2), N = B.dim(B.rank() - 1);
    if (Ka != Kb)
        throw std::invalid_argument("matmul: inner dims " + A.shape_str() + " x " + B.shape_str());
    const int64_t batch = std::max<int64_t>({batchA, batchB, 0});

    auto n = std::make_shared<Node>();
    n->value = batch ? Tensor(Shape{batch, M, N}) : Tensor(Shape{M, N});
    const int64_t nb = std::max<int64_t>(batch, 1);
    for (int64_t i = 0; i < nb; ++i) {
        const double* pa = A.data() + (batchA ? i * M * Ka : 0);
        const double* pb = B.data() + (batchB ? i * Ka * N : 0);
        K().gemm(static_cast<size_t>(M), static_cast<size_t>(N), static_cast<size_t>(Ka), pa,
                 static_cast<size_t>(Ka), pb, static_cast<size_t>(N),
                 n->value.data() + i * M * N, static_cast<size_t>(N), false);
    }
    n->requires_grad = a->requires_grad || b->requires_grad;
    if (n->requires_grad) {
        n->parents = {a, b};
        Var av = a, bv = b;
        n->backprop = [av, bv, M, N, Ka, batchA, batchB, nb](Node& self) {
            const Tensor& A = av->value;
            const Tensor& B = bv->value;
            if (av->requires_grad) {
                Tensor& ga = av->ensure_grad();
                std::vector<double> bt(static_cast<size_t>(Ka * N));
                for (int64_t i = 0; i < nb; ++i) {
                    const double* pb = B.data() + (batchB ? i * Ka * N : 0);
                    if (i == 0 || batchB) transpose2d(pb, bt.data(), Ka, N);
                    const double* gc = self.grad.data() + i * M * N;
                    // dA = dC * B^T, summed over batch when A is unbatched
                    K().gemm(static_cast<size_t>(M), static_cast<size_t>(Ka),
                             static_cast<size_t>(N), gc, static_cast<size_t>(N), bt.data(),
                             static_cast<size_t>(Ka), ga.data() + (batchA ? i * M * Ka : 0),
                             static_cast<size_t>(Ka), true);
                }
            }
            if (bv->requires_grad) {
                Tensor& gb = bv->ensure_grad();
                std::vector<double> at(static_cast<size_t>(M * Ka));
                for (int64_t i = 0; i < nb; ++i) {
                    const double* pa = A.data() + (batchA ? i * M * Ka : 0);
                    if (i == 0 || batchA) transpose2d(pa, at.data(), M, Ka);
                    const double* gc = self.grad.data() + i * M * N;
                    // dB = A^T * dC, summed over batch when B is unbatched
                    K().gemm(static_cast<size_t>(Ka), static_cast<size_t>(N),
                             static_cast<size_t>(M), at.data(), static_cast<size_t>(M), gc,
                             static_cast<size_t>(N), gb.data() + (batchB ? i * Ka * N : 0),
                             static_cast<size_t>(N), true);
                }
            }
        };
    }
    return n;
}

Var softmax_last(const Var& a) {
    const Tensor& A = a->value;
    const int64_t cols = A.dim(-1);
    const int64_t rows = A.size() / cols;
    auto n = std::make_shared<Node>();
    n->value = Tensor(A.shape());
    for (int64_t r = 0; r < rows; ++r) {
        const double* x = A.data() + r * cols;
        double* y = n->value.data() + r * cols;
        const double m = K().maxv(x, static_cast<size_t>(cols));
        double total = 0.0;
        for (int64_t j = 0; j < cols; ++j) {
            y[j] = std::exp(x[j] - m);
            total += y[j];
        }
        K().scale(1.0 / total, y, static_cast<size_t>(cols));
    }
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av, rows, cols](Node& self) {
            Tensor& ga = av->ensure_grad();
            for (int64_t r = 0; r < rows; ++r) {
                const double* y = self.value.data() + r * cols;
                const double* g = self.grad.data() + r * cols;
                double* gx = ga.data() + r * cols;
                const double s = K().dot(g, y, static_cast<size_t>(cols));
                for (int64_t j = 0; j < cols; ++j) gx[j] += y[j] * (g[j] - s);
            }
        };
    }
    return n;
}

Var sum_all(const Var& a) {
    auto n = std::make_shared<Node>();
    n->value = Tensor::scalar(K().sum(a->value.data(), static_cast<size_t>(a->value.size())));
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av](Node& self) {
            Tensor& ga = av->ensure_grad();
            const double g = self.grad[0];
            for (int64_t i = 0; i < ga.size(); ++i) ga[i] += g;
        };
    }
    return n;
}

Var mean_all(const Var& a) { return mulc(sum_all(a), 1.0 / static_cast<double>(a->value.size())); }

Var sum_axis(const Var& a, int axis, bool keepdim) {
    check_axis(a, axis);
    const AxisView v = axis_view(a->value.shape(), axis);
    Shape os;
    for (int i = 0; i < a->value.rank(); ++i) {
        if (i == axis) {
            if (keepdim) os.push_back(1);
        } else {
            os.push_back(a->value.dim(i));
        }
    }
    if (os.empty()) os.push_back(1);
    auto n = std::make_shared<Node>();
    n->value = Tensor(os);
    const double* x = a->value.data();
    double* y = n->value.data();
    for (int64_t o = 0; o < v.outer; ++o)
        for (int64_t l = 0; l < v.len; ++l)
            K().axpy(1.0, x + (o * v.len + l) * v.inner, y + o * v.inner,
                     static_cast<size_t>(v.inner));
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av, v](Node& self) {
            Tensor& ga = av->ensure_grad();
            for (int64_t o = 0; o < v.outer; ++o)
                for (int64_t l = 0; l < v.len; ++l)
                    K().axpy(1.0, self.grad.data() + o * v.inner,
                             ga.data() + (o * v.len + l) * v.inner, static_cast<size_t>(v.inner));
        };
    }
    return n;
}

Var mean_axis(const Var& a, int axis, bool keepdim) {
    int ax = axis;
    check_axis(a, ax);
    return mulc(sum_axis(a, axis, keepdim), 1.0 / static_cast<double>(a->value.dim(ax)));
}

Var reshape(const Var& a, Shape s) {
    auto n = std::make_shared<Node>();
    n->value = a->value.reshaped(std::move(s));
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av](Node& self) {
            K().axpy(1.0, self.grad.data(), av->ensure_grad().data(),
                     static_cast<size_t>(self.grad.size()));
        };
    }
    return n;
}

Var permute(const Var& a, const std::vector<int>& axes) {
    const Tensor& A = a->value;
    const int r = A.rank();
    if (static_cast<int>(axes.size()) != r)
        throw std::invalid_argument("permute: axes rank mismatch for " + A.shape_str());
    Shape os(static_cast<size_t>(r));
    std::vector<int64_t> in_strides(static_cast<size_t>(r), 1);
    for (int i = r - 2; i >= 0; --i)
        in_strides[static_cast<size_t>(i)] = in_strides[static_cast<size_t>(i) + 1] * A.dim(i + 1);
    std::vector<int64_t> strides_for_out(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
        os[static_cast<size_t>(i)] = A.dim(axes[static_cast<size_t>(i)]);
        strides_for_out[static_cast<size_t>(i)] = in_strides[static_cast<size_t>(axes[static_cast<size_t>(i)])];
    }
    auto copy_permuted = [r](const Shape& oshape, const std::vector<int64_t>& stride,
                             const double* src, double* dst) {
        const int64_t n = numel(oshape);
        std::vector<int64_t> ctr(static_cast<size_t>(r), 0);
        int64_t off = 0;
        for (int64_t i = 0; i < n; ++i) {
            dst[i] = src[off];
            for (int k = r - 1; k >= 0; --k) {
                if (++ctr[static_cast<size_t>(k)] < oshape[static_cast<size_t>(k)]) {
                    off += stride[static_cast<size_t>(k)];
                    break;
                }
                ctr[static_cast<size_t>(k)] = 0;
                off -= stride[static_cast<size_t>(k)] * (oshape[static_cast<size_t>(k)] - 1);
            }
        }
    };
    auto n = std::make_shared<Node>();
    n->value = Tensor(os);
    copy_permuted(os, strides_for_out, A.data(), n->value.data());
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av, os, strides_for_out, r](Node& self) {
            Tensor& ga = av->ensure_grad();
            const int64_t cnt = self.grad.size();
            std::vector<int64_t> ctr(static_cast<size_t>(r), 0);
            int64_t off = 0;
            for (int64_t i = 0; i < cnt; ++i) {
                ga[off] += self.grad[i];
                for (int k = r - 1; k >= 0; --k) {
                    if (++ctr[static_cast<size_t>(k)] < os[static_cast<size_t>(k)]) {
                        off += strides_for_out[static_cast<size_t>(k)];
                        break;
                    }
                    ctr[static_cast<size_t>(k)] = 0;
                    off -= strides_for_out[static_cast<size_t>(k)] * (os[static_cast<size_t>(k)] - 1);
                }
            }
        };
    }
    return n;
}

Var slice(const Var& a, int axis, int64_t start, int64_t len) {
    check_axis(a, axis);
    const AxisView v = axis_view(a->value.shape(), axis);
    if (start < 0 || len < 0 || start + len > v.len)
        throw std::invalid_argument("slice out of range for " + a->value.shape_str());
    Shape os = a->value.shape();
    os[static_cast<size_t>(axis)] = len;
    auto n = std::make_shared<Node>();
    n->value = Tensor(os);
    for (int64_t o = 0; o < v.outer; ++o)
        std::memcpy(n->value.data() + o * len * v.inner,
                    a->value.data() + (o * v.len + start) * v.inner,
                    static_cast<size_t>(len * v.inner) * sizeof(double));
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av, v, start, len](Node& self) {
            Tensor& ga = av->ensure_grad();
            for (int64_t o = 0; o < v.outer; ++o)
                K().axpy(1.0, self.grad.data() + o * len * v.inner,
                         ga.data() + (o * v.len + start) * v.inner,
                         static_cast<size_t>(len * v.inner));
        };
    }
    return n;
}

Var concat(const std::vector<Var>& parts, int axis) {
    if (parts.empty()) throw std::invalid_argument("concat: empty input");
    int ax = axis;
    check_axis(parts[0], ax);
    Shape os = parts[0]->value.shape();
    int64_t total = 0;
    for (const auto& p : parts) {
        if (p->value.rank() != parts[0]->value.rank())
            throw std::invalid_argument("concat: rank mismatch");
        total += p->value.dim(ax);
    }
    os[static_cast<size_t>(ax)] = total;
    const AxisView v = axis_view(os, ax);
    auto n = std::make_shared<Node>();
    n->value = Tensor(os);
    int64_t at = 0;
    for (const auto& p : parts) {
        const int64_t len = p->value.dim(ax);
        for (int64_t o = 0; o < v.outer; ++o)
            std::memcpy(n->value.data() + (o * v.len + at) * v.inner,
                        p->value.data() + o * len * v.inner,
                        static_cast<size_t>(len * v.inner) * sizeof(double));
        at += len;
        n->requires_grad = n->requires_grad || p->requires_grad;
    }
    if (n->requires_grad) {
        n->parents = parts;
        auto vp = parts;
        n->backprop = [vp, v, ax](Node& self) {
            int64_t at = 0;
            for (const auto& p : vp) {
                const int64_t len = p->value.dim(ax);
                if (p->requires_grad) {
                    Tensor& g = p->ensure_grad();
                    for (int64_t o = 0; o < v.outer; ++o)
                        K().axpy(1.0, self.grad.data() + (o * v.len + at) * v.inner,
                                 g.data() + o * len * v.inner, static_cast<size_t>(len * v.inner));
                }
                at += len;
            }
        };
    }
    return n;
}

Var pad_axis(const Var& a, int axis, int64_t before, int64_t after) {
    check_axis(a, axis);
    const AxisView v = axis_view(a->value.shape(), axis);
    Shape os = a->value.shape();
    os[static_cast<size_t>(axis)] = v.len + before + after;
    auto n = std::make_shared<Node>();
    n->value = Tensor(os);
    const int64_t olen = os[static_cast<size_t>(axis)];
    for (int64_t o = 0; o < v.outer; ++o)
        std::memcpy(n->value.data() + (o * olen + before) * v.inner,
                    a->value.data() + o * v.len * v.inner,
                    static_cast<size_t>(v.len * v.inner) * sizeof(double));
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av, v, before, olen](Node& self) {
            Tensor& ga = av->ensure_grad();
            for (int64_t o = 0; o < v.outer; ++o)
                K().axpy(1.0, self.grad.data() + (o * olen + before) * v.inner,
                         ga.data() + o * v.len * v.inner, static_cast<size_t>(v.len * v.inner));
        };
    }
    return n;
}

Var im2col(const Var& x, int kh, int kw, int sh, int sw, int ph, int pw) {
    const Tensor& X = x->value;
    if (X.rank() != 4) throw std::invalid_argument("im2col expects (N,C,H,W), got " + X.shape_str());
    const int64_t N = X.dim(0), C = X.dim(1), H = X.dim(2), W = X.dim(3);
    const int64_t OH = conv_out(H, kh, sh, ph), OW = conv_out(W, kw, sw, pw);
    if (OH <= 0 || OW <= 0) throw std::invalid_argument("im2col: empty output for " + X.shape_str());
    auto n = std::make_shared<Node>();
    n->value = Tensor(Shape{N, C * kh * kw, OH * OW});
    const int64_t xstride = C * H * W;
    const int64_t cstride = C * kh * kw * OH * OW;
    for (int64_t b = 0; b < N; ++b)
        im2col_gather(X.data() + b * xstride, n->value.data() + b * cstride, C, H, W, kh, kw, sh,
                      sw, ph, pw, OH, OW);
    n->requires_grad = x->requires_grad;
    if (n->requires_grad) {
        n->parents = {x};
        Var xv = x;
        n->backprop = [xv, C, H, W, kh, kw, sh, sw, ph, pw, OH, OW, N, xstride, cstride](Node& self) {
            Tensor& gx = xv->ensure_grad();
            for (int64_t b = 0; b < N; ++b)
                col2im_scatter(self.grad.data() + b * cstride, gx.data() + b * xstride, C, H, W, kh,
                               kw, sh, sw, ph, pw, OH, OW);
        };
    }
    return n;
}

Var col2im(const Var& cols, int64_t C, int64_t H, int64_t W, int kh, int kw, int sh, int sw,
           int ph, int pw) {
    const Tensor& X = cols->value;
    if (X.rank() != 3) throw std::invalid_argument("col2im expects (N,CKK,L), got " + X.shape_str());
    const int64_t OH = conv_out(H, kh, sh, ph), OW = conv_out(W, kw, sw, pw);
    if (X.dim(1) != C * kh * kw || X.dim(2) != OH * OW)
        throw std::invalid_argument("col2im: geometry mismatch for " + X.shape_str());
    const int64_t N = X.dim(0);
    auto n = std::make_shared<Node>();
    n->value = Tensor(Shape{N, C, H, W});
    const int64_t xstride = C * H * W;
    const int64_t cstride = X.dim(1) * X.dim(2);
    for (int64_t b = 0; b < N; ++b)
        col2im_scatter(X.data() + b * cstride, n->value.data() + b * xstride, C, H, W, kh, kw, sh,
                       sw, ph, pw, OH, OW);
    n->requires_grad = cols->requires_grad;
    if (n->requires_grad) {
        n->parents = {cols};
        Var cv = cols;
        n->backprop = [cv, C, H, W, kh, kw, sh, sw, ph, pw, OH, OW, N, xstride, cstride](Node& self) {
            Tensor& gc = cv->ensure_grad();
            std::vector<double> buf(static_cast<size_t>(cstride));
            for (int64_t b = 0; b < N; ++b) {
                std::fill(buf.begin(), buf.end(), 0.0);
                im2col_gather(self.grad.data() + b * xstride, buf.data(), C, H, W, kh, kw, sh, sw,
                              ph, pw, OH, OW);
                K().axpy(1.0, buf.data(), gc.data() + b * cstride, buf.size());
            }
        };
    }
    return n;
}

Var gather_rows(const Var& table, const std::vector<int64_t>& ids) {
    const Tensor& T = table->value;
    if (T.rank() != 2) throw std::invalid_argument("gather_rows expects (V,D), got " + T.shape_str());
    const int64_t D = T.dim(1);
    auto n = std::make_shared<Node>();
    n->value = Tensor(Shape{static_cast<int64_t>(ids.size()), D});
    for (size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] < 0 || ids[i] >= T.dim(0)) throw std::out_of_range("gather_rows: bad id");
        std::memcpy(n->value.data() + static_cast<int64_t>(i) * D, T.data() + ids[i] * D,
                    static_cast<size_t>(D) * sizeof(double));
    }
    n->requires_grad = table->requires_grad;
    if (n->requires_grad) {
        n->parents = {table};
        Var tv = table;
        n->backprop = [tv, ids, D](Node& self) {
            Tensor& g = tv->ensure_grad();
            for (size_t i = 0; i < ids.size(); ++i)
                K().axpy(1.0, self.grad.data() + static_cast<int64_t>(i) * D,
                         g.data() + ids[i] * D, static_cast<size_t>(D));
        };
    }
    return n;
}

Var interp_linear(const Var& a, int axis, int64_t out_len) {
    check_axis(a, axis);
    const AxisView v = axis_view(a->value.shape(), axis);
    if (out_len == v.len) return a;
    Shape os = a->value.shape();
    os[static_cast<size_t>(axis)] = out_len;
    // Align-corners sampling grid.
    std::vector<int64_t> i0(static_cast<size_t>(out_len));
    std::vector<double> w1(static_cast<size_t>(out_len));
    for (int64_t i = 0; i < out_len; ++i) {
        double pos = out_len > 1
                         ? static_cast<double>(i) * static_cast<double>(v.len - 1) /
                               static_cast<double>(out_len - 1)
                         : static_cast<double>(v.len - 1) / 2.0;
        int64_t lo = static_cast<int64_t>(pos);
        if (lo >= v.len - 1) lo = v.len > 1 ? v.len - 2 : 0;
        i0[static_cast<size_t>(i)] = lo;
        w1[static_cast<size_t>(i)] = v.len > 1 ? pos - static_cast<double>(lo) : 0.0;
    }
    auto n = std::make_shared<Node>();
    n->value = Tensor(os);
    const double* x = a->value.data();
    double* y = n->value.data();
    for (int64_t o = 0; o < v.outer; ++o) {
        for (int64_t i = 0; i < out_len; ++i) {
            const int64_t lo = i0[static_cast<size_t>(i)];
            const int64_t hi = std::min<int64_t>(lo + 1, v.len - 1);
            const double w = w1[static_cast<size_t>(i)];
            const double* xl = x + (o * v.len + lo) * v.inner;
            const double* xh = x + (o * v.len + hi) * v.inner;
            double* dst = y + (o * out_len + i) * v.inner;
            for (int64_t j = 0; j < v.inner; ++j) dst[j] = (1.0 - w) * xl[j] + w * xh[j];
        }
    }
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av, v, out_len, i0, w1](Node& self) {
            Tensor& ga = av->ensure_grad();
            for (int64_t o = 0; o < v.outer; ++o) {
                for (int64_t i = 0; i < out_len; ++i) {
                    const int64_t lo = i0[static_cast<size_t>(i)];
                    const int64_t hi = std::min<int64_t>(lo + 1, v.len - 1);
                    const double w = w1[static_cast<size_t>(i)];
                    const double* g = self.grad.data() + (o * out_len + i) * v.inner;
                    K().axpy(1.0 - w, g, ga.data() + (o * v.len + lo) * v.inner,
                             static_cast<size_t>(v.inner));
                    K().axpy(w, g, ga.data() + (o * v.len + hi) * v.inner,
                             static_cast<size_t>(v.inner));
                }
            }
        };
    }
    return n;
}

Var avgpool_axis(const Var& a, int axis, int64_t out_len) {
    check_axis(a, axis);
    const AxisView v = axis_view(a->value.shape(), axis);
    if (out_len == v.len) return a;
    Shape os = a->value.shape();
    os[static_cast<size_t>(axis)] = out_len;
    std::vector<int64_t> lo(static_cast<size_t>(out_len)), hi(static_cast<size_t>(out_len));
    for (int64_t i = 0; i < out_len; ++i) {
        lo[static_cast<size_t>(i)] = i * v.len / out_len;
        hi[static_cast<size_t>(i)] = std::max(lo[static_cast<size_t>(i)] + 1, (i + 1) * v.len / out_len);
    }
    auto n = std::make_shared<Node>();
    n->value = Tensor(os);
    const double* x = a->value.data();
    double* y = n->value.data();
    for (int64_t o = 0; o < v.outer; ++o) {
        for (int64_t i = 0; i < out_len; ++i) {
            double* dst = y + (o * out_len + i) * v.inner;
            const double inv = 1.0 / static_cast<double>(hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)]);
            for (int64_t l = lo[static_cast<size_t>(i)]; l < hi[static_cast<size_t>(i)]; ++l)
                K().axpy(inv, x + (o * v.len + l) * v.inner, dst, static_cast<size_t>(v.inner));
        }
    }
    n->requires_grad = a->requires_grad;
    if (n->requires_grad) {
        n->parents = {a};
        Var av = a;
        n->backprop = [av, v, out_len, lo, hi](Node& self) {
            Tensor& ga = av->ensure_grad();
            for (int64_t o = 0; o < v.outer; ++o) {
                for (int64_t i = 0; i < out_len; ++i) {
                    const double inv =
                        1.0 / static_cast<double>(hi[static_cast<size_t>(i)] - lo[static_cast<size_t>(i)]);
                    const double* g = self.grad.data() + (o * out_len + i) * v.inner;
                    for (int64_t l = lo[static_cast<size_t>(i)]; l < hi[static_cast<size_t>(i)]; ++l)
                        K().axpy(inv, g, ga.data() + (o * v.len + l) * v.inner,
                                 static_cast<size_t>(v.inner));
                }
            }
        };
    }
    return n;
}

} // namespace viasnet::ag
