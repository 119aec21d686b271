#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "viasnet/core/kernels.hpp"
#include "viasnet/core/nn.hpp"
#include "viasnet/core/ops.hpp"
#include "viasnet/core/rng.hpp"

using namespace viasnet;
using namespace viasnet::ag;

namespace {

Tensor random_tensor(Shape s, Rng& rng, double lo = -1.0, double hi = 1.0) {
    Tensor t(std::move(s));
    for (int64_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
    return t;
}
Tensor random_tensor(Shape s, Rng&& rng, double lo = -1.0, double hi = 1.0) {
    return random_tensor(std::move(s), rng, lo, hi);
}

// Projects op output against a fixed random tensor and compares analytic input
// gradients with central finite differences.
void gradcheck(const std::function<Var(const Var&)>& op, Tensor x0, double tol = 1e-7,
               double h = 1e-6) {
    Rng rng(99);
    Var x = leaf(x0, true);
    Var y = op(x);
    Tensor proj = random_tensor(y->value.shape(), rng);
    Var loss = sum_all(mul(y, constant(proj)));
    backward(loss);
    REQUIRE(x->has_grad);

    auto eval = [&](const Tensor& xt) {
        Var xv = leaf(xt, false);
        Var yv = op(xv);
        double acc = 0.0;
        for (int64_t i = 0; i < yv->value.size(); ++i) acc += yv->value[i] * proj[i];
        return acc;
    };
    const int64_t n = x0.size();
    const int64_t step = std::max<int64_t>(1, n / 24); // probe a spread of indices
    for (int64_t i = 0; i < n; i += step) {
        Tensor xp = x0, xm = x0;
        xp[i] += h;
        xm[i] -= h;
        const double fd = (eval(xp) - eval(xm)) / (2.0 * h);
        const double an = x->grad[i];
        CHECK(std::fabs(fd - an) < tol * std::max(1.0, std::max(std::fabs(fd), std::fabs(an))));
    }
}

} // namespace

TEST_CASE("rng streams are deterministic and named substreams differ") {
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(a.next_u64() != c.next_u64());
    Rng n1 = named_rng(7, "layer.w");
    Rng n2 = named_rng(7, "layer.b");
    CHECK(n1.next_u64() != n2.next_u64());
    double u = Rng(1).uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
}

TEST_CASE("kernel variants agree with the scalar reference") {
    const auto& s = kernels::scalar_ops();
    const auto& v = kernels::avx2_supported() ? kernels::avx2_ops() : kernels::scalar_ops();
    INFO("active backend: ", kernels::active().name);
    Rng rng(7);
    for (size_t n : {1u, 3u, 4u, 17u, 256u, 1001u}) {
        std::vector<double> a(n), b(n), r1(n), r2(n);
        for (size_t i = 0; i < n; ++i) {
            a[i] = rng.uniform(-2, 2);
            b[i] = rng.uniform(0.5, 2.5);
        }
        s.add(a.data(), b.data(), r1.data(), n);
        v.add(a.data(), b.data(), r2.data(), n);
        for (size_t i = 0; i < n; ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-14));
        s.mul(a.data(), b.data(), r1.data(), n);
        v.mul(a.data(), b.data(), r2.data(), n);
        for (size_t i = 0; i < n; ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-14));
        s.div(a.data(), b.data(), r1.data(), n);
        v.div(a.data(), b.data(), r2.data(), n);
        for (size_t i = 0; i < n; ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-14));
        CHECK(s.dot(a.data(), b.data(), n) == doctest::Approx(v.dot(a.data(), b.data(), n)).epsilon(1e-12));
        CHECK(s.sum(a.data(), n) == doctest::Approx(v.sum(a.data(), n)).epsilon(1e-12));
        CHECK(s.maxv(a.data(), n) == v.maxv(a.data(), n));
        r1 = b;
        r2 = b;
        s.axpy(0.37, a.data(), r1.data(), n);
        v.axpy(0.37, a.data(), r2.data(), n);
        for (size_t i = 0; i < n; ++i) CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-13));
    }
}

TEST_CASE("gemm variants agree across remainders") {
    const auto& s = kernels::scalar_ops();
    const auto& v = kernels::avx2_supported() ? kernels::avx2_ops() : kernels::scalar_ops();
    Rng rng(11);
    for (auto [M, N, K] : std::vector<std::array<size_t, 3>>{
             {1, 1, 1}, {4, 8, 16}, {5, 9, 7}, {13, 21, 33}, {32, 100, 64}, {3, 130, 40}}) {
        std::vector<double> A(M * K), B(K * N), C1(M * N, 0.5), C2(M * N, 0.5);
        for (auto& x : A) x = rng.uniform(-1, 1);
        for (auto& x : B) x = rng.uniform(-1, 1);
        for (bool acc : {false, true}) {
            s.gemm(M, N, K, A.data(), K, B.data(), N, C1.data(), N, acc);
            v.gemm(M, N, K, A.data(), K, B.data(), N, C2.data(), N, acc);
            for (size_t i = 0; i < M * N; ++i)
                CHECK(C1[i] == doctest::Approx(C2[i]).epsilon(1e-11));
        }
    }
}

TEST_CASE("elementwise op gradients") {
    Rng rng(3);
    gradcheck([](const Var& x) { return mulc(addc(x, 0.3), 2.5); }, random_tensor({3, 4}, rng));
    gradcheck([](const Var& x) { return exp_(x); }, random_tensor({2, 5}, rng));
    gradcheck([](const Var& x) { return log_(x); }, random_tensor({6}, rng, 0.3, 2.0));
    gradcheck([](const Var& x) { return sqrt_(x); }, random_tensor({6}, rng, 0.3, 2.0));
    gradcheck([](const Var& x) { return tanh_(x); }, random_tensor({7}, rng));
    gradcheck([](const Var& x) { return softplus(x); }, random_tensor({9}, rng, -3, 3));
    gradcheck([](const Var& x) { return relu(x); }, random_tensor({11}, rng, 0.1, 2.0));
}

TEST_CASE("broadcast binary op gradients (both sides)") {
    Rng rng(5);
    Tensor b = random_tensor({4}, rng, 0.5, 1.5);
    gradcheck([&](const Var& x) { return add(x, constant(b)); }, random_tensor({3, 4}, rng));
    gradcheck([&](const Var& x) { return mul(x, constant(b)); }, random_tensor({3, 4}, rng));
    gradcheck([&](const Var& x) { return div(x, constant(b)); }, random_tensor({3, 4}, rng));
    Tensor a = random_tensor({3, 4}, rng);
    gradcheck([&](const Var& x) { return mul(constant(a), x); }, random_tensor({4}, rng));
    gradcheck([&](const Var& x) { return div(constant(a), x); }, random_tensor({4}, rng, 0.5, 1.5));
    gradcheck([&](const Var& x) { return sub(constant(a), x); }, random_tensor({3, 1}, rng));
    // scalar broadcast
    gradcheck([&](const Var& x) { return mul(constant(a), x); }, random_tensor({1}, rng, 0.5, 1.5));
}

TEST_CASE("matmul gradients across batch broadcasts") {
    Rng rng(8);
    Tensor b22 = random_tensor({4, 5}, rng);
    gradcheck([&](const Var& x) { return matmul(x, constant(b22)); }, random_tensor({3, 4}, rng));
    gradcheck([&](const Var& x) { return matmul(constant(random_tensor({3, 4}, Rng(1))), x); },
              random_tensor({4, 5}, rng));
    Tensor b3 = random_tensor({2, 4, 5}, rng);
    gradcheck([&](const Var& x) { return matmul(x, constant(b3)); }, random_tensor({2, 3, 4}, rng));
    gradcheck([&](const Var& x) { return matmul(x, constant(b22)); }, random_tensor({2, 3, 4}, rng));
    gradcheck([&](const Var& x) { return matmul(constant(random_tensor({3, 4}, Rng(2))), x); },
              random_tensor({2, 4, 5}, rng));
}

TEST_CASE("softmax, reductions, shape op gradients") {
    Rng rng(13);
    gradcheck([](const Var& x) { return softmax_last(x); }, random_tensor({3, 6}, rng, -2, 2));
    gradcheck([](const Var& x) { return sum_all(x); }, random_tensor({3, 4}, rng));
    gradcheck([](const Var& x) { return mean_all(x); }, random_tensor({5}, rng));
    gradcheck([](const Var& x) { return sum_axis(x, 1, false); }, random_tensor({3, 4, 2}, rng));
    gradcheck([](const Var& x) { return mean_axis(x, -1, true); }, random_tensor({3, 4}, rng));
    gradcheck([](const Var& x) { return reshape(x, {6, 2}); }, random_tensor({3, 4}, rng));
    gradcheck([](const Var& x) { return permute(x, {2, 0, 1}); }, random_tensor({2, 3, 4}, rng));
    gradcheck([](const Var& x) { return slice(x, 1, 1, 2); }, random_tensor({3, 4}, rng));
    gradcheck([](const Var& x) { return pad_axis(x, 0, 2, 1); }, random_tensor({3, 4}, rng));
    gradcheck([](const Var& x) { return concat({x, mulc(x, 2.0)}, 1); }, random_tensor({3, 4}, rng));
    gradcheck([](const Var& x) { return interp_linear(x, 1, 7); }, random_tensor({2, 4, 3}, rng));
    gradcheck([](const Var& x) { return interp_linear(x, 1, 3); }, random_tensor({2, 8, 3}, rng));
    gradcheck([](const Var& x) { return avgpool_axis(x, 1, 3); }, random_tensor({2, 8, 3}, rng));
    gradcheck([](const Var& x) { return avgpool_axis(x, 1, 5); }, random_tensor({2, 8, 3}, rng));
}

TEST_CASE("im2col/col2im adjoint pair and conv gradients") {
    Rng rng(17);
    gradcheck([](const Var& x) { return im2col(x, 3, 3, 1, 1, 1, 1); },
              random_tensor({1, 2, 5, 6}, rng));
    gradcheck([](const Var& x) { return im2col(x, 3, 3, 2, 2, 1, 1); },
              random_tensor({2, 2, 6, 6}, rng));
    gradcheck([](const Var& x) { return col2im(x, 2, 6, 6, 2, 2, 2, 2, 0, 0); },
              random_tensor({1, 2 * 4, 9}, rng));

    Tensor w = random_tensor({3, 2, 3, 3}, rng, -0.4, 0.4);
    Tensor b = random_tensor({3}, rng, -0.2, 0.2);
    gradcheck(
        [&](const Var& x) {
            Var bw = constant(b);
            return nn::conv2d(x, constant(w), &bw, 2, 2, 1, 1);
        },
        random_tensor({2, 2, 8, 8}, rng));
    gradcheck(
        [&](const Var& w_) {
            Var xin = constant(random_tensor({1, 2, 6, 6}, Rng(21)));
            return nn::conv2d(xin, w_, nullptr, 1, 1, 1, 1);
        },
        w);
    Tensor wt = random_tensor({2, 3, 2, 2}, rng, -0.4, 0.4);
    gradcheck(
        [&](const Var& x) {
            Var bw = constant(b);
            return nn::conv_transpose2d(x, constant(wt), &bw, 2, 2);
        },
        random_tensor({1, 2, 4, 5}, rng));
    gradcheck(
        [&](const Var& w_) {
            Var xin = constant(random_tensor({1, 2, 4, 5}, Rng(22)));
            return nn::conv_transpose2d(xin, w_, nullptr, 2, 2);
        },
        wt);
}

TEST_CASE("gather_rows gradient and layer helpers") {
    Rng rng(23);
    gradcheck([](const Var& t) { return gather_rows(t, {0, 2, 2, 1}); },
              random_tensor({4, 3}, rng));

    ag::ParamStore ps(5);
    nn::LayerNorm ln(ps, "ln", 6);
    gradcheck([&](const Var& x) { return ln(x); }, random_tensor({3, 6}, rng), 1e-6);

    nn::Mha mha(ps, "mha", 8, 2);
    gradcheck([&](const Var& x) { return mha(x); }, random_tensor({2, 5, 8}, rng, -0.5, 0.5), 1e-6);

    nn::AttentionBlock blk(ps, "blk", 8, 2, 16);
    Tensor bias(Shape{2, 1, 5});
    bias.at(1, 0, 4) = -1e9;
    gradcheck([&](const Var& x) { return blk(x, &bias); }, random_tensor({2, 5, 8}, rng, -0.5, 0.5),
              1e-6);
}

TEST_CASE("conv_transpose2d doubles spatial dims with k=s=2") {
    Rng rng(29);
    Var x = constant(random_tensor({1, 3, 7, 12}, rng));
    ag::ParamStore ps(6);
    nn::ConvT2d up(ps, "up", 3, 2, 2, 2);
    Var y = up(x);
    CHECK(y->value.shape() == Shape{1, 2, 14, 24});
}

TEST_CASE("transposed conv parameter-free temporal path: interp_linear adds no params") {
    // trilinear temporal upsampling is pure interpolation
    Rng rng(31);
    ag::ParamStore ps(7);
    Var x = constant(random_tensor({1, 4, 6}, rng));
    Var y = interp_linear(x, 1, 8);
    CHECK(ps.total_count() == 0);
    CHECK(y->value.shape() == Shape{1, 8, 6});
}

TEST_CASE("parameter init is order-independent given names") {
    ag::ParamStore a(99), b(99);
    Var a1 = a.create("x.w", {3, 3}, Init::Normal, 1.0);
    Var a2 = a.create("y.w", {3, 3}, Init::Normal, 1.0);
    Var b2 = b.create("y.w", {3, 3}, Init::Normal, 1.0);
    Var b1 = b.create("x.w", {3, 3}, Init::Normal, 1.0);
    for (int64_t i = 0; i < 9; ++i) {
        CHECK(a1->value[i] == b1->value[i]);
        CHECK(a2->value[i] == b2->value[i]);
    }
    CHECK(a1->value[0] != a2->value[0]);
}
