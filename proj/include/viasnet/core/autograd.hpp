#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "viasnet/core/rng.hpp"
#include "viasnet/core/tensor.hpp"

namespace viasnet::ag {

// Reverse-mode tape over dense f64 tensors. Graphs are built define-by-run;
// nodes hold their inputs via shared_ptr so a graph lives as long as its root.
struct Node {
    Tensor value;
    Tensor grad; // allocated on first contribution
    bool requires_grad = false;
    bool has_grad = false;
    std::string name; // non-empty for parameters
    std::vector<std::shared_ptr<Node>> parents;
    std::function<void(Node&)> backprop; // scatters node.grad into parents

    Tensor& ensure_grad() {
        if (!has_grad) {
            grad = Tensor::zeros(value.shape());
            has_grad = true;
        }
        return grad;
    }
};

using Var = std::shared_ptr<Node>;

Var constant(Tensor t);
Var leaf(Tensor t, bool requires_grad, std::string name = "");

inline Var constant_scalar(double v) { return constant(Tensor::scalar(v)); }

// Seeds d(root)/d(root) = 1 (root must be a scalar) and runs the tape in
// reverse topological order, accumulating into every reachable requires_grad
// node.
void backward(const Var& root);

enum class Init { Zeros, One, Normal, HeFanIn, Uniform };

// Named trainable parameters. Initialization is derived from hash(name)^seed,
// so values do not depend on construction order and shared submodules
// initialize identically across ablation masks.
class ParamStore {
public:
    explicit ParamStore(uint64_t seed = 0) : seed_(seed) {}

    Var create(const std::string& name, Shape shape, Init init, double arg = 0.0);
    Var get(const std::string& name) const;
    bool contains(const std::string& name) const { return params_.count(name) != 0; }

    const std::map<std::string, Var>& params() const { return params_; }
    int64_t total_count() const;
    std::vector<std::string> names() const;

    void zero_grads();
    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
    std::map<std::string, Var> params_;
};

} // namespace viasnet::ag
