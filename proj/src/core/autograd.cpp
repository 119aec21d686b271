#include "viasnet/core/autograd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace viasnet::ag {

Var constant(Tensor t) {
    auto n = std::make_shared<Node>();
    n->value = std::move(t);
    n->requires_grad = false;
    return n;
}

Var leaf(Tensor t, bool requires_grad, std::string name) {
    auto n = std::make_shared<Node>();
    n->value = std::move(t);
    n->requires_grad = requires_grad;
    n->name = std::move(name);
    return n;
}

void backward(const Var& root) {
    if (root->value.size() != 1)
        throw std::invalid_argument("backward: root must be scalar, got " + root->value.shape_str());
    if (!root->requires_grad) return;

    // Iterative post-order DFS; reversed finish order guarantees a node's grad
    // is complete before its backprop runs.
    std::vector<Node*> order;
    std::unordered_set<Node*> seen;
    struct Frame {
        Node* node;
        size_t next_parent;
    };
    std::vector<Frame> stack;
    stack.push_back({root.get(), 0});
    seen.insert(root.get());
    while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.next_parent < f.node->parents.size()) {
            Node* p = f.node->parents[f.next_parent++].get();
            if (p->requires_grad && seen.insert(p).second) stack.push_back({p, 0});
        } else {
            order.push_back(f.node);
            stack.pop_back();
        }
    }

    root->ensure_grad()[0] += 1.0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Node* n = *it;
        if (n->backprop && n->has_grad) n->backprop(*n);
    }
}

Var ParamStore::create(const std::string& name, Shape shape, Init init, double arg) {
    if (params_.count(name)) throw std::logic_error("duplicate parameter: " + name);
    Tensor t(shape);
    Rng rng = named_rng(seed_, name);
    switch (init) {
        case Init::Zeros:
            break;
        case Init::One:
            for (int64_t i = 0; i < t.size(); ++i) t[i] = 1.0;
            break;
        case Init::Normal:
            for (int64_t i = 0; i < t.size(); ++i) t[i] = rng.normal(0.0, arg);
            break;
        case Init::HeFanIn: {
            double std = std::sqrt(2.0 / arg);
            for (int64_t i = 0; i < t.size(); ++i) t[i] = rng.normal(0.0, std);
            break;
        }
        case Init::Uniform:
            for (int64_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-arg, arg);
            break;
    }
    Var v = leaf(std::move(t), true, name);
    params_.emplace(name, v);
    return v;
}

Var ParamStore::get(const std::string& name) const {
    auto it = params_.find(name);
    if (it == params_.end()) throw std::out_of_range("no parameter named " + name);
    return it->second;
}

int64_t ParamStore::total_count() const {
    int64_t n = 0;
    for (const auto& [k, v] : params_) n += v->value.size();
    return n;
}

std::vector<std::string> ParamStore::names() const {
    std::vector<std::string> out;
    out.reserve(params_.size());
    for (const auto& [k, v] : params_) out.push_back(k);
    return out;
}

void ParamStore::zero_grads() {
    for (auto& [k, v] : params_) {
        v->has_grad = false;
        v->grad = Tensor();
    }
}

} // namespace viasnet::ag
