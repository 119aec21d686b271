#include "viasnet/core/tensor.hpp"

namespace viasnet {

int64_t numel(const Shape& s) {
    int64_t n = 1;
    for (int64_t d : s) {
        if (d < 0) throw std::invalid_argument("negative dimension in shape " + shape_str(s));
        n *= d;
    }
    return n;
}

std::string shape_str(const Shape& s) {
    std::string out = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(s[i]);
    }
    out += ")";
    return out;
}

Tensor Tensor::from(Shape s, std::vector<double> vals) {
    if (numel(s) != static_cast<int64_t>(vals.size()))
        throw std::invalid_argument("Tensor::from: " + viasnet::shape_str(s) + " does not hold " +
                                    std::to_string(vals.size()) + " values");
    Tensor t;
    t.shape_ = std::move(s);
    t.data_ = std::move(vals);
    return t;
}

Tensor Tensor::reshaped(Shape s) const {
    if (numel(s) != size())
        throw std::invalid_argument("reshape " + shape_str() + " -> " + viasnet::shape_str(s));
    Tensor t = *this;
    t.shape_ = std::move(s);
    return t;
}

} // namespace viasnet
