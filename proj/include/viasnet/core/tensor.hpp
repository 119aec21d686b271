#pragma once

#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace viasnet {

using Shape = std::vector<int64_t>;

int64_t numel(const Shape& s);
std::string shape_str(const Shape& s);

// Dense row-major tensor of doubles. All math in this project runs at 64-bit
// precision; file containers downconvert on write.
class Tensor {
public:
    Tensor() = default;
    explicit Tensor(Shape shape) : shape_(std::move(shape)) {
        data_.assign(static_cast<size_t>(numel(shape_)), 0.0);
    }
    Tensor(Shape shape, double fill) : shape_(std::move(shape)) {
        data_.assign(static_cast<size_t>(numel(shape_)), fill);
    }

    static Tensor zeros(Shape s) { return Tensor(std::move(s)); }
    static Tensor full(Shape s, double v) { return Tensor(std::move(s), v); }
    static Tensor scalar(double v) { return Tensor(Shape{1}, v); }
    static Tensor from(Shape s, std::vector<double> vals);

    int64_t size() const { return static_cast<int64_t>(data_.size()); }
    int rank() const { return static_cast<int>(shape_.size()); }
    const Shape& shape() const { return shape_; }
    int64_t dim(int i) const {
        if (i < 0) i += rank();
        return shape_.at(static_cast<size_t>(i));
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    double& operator[](int64_t i) { return data_[static_cast<size_t>(i)]; }
    double operator[](int64_t i) const { return data_[static_cast<size_t>(i)]; }

    double& at(int64_t a, int64_t b) { return data_[static_cast<size_t>(a * shape_[1] + b)]; }
    double at(int64_t a, int64_t b) const { return data_[static_cast<size_t>(a * shape_[1] + b)]; }
    double& at(int64_t a, int64_t b, int64_t c) {
        return data_[static_cast<size_t>((a * shape_[1] + b) * shape_[2] + c)];
    }
    double at(int64_t a, int64_t b, int64_t c) const {
        return data_[static_cast<size_t>((a * shape_[1] + b) * shape_[2] + c)];
    }
    double& at(int64_t a, int64_t b, int64_t c, int64_t d) {
        return data_[static_cast<size_t>(((a * shape_[1] + b) * shape_[2] + c) * shape_[3] + d)];
    }
    double at(int64_t a, int64_t b, int64_t c, int64_t d) const {
        return data_[static_cast<size_t>(((a * shape_[1] + b) * shape_[2] + c) * shape_[3] + d)];
    }
    double& at(int64_t a, int64_t b, int64_t c, int64_t d, int64_t e) {
        return data_[static_cast<size_t>((((a * shape_[1] + b) * shape_[2] + c) * shape_[3] + d) * shape_[4] + e)];
    }

    // Same data, new shape; element count must match.
    Tensor reshaped(Shape s) const;

    bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }
    std::string shape_str() const { return viasnet::shape_str(shape_); }

private:
    Shape shape_;
    std::vector<double> data_;
};

} // namespace viasnet
