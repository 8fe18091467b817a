#ifndef SDC_TENSOR_HPP
#define SDC_TENSOR_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <vector>

#include "sdc/errors.hpp"

namespace sdc {

// Dense row-major tensor. Rank is dynamic (1..4 in practice).
template <typename T>
struct Tensor {
  std::vector<int64_t> shape;
  std::vector<T> data;

  Tensor() = default;
  explicit Tensor(std::vector<int64_t> s) : shape(std::move(s)) {
    data.assign(static_cast<size_t>(numel_of(shape)), T(0));
  }
  Tensor(std::vector<int64_t> s, std::vector<T> d)
      : shape(std::move(s)), data(std::move(d)) {
    if (static_cast<int64_t>(data.size()) != numel_of(shape))
      throw ShapeError("Tensor: data size does not match shape");
  }

  static int64_t numel_of(const std::vector<int64_t>& s) {
    int64_t n = 1;
    for (int64_t v : s) n *= v;
    return n;
  }

  static Tensor zeros(std::vector<int64_t> s) { return Tensor(std::move(s)); }
  static Tensor full(std::vector<int64_t> s, T value) {
    Tensor t(std::move(s));
    for (auto& v : t.data) v = value;
    return t;
  }
  static Tensor scalar(T value) { return Tensor({1}, {value}); }

  int64_t numel() const { return static_cast<int64_t>(data.size()); }
  int rank() const { return static_cast<int>(shape.size()); }
  int64_t dim(int i) const { return shape[static_cast<size_t>(i)]; }

  T* ptr() { return data.data(); }
  const T* ptr() const { return data.data(); }

  T& at(int64_t i) { return data[static_cast<size_t>(i)]; }
  const T& at(int64_t i) const { return data[static_cast<size_t>(i)]; }

  // 2-D accessors (row-major).
  T& at(int64_t r, int64_t c) { return data[static_cast<size_t>(r * shape[1] + c)]; }
  const T& at(int64_t r, int64_t c) const {
    return data[static_cast<size_t>(r * shape[1] + c)];
  }

  bool same_shape(const Tensor& o) const { return shape == o.shape; }

  void fill(T value) {
    for (auto& v : data) v = value;
  }

  void add_(const Tensor& o) {
    if (!same_shape(o)) throw ShapeError("Tensor::add_: shape mismatch");
    for (size_t i = 0; i < data.size(); ++i) data[i] += o.data[i];
  }

  void axpy_(T alpha, const Tensor& o) {
    if (!same_shape(o)) throw ShapeError("Tensor::axpy_: shape mismatch");
    for (size_t i = 0; i < data.size(); ++i) data[i] += alpha * o.data[i];
  }

  void scale_(T alpha) {
    for (auto& v : data) v *= alpha;
  }

  bool all_finite() const {
    for (const auto& v : data)
      if (!std::isfinite(static_cast<double>(v))) return false;
    return true;
  }

  double sum_sq() const {
    double s = 0.0;
    for (const auto& v : data) s += static_cast<double>(v) * static_cast<double>(v);
    return s;
  }

  T max_abs() const {
    T m = T(0);
    for (const auto& v : data) m = std::max(m, static_cast<T>(std::abs(static_cast<double>(v))));
    return m;
  }

  template <typename U>
  Tensor<U> cast() const {
    Tensor<U> out;
    out.shape = shape;
    out.data.resize(data.size());
    for (size_t i = 0; i < data.size(); ++i) out.data[i] = static_cast<U>(data[i]);
    return out;
  }
};

using TensorF = Tensor<float>;
using TensorD = Tensor<double>;

}  // namespace sdc

#endif  // SDC_TENSOR_HPP
