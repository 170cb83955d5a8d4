#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace firecast {

using Shape = std::vector<std::size_t>;

// Product of all dimensions; rejects zero-sized axes.
std::size_t shape_numel(const Shape& shape);

std::string shape_str(const Shape& shape);

// Row-major dense array of doubles, the currency of all network operations.
struct Tensor {
  Shape shape;
  std::vector<double> data;

  Tensor() = default;
  explicit Tensor(Shape s);
  Tensor(Shape s, std::vector<double> values);

  std::size_t numel() const { return data.size(); }
  std::size_t rank() const { return shape.size(); }

  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }
};

bool same_shape(const Tensor& a, const Tensor& b);

// Throws NumericError naming `what` if any element is NaN or infinite.
void ensure_finite(const Tensor& t, const std::string& what);

}  // namespace firecast
