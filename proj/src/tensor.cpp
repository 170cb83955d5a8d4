#include "firecast/tensor.hpp"

#include <cmath>
#include <sstream>

#include "firecast/errors.hpp"

namespace firecast {

std::size_t shape_numel(const Shape& shape) {
  std::size_t n = 1;
  for (std::size_t axis = 0; axis < shape.size(); ++axis) {
    if (shape[axis] == 0) {
      throw DimensionError("tensor axis " + std::to_string(axis) +
                           " has size 0; every dimension must be positive");
    }
    n *= shape[axis];
  }
  return n;
}

std::string shape_str(const Shape& shape) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) os << 'x';
    os << shape[i];
  }
  os << ']';
  return os.str();
}

Tensor::Tensor(Shape s) : shape(std::move(s)), data(shape_numel(shape), 0.0) {}

Tensor::Tensor(Shape s, std::vector<double> values)
    : shape(std::move(s)), data(std::move(values)) {
  const std::size_t expected = shape_numel(shape);
  if (data.size() != expected) {
    throw DimensionError("tensor data length " + std::to_string(data.size()) +
                         " does not match shape " + shape_str(shape) +
                         " (numel " + std::to_string(expected) + ")");
  }
}

bool same_shape(const Tensor& a, const Tensor& b) { return a.shape == b.shape; }

void ensure_finite(const Tensor& t, const std::string& what) {
  for (std::size_t i = 0; i < t.data.size(); ++i) {
    if (!std::isfinite(t.data[i])) {
      throw NumericError("non-finite value in " + what + " at flat index " +
                         std::to_string(i));
    }
  }
}

}  // namespace firecast
