#include "mwehsd/tensor.hpp"

#include "mwehsd/error.hpp"

namespace mwehsd {

Tensor::Tensor(std::vector<std::size_t> shape, std::vector<double> data)
    : shape_(std::move(shape)), data_(std::move(data)) {
  if (data_.size() != element_count(shape_)) {
    throw ShapeError("tensor data has " + std::to_string(data_.size()) + " values, shape " +
                     shape_string(shape_) + " needs " + std::to_string(element_count(shape_)));
  }
}

std::string shape_string(const std::vector<std::size_t>& shape) {
  std::string out = "[";
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(shape[i]);
  }
  return out + "]";
}

}  // namespace mwehsd
