#include "firecast/activation.hpp"

#include "firecast/errors.hpp"

namespace firecast {

std::string to_string(Activation kind) {
  return kind == Activation::Relu ? "relu" : "sigmoid";
}

Activation activation_from_string(const std::string& name) {
  if (name == "relu") return Activation::Relu;
  if (name == "sigmoid") return Activation::Sigmoid;
  throw ValidationError("unknown activation \"" + name +
                        "\"; expected \"relu\" or \"sigmoid\"");
}

}  // namespace firecast
