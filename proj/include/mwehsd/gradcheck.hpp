#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "mwehsd/model.hpp"

namespace mwehsd {

struct GradCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;  // number of scalar partials compared
  std::string worst;        // name of the worst partial, e.g. "weight[12]"
};

/// |a - n| / max(|a|, |n|, 1e-6). The floor keeps partials that are zero
/// up to round-off from reading as large relative errors.
double relative_error(double analytic, double numeric);

// Each check draws seeded random parameters and inputs, takes the scalar
// loss L = sum(r * output) for a random probe r (cross-entropy for the full
// model), and compares every analytic partial against the central difference
// (L(v + eps) - L(v - eps)) / (2 eps), for parameters and inputs alike.

GradCheckResult grad_check_conv1d(std::size_t length, std::size_t in, std::size_t out,
                                  std::size_t kernel, double eps, std::uint64_t seed);
GradCheckResult grad_check_dense(std::size_t in, std::size_t out, double eps, std::uint64_t seed);
GradCheckResult grad_check_lstm(std::size_t rows, std::size_t steps, std::size_t in,
                                std::size_t units, double eps, std::uint64_t seed);
/// Whole model on a random input; `config.seed` is overridden by `seed`.
GradCheckResult grad_check_model(ModelConfig config, double eps, std::uint64_t seed);

}  // namespace mwehsd
