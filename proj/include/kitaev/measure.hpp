#pragma once

#include <cstdint>

#include "kitaev/group.hpp"

namespace kitaev {

/// Single-site marginals nu_beta (vertices) and its dual twin (faces); both
/// depend only on whether the label is neutral.
struct MeasureParams {
  double beta = 0.0;
  double q = 1.0;
  std::size_t order = 2;
  double nu_neutral = 0.5;
  double nu_excited = 0.5;

  double weight(std::uint32_t index) const { return index == 0 ? nu_neutral : nu_excited; }
};

/// Throws std::invalid_argument for beta < 0 or non-finite beta.
MeasureParams build_measure_params(double beta, const GroupSpec& group);

}  // namespace kitaev
