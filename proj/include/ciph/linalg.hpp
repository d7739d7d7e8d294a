#pragma once

#include <Eigen/Core>

namespace ciph {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Largest absolute entry; zero for empty inputs.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace ciph
