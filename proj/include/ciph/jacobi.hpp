#pragma once

#include "ciph/linalg.hpp"

namespace ciph {

struct SymmetricEigen {
  Vector values;   // ascending
  Matrix vectors;  // column c belongs to values[c]
};

/// Cyclic Jacobi eigensolver for a small symmetric matrix.
///
/// Only the upper triangle is read. Sweeps continue until the off-diagonal
/// Frobenius norm falls below machine precision relative to the full norm,
/// or `max_sweeps` is reached.
SymmetricEigen jacobi_eigen(const Matrix& a, int max_sweeps = 100);

/// Ascending eigenvalues of the symmetric part (A + A^T)/2.
Vector symmetric_eigenvalues(const Matrix& a);

}  // namespace ciph
