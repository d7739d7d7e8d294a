#pragma once

#include <optional>
#include <utility>

#include "ciph/field.hpp"
#include "ciph/linalg.hpp"
#include "ciph/tensor4.hpp"

namespace ciph {

/// Biderivation {f, g}_A = df^T A dg, stored as its constant n x n matrix.
/// Skewness is not assumed; see is_skew.
class BracketMatrix {
 public:
  /// Throws InvalidArgument for non-square, empty, oversized or non-finite input.
  explicit BracketMatrix(Matrix a);

  static BracketMatrix zero(int n);
  /// [[0, 1], [-1, 0]].
  static BracketMatrix standard_skew();
  /// Block diagonal with the 2x2 standard skew block scaled by each factor.
  static BracketMatrix block_skew(const std::vector<double>& block_scales);

  int dim() const noexcept { return static_cast<int>(a_.rows()); }
  const Matrix& matrix() const noexcept { return a_; }
  double operator()(int i, int j) const { return a_(i, j); }

  BracketMatrix scaled(double factor) const { return BracketMatrix(a_ * factor); }

 private:
  Matrix a_;
};

/// df(x)^T A dg(x).
double bracket_eval(const BracketMatrix& a, const ScalarField& f, const ScalarField& g,
                    const Vector& x);

/// t[i,j,k,l] = A[i,k] * B[j,l]; the four-derivation (f,s,h,q) -> {f,h}_A {s,q}_B.
Tensor4 product_tensor(const BracketMatrix& a, const BracketMatrix& b);

struct SkewCheck {
  bool skew = true;
  double residual = 0.0;                        // max |A + A^T|
  std::optional<std::pair<int, int>> witness;  // zero-based arg-max on failure
};

/// True iff max |A + A^T| <= tol.
SkewCheck is_skew(const BracketMatrix& a, double tol);

}  // namespace ciph
