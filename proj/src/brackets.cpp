#include "ciph/brackets.hpp"

#include <cmath>
#include <string>

#include "ciph/errors.hpp"

namespace ciph {

BracketMatrix::BracketMatrix(Matrix a) : a_(std::move(a)) {
  if (a_.rows() == 0 || a_.rows() != a_.cols()) {
    throw InvalidArgument("bracket matrix must be square and non-empty");
  }
  if (a_.rows() > 32) throw InvalidArgument("bracket matrix dimension exceeds 32");
  if (!a_.allFinite()) throw NonFiniteValue("bracket matrix has a non-finite entry");
}

BracketMatrix BracketMatrix::zero(int n) { return BracketMatrix(Matrix::Zero(n, n)); }

BracketMatrix BracketMatrix::standard_skew() {
  Matrix j(2, 2);
  j << 0.0, 1.0, -1.0, 0.0;
  return BracketMatrix(std::move(j));
}

BracketMatrix BracketMatrix::block_skew(const std::vector<double>& block_scales) {
  const auto blocks = static_cast<Eigen::Index>(block_scales.size());
  Matrix j = Matrix::Zero(2 * blocks, 2 * blocks);
  for (Eigen::Index b = 0; b < blocks; ++b) {
    j(2 * b, 2 * b + 1) = block_scales[static_cast<std::size_t>(b)];
    j(2 * b + 1, 2 * b) = -block_scales[static_cast<std::size_t>(b)];
  }
  return BracketMatrix(std::move(j));
}

double bracket_eval(const BracketMatrix& a, const ScalarField& f, const ScalarField& g,
                    const Vector& x) {
  const int n = a.dim();
  if (f.dim() != n || g.dim() != n || x.size() != n) {
    throw DimensionMismatch("bracket operands must share dimension " + std::to_string(n));
  }
  return f.gradient(x).dot(a.matrix() * g.gradient(x));
}

Tensor4 product_tensor(const BracketMatrix& a, const BracketMatrix& b) {
  const int n = a.dim();
  if (b.dim() != n) throw DimensionMismatch("bracket matrices differ in dimension");
  Tensor4 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t.set(i, j, k, l, a(i, k) * b(j, l));
  return t;
}

SkewCheck is_skew(const BracketMatrix& a, double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
  SkewCheck out;
  const int n = a.dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = std::abs(a(i, j) + a(j, i));
      if (r > out.residual) {
        out.residual = r;
        out.witness = {i, j};
      }
    }
  }
  out.skew = out.residual <= tol;
  if (out.skew) out.witness.reset();
  return out;
}

}  // namespace ciph
