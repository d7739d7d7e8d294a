#pragma once

#include <optional>
#include <string_view>

#include "ciph/brackets.hpp"
#include "ciph/linalg.hpp"
#include "ciph/tensor4.hpp"

namespace ciph {

enum class SplitStatus { Split, NotRankOne, NotSkew, NotProportional, NegativeGamma };

std::string_view to_string(SplitStatus s) noexcept;

/// How a split was found.
enum class SplitRoute {
  None,
  Product,    // t is (up to tolerance) a raw product A[i,k] B[j,l]
  Symmetric,  // t is a (k,l)-symmetric representative of gamma {s,h}_J {f,h}_J
};

std::string_view to_string(SplitRoute r) noexcept;

/// Canonical splitting E(f,s,h) = gamma {s,h}_J {f,h}_J.
///
/// Gauge: J has max-abs entry 1 and its first nonzero entry in row-major
/// order is positive; the zero tensor splits with J = 0 and gamma = 0.
/// `gamma` is always the coefficient of the three-argument function E, so a
/// symmetric representative gamma/2 (J[i,k]J[j,l] + J[i,l]J[j,k]) reports
/// gamma.
struct SplitResult {
  SplitStatus status = SplitStatus::NotRankOne;
  SplitRoute route = SplitRoute::None;
  std::optional<BracketMatrix> J;
  std::optional<double> gamma;
  double residual = 0.0;

  bool split() const noexcept { return status == SplitStatus::Split; }
};

/// F[i*n + k, j*n + l] = t[i,j,k,l]; the product form A[i,k] B[j,l] becomes
/// the rank-one matrix vec(A) vec(B)^T.
Matrix flatten_pairs(const Tensor4& t);

/// Inverse of flatten_pairs.
Tensor4 unflatten_pairs(const Matrix& f);

struct RankOneFactors {
  bool rank_one = false;
  BracketMatrix a;
  BracketMatrix b;
  double residual = 0.0;  // max |F - vec(A) vec(B)^T|
};

/// Pivoted rank-one factorization of an n^2 x n^2 pair-flattened matrix.
/// Accepts when max |F - a b^T| <= tol * max|F|.
RankOneFactors rank_one_factor(const Matrix& f, double tol);

/// Canonical form of the product tensor A[i,k] B[j,l].
/// Skewness and proportionality are judged relative to the max-abs entry of
/// A and B respectively.
SplitResult split_product(const BracketMatrix& a, const BracketMatrix& b, double tol);

/// Recover gamma and J from a tensor in either raw product form or symmetric
/// representative form. A SPLIT is only reported once the reconstruction
/// matches t within tol * max(1, max|t|).
SplitResult split_tensor(const Tensor4& t, double tol);

/// The tensor a SplitResult stands for: product_tensor(J, gamma J) for the
/// product route, its symmetrisation for the symmetric route.
Tensor4 reconstruct(const SplitResult& r);

}  // namespace ciph
