#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ciph/linalg.hpp"

namespace ciph {

/// Smooth scalar function R^n -> R with an exact gradient.
///
/// The common case is a polynomial with rational coefficients, whose
/// gradient is computed term by term. A few closed-form fields (sums of
/// exponentials) back the built-in thermodynamic models. Instances are
/// immutable and cheap to copy.
class ScalarField {
 public:
  struct Monomial {
    std::vector<int> exponents;
    double coefficient = 0.0;
  };

  using ValueFn = std::function<double(const Vector&)>;
  using GradientFn = std::function<Vector(const Vector&)>;

  /// Polynomial sum of monomials. Throws InvalidArgument on negative
  /// exponents, exponent vectors of the wrong length, duplicated multi-indices
  /// or non-finite coefficients.
  static ScalarField polynomial(int n, std::vector<Monomial> monomials);

  static ScalarField constant(int n, double value);
  /// The coordinate function x_i (zero-based i).
  static ScalarField coordinate(int n, int i);
  /// Linear form sum_i c_i x_i.
  static ScalarField linear(const Vector& coefficients);
  /// Quadratic form x^T Q x / 2 for symmetric Q.
  static ScalarField quadratic(const Matrix& q);

  /// scale * sum_i exp(x_i).
  static ScalarField exp_sum(int n, double scale = 1.0);
  /// lambda * exp(-sum_i x_i); equals lambda / prod_i exp(x_i).
  static ScalarField exp_neg_sum(int n, double lambda = 1.0);

  /// Arbitrary field given by value and gradient callables.
  static ScalarField custom(int n, ValueFn value, GradientFn gradient,
                            std::string name = "custom");

  int dim() const noexcept { return n_; }
  const std::string& kind() const noexcept { return kind_; }

  double value(const Vector& x) const;
  double operator()(const Vector& x) const { return value(x); }
  Vector gradient(const Vector& x) const;

  /// Monomials for polynomial fields; empty for closed-form fields.
  const std::vector<Monomial>& monomials() const noexcept { return monomials_; }
  bool is_polynomial() const noexcept { return kind_ == "poly"; }

  /// Highest total degree of a polynomial field, -1 for closed-form fields.
  int degree() const noexcept;

 private:
  ScalarField(int n, std::string kind) : n_(n), kind_(std::move(kind)) {}

  void check_point(const Vector& x) const;

  int n_;
  std::string kind_;
  std::vector<Monomial> monomials_;
  std::shared_ptr<const ValueFn> value_fn_;
  std::shared_ptr<const GradientFn> gradient_fn_;
};

}  // namespace ciph
