#include "ciph/field.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "ciph/errors.hpp"

namespace ciph {

namespace {

double int_pow(double base, int e) {
  double r = 1.0;
  for (int p = 0; p < e; ++p) r *= base;
  return r;
}

}  // namespace

ScalarField ScalarField::polynomial(int n, std::vector<Monomial> monomials) {
  if (n < 1) throw InvalidArgument("field dimension must be positive");
  std::map<std::vector<int>, bool> seen;
  for (const auto& m : monomials) {
    if (static_cast<int>(m.exponents.size()) != n) {
      throw InvalidArgument("monomial has " + std::to_string(m.exponents.size()) +
                            " exponents, expected " + std::to_string(n));
    }
    if (std::any_of(m.exponents.begin(), m.exponents.end(), [](int e) { return e < 0; })) {
      throw InvalidArgument("negative exponent in monomial");
    }
    if (!std::isfinite(m.coefficient)) throw InvalidArgument("non-finite coefficient");
    if (!seen.emplace(m.exponents, true).second) {
      throw InvalidArgument("duplicate monomial multi-index");
    }
  }
  ScalarField f(n, "poly");
  f.monomials_ = std::move(monomials);
  return f;
}

ScalarField ScalarField::constant(int n, double value) {
  if (value == 0.0) return polynomial(n, {});
  return polynomial(n, {{std::vector<int>(n, 0), value}});
}

ScalarField ScalarField::coordinate(int n, int i) {
  if (i < 0 || i >= n) throw InvalidArgument("coordinate index out of range");
  std::vector<int> e(n, 0);
  e[i] = 1;
  return polynomial(n, {{e, 1.0}});
}

ScalarField ScalarField::linear(const Vector& coefficients) {
  const int n = static_cast<int>(coefficients.size());
  std::vector<Monomial> ms;
  for (int i = 0; i < n; ++i) {
    if (coefficients[i] == 0.0) continue;
    std::vector<int> e(n, 0);
    e[i] = 1;
    ms.push_back({e, coefficients[i]});
  }
  return polynomial(n, std::move(ms));
}

ScalarField ScalarField::quadratic(const Matrix& q) {
  const int n = static_cast<int>(q.rows());
  if (q.cols() != n) throw DimensionMismatch("quadratic form needs a square matrix");
  std::vector<Monomial> ms;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double c = i == j ? q(i, i) / 2 : (q(i, j) + q(j, i)) / 2;
      if (c == 0.0) continue;
      std::vector<int> e(n, 0);
      e[i] += 1;
      e[j] += 1;
      ms.push_back({e, c});
    }
  }
  return polynomial(n, std::move(ms));
}

ScalarField ScalarField::exp_sum(int n, double scale) {
  return custom(
      n, [scale](const Vector& x) { return scale * x.array().exp().sum(); },
      [scale](const Vector& x) -> Vector { return scale * x.array().exp().matrix(); },
      "exp_sum");
}

ScalarField ScalarField::exp_neg_sum(int n, double lambda) {
  return custom(
      n, [lambda](const Vector& x) { return lambda * std::exp(-x.sum()); },
      [lambda, n](const Vector& x) -> Vector {
        return Vector::Constant(n, -lambda * std::exp(-x.sum()));
      },
      "exp_neg_sum");
}

ScalarField ScalarField::custom(int n, ValueFn value, GradientFn gradient, std::string name) {
  if (n < 1) throw InvalidArgument("field dimension must be positive");
  if (!value || !gradient) throw InvalidArgument("custom field needs value and gradient");
  ScalarField f(n, std::move(name));
  f.value_fn_ = std::make_shared<const ValueFn>(std::move(value));
  f.gradient_fn_ = std::make_shared<const GradientFn>(std::move(gradient));
  return f;
}

void ScalarField::check_point(const Vector& x) const {
  if (x.size() != n_) {
    throw DimensionMismatch("point has dimension " + std::to_string(x.size()) +
                            ", field expects " + std::to_string(n_));
  }
}

double ScalarField::value(const Vector& x) const {
  check_point(x);
  if (value_fn_) return (*value_fn_)(x);
  double sum = 0.0;
  for (const auto& m : monomials_) {
    double term = m.coefficient;
    for (int i = 0; i < n_; ++i) term *= int_pow(x[i], m.exponents[i]);
    sum += term;
  }
  return sum;
}

Vector ScalarField::gradient(const Vector& x) const {
  check_point(x);
  if (gradient_fn_) {
    Vector g = (*gradient_fn_)(x);
    if (g.size() != n_) throw DimensionMismatch("custom gradient has wrong length");
    return g;
  }
  Vector g = Vector::Zero(n_);
  for (const auto& m : monomials_) {
    for (int d = 0; d < n_; ++d) {
      const int e = m.exponents[d];
      if (e == 0) continue;
      double term = m.coefficient * e;
      for (int i = 0; i < n_; ++i) term *= int_pow(x[i], i == d ? e - 1 : m.exponents[i]);
      g[d] += term;
    }
  }
  return g;
}

int ScalarField::degree() const noexcept {
  if (!is_polynomial()) return -1;
  int deg = 0;
  for (const auto& m : monomials_) {
    deg = std::max(deg, std::accumulate(m.exponents.begin(), m.exponents.end(), 0));
  }
  return deg;
}

}  // namespace ciph
