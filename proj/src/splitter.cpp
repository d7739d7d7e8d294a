#include "ciph/splitter.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "ciph/conditions.hpp"
#include "ciph/errors.hpp"

namespace ciph {

std::string_view to_string(SplitStatus s) noexcept {
  switch (s) {
    case SplitStatus::Split:
      return "SPLIT";
    case SplitStatus::NotRankOne:
      return "NOT_RANK_ONE";
    case SplitStatus::NotSkew:
      return "NOT_SKEW";
    case SplitStatus::NotProportional:
      return "NOT_PROPORTIONAL";
    case SplitStatus::NegativeGamma:
      return "NEGATIVE_GAMMA";
  }
  return "UNKNOWN";
}

std::string_view to_string(SplitRoute r) noexcept {
  switch (r) {
    case SplitRoute::None:
      return "none";
    case SplitRoute::Product:
      return "product";
    case SplitRoute::Symmetric:
      return "symmetric";
  }
  return "unknown";
}

namespace {

void check_tol(double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
}

// First (row-major) position of the largest absolute entry.
std::pair<Eigen::Index, Eigen::Index> pivot(const Matrix& m) {
  std::pair<Eigen::Index, Eigen::Index> best{0, 0};
  double value = -1.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (std::abs(m(r, c)) > value) {
        value = std::abs(m(r, c));
        best = {r, c};
      }
    }
  }
  return best;
}

double tensor_distance(const Tensor4& a, const Tensor4& b) {
  double d = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t idx = 0; idx < av.size(); ++idx) d = std::max(d, std::abs(av[idx] - bv[idx]));
  return d;
}

// Flips J so that its first entry above `zero_tol` in row-major order is positive.
Matrix sign_gauge(Matrix j, double zero_tol) {
  for (Eigen::Index r = 0; r < j.rows(); ++r) {
    for (Eigen::Index c = 0; c < j.cols(); ++c) {
      if (std::abs(j(r, c)) > zero_tol) {
        if (j(r, c) < 0) j = -j;
        return j.array() + 0.0;  // no negative zeros
      }
    }
  }
  return j.array() + 0.0;
}

SplitResult zero_split(int n) {
  SplitResult r;
  r.status = SplitStatus::Split;
  r.route = SplitRoute::Product;
  r.J = BracketMatrix::zero(n);
  r.gamma = 0.0;
  return r;
}

// Recovers (gamma, J) from t[i,j,k,l] = c (J[i,k] J[j,l] + J[i,l] J[j,k]),
// where gamma = 2c is the coefficient of E.
SplitResult split_symmetric(const Tensor4& t, double tol) {
  const int n = t.dim();
  const double scale = std::max(1.0, t.max_abs());
  SplitResult fail;
  fail.status = SplitStatus::NotRankOne;

  // Row i of sqrt(c) J from -W_i, W_i[j,l] = t[i,j,i,l] = -c J[i,j] J[i,l].
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    Matrix neg(n, n);
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) neg(j, l) = -(t(i, j, i, l) + t(i, l, i, j)) / 2;
    Eigen::Index p = 0;
    const double d = neg.diagonal().maxCoeff(&p);
    if (d <= 0.0) continue;
    w.row(i) = neg.row(p) / std::sqrt(d);
  }

  const double wmax = max_abs(w);
  if (wmax == 0.0) {
    fail.residual = t.max_abs();
    return fail;
  }
  const double edge_tol = std::max(tol, 1e-14) * wmax;

  // Skewness w[i,l] = -w[l,i] fixes relative row signs along edges.
  std::vector<int> component(static_cast<std::size_t>(n), -1);
  int components = 0;
  for (int root = 0; root < n; ++root) {
    if (component[root] >= 0 || w.row(root).cwiseAbs().maxCoeff() <= edge_tol) continue;
    component[root] = components;
    std::queue<int> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const int i = frontier.front();
      frontier.pop();
      for (int l = 0; l < n; ++l) {
        if (component[l] >= 0 || std::abs(w(i, l)) <= edge_tol) continue;
        if (w(l, i) * w(i, l) > 0) w.row(l) *= -1.0;
        component[l] = components;
        frontier.push(l);
      }
    }
    ++components;
  }

  // Components do not see each other through W_i; cross entries
  // t[i,j,k,l] = c J[i,k] J[j,l] with (i,k) and (j,l) in different
  // components fix the remaining signs.
  auto largest_in = [&](int comp) {
    std::pair<int, int> best{-1, -1};
    double value = 0.0;
    for (int i = 0; i < n; ++i) {
      if (component[i] != comp) continue;
      for (int k = 0; k < n; ++k) {
        if (std::abs(w(i, k)) > value) {
          value = std::abs(w(i, k));
          best = {i, k};
        }
      }
    }
    return best;
  };
  const auto [i0, k0] = largest_in(0);
  for (int comp = 1; comp < components; ++comp) {
    const auto [j1, l1] = largest_in(comp);
    if (t(i0, j1, k0, l1) * w(i0, k0) * w(j1, l1) < 0) {
      for (int r = 0; r < n; ++r)
        if (component[r] == comp) w.row(r) *= -1.0;
    }
  }

  const double norm = max_abs(w);
  const Matrix j = sign_gauge(w / norm, tol);
  const auto skew = is_skew(BracketMatrix(j), std::max(tol, 1e-14));
  SplitResult r;
  r.status = SplitStatus::Split;
  r.route = SplitRoute::Symmetric;
  r.J = BracketMatrix(j);
  r.gamma = 2.0 * norm * norm;
  r.residual = tensor_distance(reconstruct(r), t);
  if (!skew.skew || r.residual > tol * scale) {
    fail.residual = r.residual;
    return fail;
  }
  return r;
}

}  // namespace

Matrix flatten_pairs(const Tensor4& t) {
  const int n = t.dim();
  Matrix f(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) f(i * n + k, j * n + l) = t(i, j, k, l);
  return f;
}

Tensor4 unflatten_pairs(const Matrix& f) {
  const auto rows = f.rows();
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows))));
  if (f.cols() != rows || static_cast<Eigen::Index>(n) * n != rows) {
    throw DimensionMismatch("pair-flattened matrix must be n^2 x n^2");
  }
  Tensor4 t(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) t.set(i, j, k, l, f(i * n + k, j * n + l));
  return t;
}

RankOneFactors rank_one_factor(const Matrix& f, double tol) {
  check_tol(tol);
  const auto rows = f.rows();
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows))));
  if (rows == 0 || f.cols() != rows || static_cast<Eigen::Index>(n) * n != rows) {
    throw DimensionMismatch("pair-flattened matrix must be n^2 x n^2");
  }

  const double fmax = max_abs(f);
  if (fmax == 0.0) return {true, BracketMatrix::zero(n), BracketMatrix::zero(n), 0.0};

  const auto [p, q] = pivot(f);
  const Vector a = f.col(q);
  const Vector b = f.row(p).transpose() / f(p, q);
  const double residual = max_abs(f - a * b.transpose());

  Matrix am(n, n);
  Matrix bm(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      am(i, k) = a[i * n + k];
      bm(i, k) = b[i * n + k];
    }
  return {residual <= tol * fmax, BracketMatrix(std::move(am)), BracketMatrix(std::move(bm)),
          residual};
}

SplitResult split_product(const BracketMatrix& a, const BracketMatrix& b, double tol) {
  check_tol(tol);
  const int n = a.dim();
  if (b.dim() != n) throw DimensionMismatch("bracket matrices differ in dimension");

  const double a_max = max_abs(a.matrix());
  const double b_max = max_abs(b.matrix());
  if (a_max == 0.0 || b_max == 0.0) return zero_split(n);

  SplitResult r;
  const Matrix a_unit = a.matrix() / a_max;
  const auto skew = is_skew(BracketMatrix(a_unit), tol);
  if (!skew.skew) {
    r.status = SplitStatus::NotSkew;
    r.residual = skew.residual;
    return r;
  }

  const auto [p, q] = pivot(a.matrix());
  const double lambda = b(static_cast<int>(p), static_cast<int>(q)) / a(static_cast<int>(p), static_cast<int>(q));
  const double mismatch = max_abs(b.matrix() - lambda * a.matrix());
  if (mismatch > tol * b_max) {
    r.status = SplitStatus::NotProportional;
    r.residual = mismatch;
    return r;
  }
  if (lambda < -tol) {
    r.status = SplitStatus::NegativeGamma;
    r.gamma = lambda * a_max * a_max;
    r.residual = mismatch;
    return r;
  }

  r.status = SplitStatus::Split;
  r.route = SplitRoute::Product;
  r.J = BracketMatrix(sign_gauge(a_unit, tol));
  r.gamma = lambda * a_max * a_max;
  r.residual = tensor_distance(reconstruct(r), product_tensor(a, b));
  return r;
}

SplitResult split_tensor(const Tensor4& t, double tol) {
  check_tol(tol);
  const double scale = std::max(1.0, t.max_abs());

  SplitResult product;
  const auto factors = rank_one_factor(flatten_pairs(t), tol);
  if (factors.rank_one) {
    product = split_product(factors.a, factors.b, tol);
    if (product.split()) {
      product.residual = tensor_distance(reconstruct(product), t);
      if (product.residual <= tol * scale) return product;
      product.status = SplitStatus::NotRankOne;
      product.route = SplitRoute::None;
      product.J.reset();
      product.gamma.reset();
    }
  } else {
    product.status = SplitStatus::NotRankOne;
    product.residual = factors.residual;
  }

  if (check_sym_a(t, tol * scale).pass) {
    auto symmetric = split_symmetric(t, tol);
    if (symmetric.split()) return symmetric;
  }
  return product;
}

Tensor4 reconstruct(const SplitResult& r) {
  if (!r.split() || !r.J || !r.gamma) throw InvalidArgument("only SPLIT results reconstruct");
  const Tensor4 p = product_tensor(*r.J, r.J->scaled(*r.gamma));
  return r.route == SplitRoute::Symmetric ? symmetrize_34(p) : p;
}

}  // namespace ciph
