#include "ciph/verify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ciph/errors.hpp"

namespace ciph::verify {

void OracleConfig::validate() const {
  if (trials < 1) throw InvalidArgument("oracle trials must be at least 1");
  if (!(fd_step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
}

Vector fd_gradient(const ScalarField& f, const Vector& x, double step) {
  if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  Vector g(x.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    Vector up = x;
    Vector down = x;
    up[i] += step;
    down[i] -= step;
    g[i] = (f.value(up) - f.value(down)) / (2 * step);
  }
  return g;
}

OracleVerdicts exhaustive_condition_check(const Tensor4& t, double tol,
                                          const std::vector<Vector>& directions) {
  const int n = t.dim();
  if (n > kOracleMaxDim) {
    throw DimensionTooLarge("oracle supports n <= " + std::to_string(kOracleMaxDim));
  }
  const auto v = t.values();
  auto at = [&](int a, int b, int c, int d) { return v[((a * n + b) * n + c) * n + d]; };

  OracleVerdicts out;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          out.sym_a_residual = std::max(out.sym_a_residual, std::abs(at(a, b, c, d) - at(a, b, d, c)));
          out.cyclic_b_residual = std::max(
              out.cyclic_b_residual, std::abs(at(a, b, c, d) + at(c, b, d, a) + at(d, b, a, c)));
          out.quasi_poisson_residual =
              std::max(out.quasi_poisson_residual, std::abs(at(a, b, c, d) + at(d, b, c, a)));
          // Six-term identity, all orderings of pairwise different (a, c, d).
          if (a != c && a != d && c != d) {
            const double six = at(a, b, c, d) + at(c, b, a, d) + at(c, b, d, a) + at(d, b, c, a) +
                               at(a, b, d, c) + at(d, b, a, c);
            out.raw_iii_residual = std::max(out.raw_iii_residual, std::abs(six));
          }
        }
        // Three-term identity with the roles (i, j, l) = (a, b, c).
        const double three = at(a, b, a, c) + at(a, b, c, a) + at(c, b, a, a);
        out.raw_iii_residual = std::max(out.raw_iii_residual, std::abs(three));
      }
    }
  }
  out.sym_a = out.sym_a_residual <= tol;
  out.cyclic_b = out.cyclic_b_residual <= tol;
  out.quasi_poisson = out.quasi_poisson_residual <= tol;
  out.raw_iii = out.raw_iii_residual <= tol;

  for (const auto& y : directions) {
    if (y.size() != n) throw DimensionMismatch("direction has the wrong dimension");
    Matrix m = Matrix::Zero(n, n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) m(a, b) += at(a, b, c, d) * y[c] * y[d];
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
      out.psd_c = false;
      break;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol * scale) {
      out.psd_c = false;
      break;
    }
  }
  return out;
}

OracleVerdicts exhaustive_condition_check(const Tensor4& t, double tol) {
  const int n = t.dim();
  std::vector<Vector> dirs;
  for (int a = 0; a < n; ++a) {
    dirs.push_back(Vector::Unit(n, a));
    for (int b = a + 1; b < n; ++b) {
      dirs.push_back(Vector::Unit(n, a) + Vector::Unit(n, b));
      dirs.push_back(Vector::Unit(n, a) - Vector::Unit(n, b));
    }
  }
  return exhaustive_condition_check(t, tol, dirs);
}

Matrix random_skew(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix j = Matrix::Zero(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      j(a, b) = u(rng);
      j(b, a) = -j(a, b);
    }
  const double m = j.cwiseAbs().maxCoeff();
  return m > 0 ? Matrix(j / m) : j;
}

Matrix random_non_skew(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix a(n, n);
  do {
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) a(r, c) = u(rng);
  } while ((a + a.transpose()).cwiseAbs().maxCoeff() < 0.1);
  return a;
}

ScalarField random_polynomial(std::mt19937_64& rng, int n, int max_degree) {
  std::uniform_int_distribution<int> terms_dist(1, 6);
  std::uniform_int_distribution<int> exp_dist(0, max_degree);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 4);
  std::vector<ScalarField::Monomial> ms;
  std::vector<std::vector<int>> used;
  const int terms = terms_dist(rng);
  for (int c = 0; c < terms; ++c) {
    std::vector<int> e(n, 0);
    int budget = exp_dist(rng);
    for (int step = 0; step < budget; ++step) {
      e[std::uniform_int_distribution<int>(0, n - 1)(rng)] += 1;
    }
    if (std::find(used.begin(), used.end(), e) != used.end()) continue;
    int numerator = num(rng);
    if (numerator == 0) numerator = 1;
    used.push_back(e);
    ms.push_back({e, static_cast<double>(numerator) / den(rng)});
  }
  return ScalarField::polynomial(n, std::move(ms));
}

Tensor4 random_tensor(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(n) * n * n * n);
  for (double& x : v) x = u(rng);
  return Tensor4(n, std::move(v));
}

Vector random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

std::vector<Tensor4> random_cons_irrev(std::uint64_t seed, int n, int count,
                                       const ConsIrrevOptions& options) {
  if (n < 2) throw InvalidArgument("random_cons_irrev needs n >= 2");
  std::vector<Tensor4> out;
  for (int c = 0; c < count; ++c) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(c));
    const Matrix j = options.J ? *options.J : random_skew(rng, n);
    if (j.rows() != n || j.cols() != n) throw DimensionMismatch("forced J has the wrong size");
    const double gamma =
        options.gamma ? *options.gamma : std::uniform_real_distribution<double>(0.0, 10.0)(rng);
    std::vector<double> v(static_cast<std::size_t>(n) * n * n * n);
    std::size_t idx = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c2 = 0; c2 < n; ++c2)
          for (int d = 0; d < n; ++d)
            v[idx++] = gamma / 2 * (j(a, c2) * j(b, d) + j(a, d) * j(b, c2));
    out.emplace_back(n, std::move(v));
  }
  return out;
}

}  // namespace ciph::verify
