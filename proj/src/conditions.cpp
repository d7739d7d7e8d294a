#include "ciph/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ciph/errors.hpp"
#include "ciph/jacobi.hpp"

namespace ciph {

std::string_view to_string(Condition c) noexcept {
  switch (c) {
    case Condition::SymA:
      return "SYM_A";
    case Condition::CyclicB:
      return "CYCLIC_B";
    case Condition::PsdC:
      return "PSD_C";
    case Condition::RawIII:
      return "RAW_III";
    case Condition::QuasiPoisson:
      return "QUASI_POISSON";
  }
  return "UNKNOWN";
}

namespace {

void check_tol(double tol) {
  if (!(tol >= 0.0)) throw InvalidArgument("tolerance must be nonnegative");
}

// Tracks the largest residual and a witness: either the first arg-max or
// the first tuple whose residual exceeds the tolerance.
struct Worst {
  enum class Witness { ArgMax, FirstViolation };

  Worst(double tol_, Witness rule_) : tol(tol_), rule(rule_) {}

  double tol;
  Witness rule;
  double residual = 0.0;
  std::optional<Index4> where;
  double where_residual = 0.0;

  void offer(double r, const Index4& idx) {
    if (rule == Witness::ArgMax ? (!where || r > where_residual)
                                : (!where && r > tol)) {
      where = idx;
      where_residual = r;
    }
    residual = std::max(residual, r);
  }
};

ConditionReport index_report(Condition c, const Worst& worst, std::string detail = {}) {
  ConditionReport r;
  r.condition = c;
  r.tolerance = worst.tol;
  r.residual = worst.residual;
  r.pass = worst.residual <= worst.tol;
  if (!r.pass) {
    r.index_witness = worst.where;
    r.witness_residual = worst.where_residual;
    r.detail = std::move(detail);
  }
  return r;
}

}  // namespace

std::vector<Vector> standard_directions(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("direction dimension must be positive");
  std::vector<Vector> dirs;
  for (int i = 0; i < n; ++i) dirs.push_back(Vector::Unit(n, i));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      dirs.push_back(Vector::Unit(n, i) + Vector::Unit(n, j));
      dirs.push_back(Vector::Unit(n, i) - Vector::Unit(n, j));
    }
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int c = 0; c < kRandomDirections; ++c) {
    Vector y(n);
    do {
      for (int i = 0; i < n; ++i) y[i] = normal(rng);
    } while (y.norm() == 0.0);
    dirs.push_back(y / y.norm());
  }
  return dirs;
}

double scaled_tolerance(const Tensor4& t, double tol) {
  return tol * std::max(1.0, t.max_abs());
}

ConditionReport check_sym_a(const Tensor4& t, double tol) {
  check_tol(tol);
  const int n = t.dim();
  Worst worst(tol, Worst::Witness::ArgMax);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < k; ++l) worst.offer(std::abs(t(i, j, k, l) - t(i, j, l, k)), {i, j, k, l});
  return index_report(Condition::SymA, worst, "t[i,j,k,l] != t[i,j,l,k]");
}

ConditionReport check_cyclic_b(const Tensor4& t, double tol) {
  check_tol(tol);
  const int n = t.dim();
  Worst worst(tol, Worst::Witness::FirstViolation);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          worst.offer(std::abs(t(i, j, k, l) + t(k, j, l, i) + t(l, j, i, k)), {i, j, k, l});
  return index_report(Condition::CyclicB, worst,
                      "t[i,j,k,l] + t[k,j,l,i] + t[l,j,i,k] != 0");
}

ConditionReport check_raw_iii(const Tensor4& t, double tol) {
  check_tol(tol);
  const int n = t.dim();
  Worst three(tol, Worst::Witness::FirstViolation);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        three.offer(std::abs(t(i, j, i, l) + t(i, j, l, i) + t(l, j, i, i)), {i, j, i, l});

  // The six-term sum is invariant under permutations of (i, k, l), so
  // increasing triples cover every instance.
  Worst six(tol, Worst::Witness::FirstViolation);
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k)
      for (int l = k + 1; l < n; ++l)
        for (int j = 0; j < n; ++j)
          six.offer(std::abs(t(i, j, k, l) + t(k, j, i, l) + t(k, j, l, i) + t(l, j, k, i) +
                             t(i, j, l, k) + t(l, j, i, k)),
                    {i, j, k, l});

  // The three-term family is reported first when both fail.
  const bool three_fails = three.residual > tol;
  auto r = three_fails || six.residual <= tol
               ? index_report(Condition::RawIII, three,
                              "three-term identity t[i,j,i,l] + t[i,j,l,i] + t[l,j,i,i] != 0")
               : index_report(Condition::RawIII, six,
                              "six-term identity over pairwise different i,k,l");
  r.residual = std::max(three.residual, six.residual);
  r.pass = r.residual <= tol;
  return r;
}

Matrix contract_last_two(const Tensor4& t, const Vector& y) {
  const int n = t.dim();
  if (y.size() != n) throw DimensionMismatch("direction has the wrong dimension");
  Matrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += t(i, j, k, l) * y[k] * y[l];
      m(i, j) = acc;
    }
  return m;
}

ConditionReport check_psd_c(const Tensor4& t, const std::vector<Vector>& directions,
                            double tol) {
  check_tol(tol);
  if (directions.empty()) throw EmptyDirectionSet();
  for (const auto& y : directions) {
    if (y.size() != t.dim()) throw DimensionMismatch("direction has the wrong dimension");
  }

  ConditionReport r;
  r.condition = Condition::PsdC;
  r.tolerance = tol;
  double worst = 0.0;
  for (const auto& y : directions) {
    const Matrix m = contract_last_two(t, y);
    const double scale = std::max(1.0, max_abs(m));
    const double asym = max_abs(m - m.transpose());
    if (asym > tol * scale) {
      r.pass = false;
      r.residual = asym;
      r.witness_residual = asym;
      r.direction_witness = y;
      r.detail = "M(y) is not symmetric";
      return r;
    }
    const double lowest = symmetric_eigenvalues(m)[0];
    if (lowest < -tol * scale) {
      r.pass = false;
      r.residual = -lowest;
      r.witness_residual = -lowest;
      r.direction_witness = y;
      r.detail = "M(y) has negative eigenvalue " + std::to_string(lowest);
      return r;
    }
    worst = std::max({worst, asym, -lowest});
  }
  r.residual = worst;
  return r;
}

ConditionReport check_quasi_poisson(const Tensor4& t, double tol) {
  check_tol(tol);
  const int n = t.dim();
  Worst worst(tol, Worst::Witness::FirstViolation);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) worst.offer(std::abs(t(i, j, k, l) + t(l, j, k, i)), {i, j, k, l});
  return index_report(Condition::QuasiPoisson, worst, "t[i,j,k,l] != -t[l,j,k,i]");
}

double contract(const Tensor4& t, const Vector& a, const Vector& b, const Vector& c,
                const Vector& d) {
  const int n = t.dim();
  if (a.size() != n || b.size() != n || c.size() != n || d.size() != n) {
    throw DimensionMismatch("contraction vectors must match the tensor dimension");
  }
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) sum += t(i, j, k, l) * a[i] * b[j] * c[k] * d[l];
  return sum;
}

double evaluate_e(const Tensor4& t, const ScalarField& f, const ScalarField& s,
                  const ScalarField& h, const ScalarField& q, const Vector& x) {
  const int n = t.dim();
  for (const ScalarField* field : {&f, &s, &h, &q}) {
    if (field->dim() != n) throw DimensionMismatch("field dimension differs from tensor");
  }
  if (x.size() != n) throw DimensionMismatch("point dimension differs from tensor");
  return contract(t, f.gradient(x), s.gradient(x), h.gradient(x), q.gradient(x));
}

double evaluate_E(const Tensor4& t, const ScalarField& f, const ScalarField& s,
                  const ScalarField& h, const Vector& x) {
  return evaluate_e(t, f, s, h, h, x);
}

bool ConditionSummary::conservative_irreversible() const {
  return get(Condition::SymA).pass && get(Condition::CyclicB).pass && get(Condition::PsdC).pass;
}

const ConditionReport& ConditionSummary::get(Condition c) const {
  for (const auto& r : reports)
    if (r.condition == c) return r;
  throw InvalidArgument("condition missing from summary");
}

ConditionSummary check_all(const Tensor4& t, const std::vector<Vector>& directions,
                           double tol) {
  const double abs_tol = scaled_tolerance(t, tol);
  ConditionSummary s;
  s.reports.push_back(check_sym_a(t, abs_tol));
  s.reports.push_back(check_cyclic_b(t, abs_tol));
  s.reports.push_back(check_raw_iii(t, abs_tol));
  s.reports.push_back(check_psd_c(t, directions, tol));
  s.reports.push_back(check_quasi_poisson(t, abs_tol));
  return s;
}

}  // namespace ciph
