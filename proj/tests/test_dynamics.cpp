#include <doctest.h>

#include <random>

#include "ciph/dynamics.hpp"
#include "ciph/errors.hpp"
#include "ciph/verify.hpp"

using namespace ciph;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector x(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double a : v) x[i++] = a;
  return x;
}

IphsModel random_model(std::mt19937_64& rng, int n) {
  auto gamma = ScalarField::custom(
      n, [](const Vector& x) { return 1.0 + x.squaredNorm(); },
      [](const Vector& x) -> Vector { return 2 * x; }, "1+|x|^2");
  return IphsModel(verify::random_polynomial(rng, n, 3), verify::random_polynomial(rng, n, 3),
                   BracketMatrix(verify::random_skew(rng, n)), gamma, "random");
}

IphsModel drift_free(const Vector& w) {
  const int n = static_cast<int>(w.size());
  Matrix q = Matrix::Identity(n, n);
  IphsModel m(ScalarField::quadratic(q), ScalarField::linear(Vector::Ones(n)),
              BracketMatrix::zero(n), ScalarField::constant(n, 1.0), "drift-free");
  m.W = [w](const Vector&, const Vector&) { return w; };
  return m;
}

}  // namespace

TEST_CASE("model validation") {
  const auto q = ScalarField::quadratic(Matrix::Identity(2, 2));
  const auto s = ScalarField::linear(Vector::Ones(2));
  const auto one = ScalarField::constant(2, 1.0);
  CHECK_THROWS_AS(IphsModel(q, s, BracketMatrix(Matrix::Identity(2, 2)), one), InvalidArgument);
  CHECK_THROWS_AS(IphsModel(q, ScalarField::constant(3, 0.0), BracketMatrix::standard_skew(), one),
                  DimensionMismatch);
  CHECK_THROWS_AS(IphsModel::heat_exchanger(0.0), InvalidArgument);
  CHECK_THROWS_AS(InputSchedule({1.0, 1.0}, {vec({1}), vec({2})}), InvalidArgument);

  const InputSchedule u({0.5, 1.0}, {vec({2}), vec({-1})});
  CHECK(u.at(0.2)[0] == 0.0);
  CHECK(u.at(0.5)[0] == 2.0);
  CHECK(u.at(0.99)[0] == 2.0);
  CHECK(u.at(7.0)[0] == -1.0);
}

TEST_CASE("drift examples") {
  const auto m = IphsModel::quadratic_linear();
  CHECK(drift_rhs(m, vec({1, 0})) == vec({0, 1}));
  CHECK(drift_rhs(m, vec({0, 0})) == vec({0, 0}));

  IphsModel same(m.H, m.H, m.J, m.gamma);
  CHECK(drift_rhs(same, vec({0.3, -2})) == vec({0, 0}));

  CHECK(full_rhs(m, vec({1, 0}), 3.0) == drift_rhs(m, vec({1, 0})));
  CHECK(full_rhs(drift_free(vec({1, -2})), vec({5, 5}), 0.0) == vec({1, -2}));

  const auto x1 = ScalarField::coordinate(2, 0);
  CHECK(observable_rate(m, x1, vec({1, 0})) == 0.0);
  CHECK(observable_rate(m, m.H, vec({1, 0.5})) == 0.0);
  CHECK(observable_rate(m, m.S, vec({1, 0})) == 1.0);
  CHECK(sigma_int(m, vec({1, 0})) == 1.0);

  CHECK_THROWS_AS(drift_rhs(m, vec({1, 0, 0})), DimensionMismatch);
}

TEST_CASE("nonpositive gamma") {
  const auto m0 = IphsModel::quadratic_linear();
  IphsModel m(m0.H, m0.S, m0.J, ScalarField::coordinate(2, 0));
  CHECK_THROWS_AS(drift_rhs(m, vec({0, 1})), NonpositiveGamma);
  try {
    observable_rate(m, m.H, vec({-1, 1}));
    FAIL("expected NonpositiveGamma");
  } catch (const NonpositiveGamma& e) {
    CHECK(e.gamma() == -1.0);
  }
}

TEST_CASE("drift identities on random models") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const auto m = random_model(rng, n);
    const auto f = verify::random_polynomial(rng, n, 3);
    const auto x = verify::random_vector(rng, n);
    const Vector drift = drift_rhs(m, x);
    const Vector dH = m.H.gradient(x);
    const Vector dS = m.S.gradient(x);
    const double scale = 1 + m.gamma(x) * dH.squaredNorm() * (1 + dS.norm()) *
                                 (1 + dS.norm() + f.gradient(x).norm());

    CHECK(std::abs(observable_rate(m, f, x) - f.gradient(x).dot(drift)) <= 1e-12 * scale);
    CHECK(std::abs(dH.dot(drift)) <= 1e-12 * scale);
    const double production = dS.dot(drift);
    CHECK(production >= -1e-12 * scale);
    CHECK(std::abs(production - sigma_int(m, x)) <= 1e-12 * scale);
  }
}

TEST_CASE("integrate the quadratic-linear model") {
  const auto m = IphsModel::quadratic_linear();
  const auto tr = integrate(m, vec({1, 0}), 10.0, 1e-3);
  REQUIRE_FALSE(tr.fault);
  CHECK(tr.size() == 10001);
  CHECK(tr.times.back() == 10.0);
  const double h0 = tr.H_values.front();
  double drift = 0.0;
  for (std::size_t k = 0; k < tr.size(); ++k) drift = std::max(drift, std::abs(tr.H_values[k] - h0));
  CHECK(drift <= 1e-8 * h0);
  for (std::size_t k = 1; k < tr.size(); ++k) {
    CHECK(tr.S_values[k] >= tr.S_values[k - 1] - 1e-12);
    CHECK(tr.times[k] > tr.times[k - 1]);
  }

  const auto audit = audit_balances(m, tr);
  CHECK(audit.closes());
  CHECK(audit.sigma_min >= 0.0);
  CHECK(audit.energy_drift == doctest::Approx(drift));

  // Critical point of H stays put.
  const auto rest = integrate(m, vec({0, 0}), 1.0, 0.1);
  for (const auto& x : rest.states) CHECK(x == vec({0, 0}));

  // Last step is shortened to land on t_end.
  const auto ragged = integrate(m, vec({1, 0}), 0.25, 0.1);
  CHECK(ragged.size() == 4);
  CHECK(ragged.times.back() == 0.25);

  CHECK_THROWS_AS(integrate(m, vec({1, 0}), 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(integrate(m, vec({1, 0}), -1.0, 0.1), InvalidArgument);
}

TEST_CASE("RK4 order on the energy drift") {
  const auto m = IphsModel::quadratic_linear();
  auto drift = [&](double dt) { return audit_balances(m, integrate(m, vec({1, 0}), 10.0, dt)).energy_drift; };
  const double ratio = drift(0.025) / drift(0.0125);
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("heat exchanger") {
  const auto m = IphsModel::heat_exchanger(1.0);
  const auto tr = integrate(m, vec({std::log(2.0), std::log(0.5)}), 5.0, 1e-3);
  REQUIRE_FALSE(tr.fault);
  const auto audit = audit_balances(m, tr);
  CHECK(audit.energy_defect <= 1e-6 * audit.scale);
  CHECK(audit.entropy_defect <= 1e-6 * audit.scale);
  CHECK(audit.entropy_defect_ds <= 1e-6 * audit.scale);
  double gap = std::exp(tr.states[0][0]) - std::exp(tr.states[0][1]);
  for (std::size_t k = 1; k < tr.size(); ++k) {
    const double next = std::exp(tr.states[k][0]) - std::exp(tr.states[k][1]);
    CHECK(next >= 0.0);
    CHECK(next <= gap + 1e-12);
    gap = next;
  }
  CHECK(gap < 0.1);

  const auto flat = integrate(m, vec({0.3, 0.3}), 1.0, 1e-2);
  for (const auto& x : flat.states) CHECK(x == vec({0.3, 0.3}));
}

TEST_CASE("inputs and balance audit") {
  auto m = IphsModel::heat_exchanger(1.0);
  m.g = [](const Vector&, const Vector&) {
    Matrix g = Matrix::Zero(2, 1);
    g(0, 0) = 1.0;
    return g;
  };
  m.u = InputSchedule({0.5}, {vec({0.2})});
  CHECK(m.has_inputs());
  const auto tr = integrate(m, vec({0.0, 0.0}), 1.0, 1e-3);
  REQUIRE_FALSE(tr.fault);
  const auto audit = audit_balances(m, tr);
  CHECK(audit.energy_defect <= 1e-6 * audit.scale);
  // dS^T(W + g u) is the balance the integrator satisfies here.
  CHECK(audit.entropy_defect_ds <= 1e-6 * audit.scale);
  CHECK(audit.closes());

  const auto free_model = drift_free(vec({0.5, -1}));
  const auto ftr = integrate(free_model, vec({1, 1}), 2.0, 1e-2);
  const auto faudit = audit_balances(free_model, ftr);
  CHECK(faudit.energy_defect <= 1e-6 * faudit.scale);
  CHECK(ftr.states.back()[0] == doctest::Approx(2.0));

  const auto zero_model = drift_free(vec({0, 0}));
  const auto zaudit = audit_balances(zero_model, integrate(zero_model, vec({1, 2}), 1.0, 0.1));
  CHECK(zaudit.energy_defect == 0.0);
  CHECK(zaudit.entropy_defect == 0.0);
  CHECK(zaudit.sigma_min == 0.0);
}

TEST_CASE("integration faults") {
  const auto base = IphsModel::quadratic_linear();
  IphsModel m(base.H, base.S, BracketMatrix::zero(2), ScalarField::coordinate(2, 0));
  m.W = [](const Vector&, const Vector&) { return vec({-1, 0}); };
  const auto tr = integrate(m, vec({1, 0}), 2.0, 1e-3);
  REQUIRE(tr.fault);
  CHECK(tr.fault->kind == "NonpositiveGamma");
  CHECK(tr.fault->last_valid_time == doctest::Approx(0.999));
  CHECK(tr.times.back() == tr.fault->last_valid_time);

  Trajectory two;
  two.times = {0.0, 1.0};
  two.states = {vec({1, 0}), vec({1, 0})};
  two.H_values = {0.5, 0.5};
  two.S_values = {1.0, 1.0};
  two.sigma_int = {0.0, 0.0};
  CHECK_THROWS_AS(audit_balances(base, two), TrajectoryTooShort);
}
