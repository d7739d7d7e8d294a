#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ciph/brackets.hpp"
#include "ciph/field.hpp"
#include "ciph/linalg.hpp"

namespace ciph {

/// Piecewise-constant input u(t): value k holds on [times[k], times[k+1]).
/// Before the first switch time the input is zero.
class InputSchedule {
 public:
  InputSchedule() = default;
  InputSchedule(std::vector<double> times, std::vector<Vector> values);

  int width() const noexcept { return width_; }
  bool empty() const noexcept { return times_.empty(); }
  Vector at(double t) const;
  const std::vector<double>& switch_times() const noexcept { return times_; }

 private:
  std::vector<double> times_;
  std::vector<Vector> values_;
  int width_ = 0;
};

/// Irreversible port-Hamiltonian system
///   dx/dt = gamma(x) {S,H}_J J dH + W(x, dH) + g(x, dH) u(t).
struct IphsModel {
  using VectorField = std::function<Vector(const Vector& x, const Vector& dH)>;
  using MatrixField = std::function<Matrix(const Vector& x, const Vector& dH)>;

  int n = 0;
  ScalarField H;
  ScalarField S;
  BracketMatrix J;
  ScalarField gamma;
  VectorField W;  // optional
  MatrixField g;  // optional, n x m
  InputSchedule u;
  std::string name;

  /// Validates dimensions and skewness of J (tolerance 1e-12).
  IphsModel(ScalarField H, ScalarField S, BracketMatrix J, ScalarField gamma,
            std::string name = "custom");

  bool has_inputs() const noexcept { return static_cast<bool>(W) || (g && !u.empty()); }

  /// H = (x1^2 + x2^2)/2, S = x1 + x2, gamma = 1, J standard skew.
  static IphsModel quadratic_linear();

  /// Two compartments with entropies x = (S1, S2), H = exp(S1) + exp(S2),
  /// S = S1 + S2, temperatures T_i = exp(S_i), gamma = conductance / (T1 T2).
  static IphsModel heat_exchanger(double conductance = 1.0);
};

/// gamma(x) {S,H}_J (J dH). Throws NonpositiveGamma.
Vector drift_rhs(const IphsModel& m, const Vector& x);

/// W(x, dH) + g(x, dH) u(t); zero when the model has no inputs.
Vector input_rhs(const IphsModel& m, const Vector& x, double t);

/// drift_rhs + input_rhs. Throws NonpositiveGamma, DimensionMismatch.
Vector full_rhs(const IphsModel& m, const Vector& x, double t);

/// gamma {S,H}_J {f,H}_J at x: the rate of f along the drift.
double observable_rate(const IphsModel& m, const ScalarField& f, const Vector& x);

/// Internal entropy production gamma {S,H}_J^2.
double sigma_int(const IphsModel& m, const Vector& x);

struct IntegrationFault {
  std::string kind;  // "NonpositiveGamma" or "NonFiniteState"
  double last_valid_time = 0.0;
  std::string message;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector> states;
  std::vector<double> H_values;
  std::vector<double> S_values;
  std::vector<double> sigma_int;
  /// Set when integration stopped early; samples up to the fault are kept.
  std::optional<IntegrationFault> fault;

  std::size_t size() const noexcept { return times.size(); }
};

/// Fixed-step classical RK4 on full_rhs from t = 0 to t_end, sampling every
/// step. The last step is shortened to land exactly on t_end. The input u is
/// held at its mid-step value within each step.
Trajectory integrate(const IphsModel& m, const Vector& x0, double t_end, double dt);

struct BalanceReport {
  /// max |dH/dt - dH^T (W + g u)| over interior samples. Rates come from
  /// five-point finite differences (fourth order in dt, centered away from
  /// the ends).
  double energy_defect = 0.0;
  /// max |dS/dt - (sigma_int + dH^T (W + g u))|, the balance as usually written.
  double entropy_defect = 0.0;
  /// Same with dS^T (W + g u) in place of dH^T (W + g u).
  double entropy_defect_ds = 0.0;
  double sigma_min = 0.0;
  /// max |H(x(t)) - H(x(0))|.
  double energy_drift = 0.0;
  /// 1 + max over interior samples of |sigma_int| + |dH^T(W+gu)| + |dS^T(W+gu)|.
  double scale = 1.0;
  /// Per-sample energy balance defect; zero at both ends and at samples whose
  /// stencil straddles an input switch.
  std::vector<double> energy_defects;

  /// Energy balance and at least one entropy balance form close within
  /// tol * scale, and sigma_int >= -sigma_slack.
  bool closes(double tol = 1e-6, double sigma_slack = 1e-12) const;
};

/// Throws TrajectoryTooShort for fewer than three samples.
BalanceReport audit_balances(const IphsModel& m, const Trajectory& tr);

}  // namespace ciph
