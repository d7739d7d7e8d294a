#include "ciph/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ciph/errors.hpp"

namespace ciph {

InputSchedule::InputSchedule(std::vector<double> times, std::vector<Vector> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) {
    throw InvalidArgument("input schedule needs one value per switch time");
  }
  if (times_.empty()) return;
  width_ = static_cast<int>(values_.front().size());
  for (std::size_t k = 0; k < times_.size(); ++k) {
    if (!std::isfinite(times_[k]) || (k > 0 && !(times_[k] > times_[k - 1]))) {
      throw InvalidArgument("input switch times must be finite and strictly increasing");
    }
    if (values_[k].size() != width_) throw DimensionMismatch("input values differ in width");
    if (!values_[k].allFinite()) throw NonFiniteValue("input value is not finite");
  }
}

Vector InputSchedule::at(double t) const {
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  if (it == times_.begin()) return Vector::Zero(width_);
  return values_[static_cast<std::size_t>(it - times_.begin()) - 1];
}

IphsModel::IphsModel(ScalarField H_, ScalarField S_, BracketMatrix J_, ScalarField gamma_,
                     std::string name_)
    : n(J_.dim()),
      H(std::move(H_)),
      S(std::move(S_)),
      J(std::move(J_)),
      gamma(std::move(gamma_)),
      name(std::move(name_)) {
  if (H.dim() != n || S.dim() != n || gamma.dim() != n) {
    throw DimensionMismatch("H, S, gamma and J must share the state dimension");
  }
  const auto skew = is_skew(J, 1e-12);
  if (!skew.skew) {
    throw InvalidArgument("structure matrix J is not skew-symmetric (max |J + J^T| = " +
                          std::to_string(skew.residual) + ")");
  }
}

IphsModel IphsModel::quadratic_linear() {
  return IphsModel(ScalarField::quadratic(Matrix::Identity(2, 2)),
                   ScalarField::linear(Vector::Ones(2)), BracketMatrix::standard_skew(),
                   ScalarField::constant(2, 1.0), "quadratic-linear");
}

IphsModel IphsModel::heat_exchanger(double conductance) {
  if (!(conductance > 0.0) || !std::isfinite(conductance)) {
    throw InvalidArgument("heat exchanger conductance must be positive");
  }
  return IphsModel(ScalarField::exp_sum(2), ScalarField::linear(Vector::Ones(2)),
                   BracketMatrix::standard_skew(), ScalarField::exp_neg_sum(2, conductance),
                   "heat-exchanger");
}

namespace {

std::string point_string(const Vector& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i > 0) s += ", ";
    s += std::to_string(x[i]);
  }
  return s + ")";
}

double positive_gamma(const IphsModel& m, const Vector& x) {
  const double g = m.gamma.value(x);
  if (!(g > 0.0)) throw NonpositiveGamma(g, "x = " + point_string(x));
  return g;
}

void check_state(const IphsModel& m, const Vector& x) {
  if (x.size() != m.n) throw DimensionMismatch("state has the wrong dimension");
}

// Weights of the first derivative at t0 from samples at `nodes` (Fornberg).
std::vector<double> derivative_weights(double t0, const std::vector<double>& nodes) {
  const std::size_t count = nodes.size();
  std::vector<std::vector<double>> c(count, std::vector<double>(2, 0.0));
  c[0][0] = 1.0;
  double c1 = 1.0;
  double c4 = nodes[0] - t0;
  for (std::size_t i = 1; i < count; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - t0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (static_cast<double>(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[j][k] = (c4 * c[j][k] - static_cast<double>(k) * c[j][k - 1]) / c3;
      }
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(count);
  for (std::size_t i = 0; i < count; ++i) w[i] = c[i][1];
  return w;
}

}  // namespace

Vector drift_rhs(const IphsModel& m, const Vector& x) {
  check_state(m, x);
  const double g = positive_gamma(m, x);
  const Vector dH = m.H.gradient(x);
  const Vector j_dH = m.J.matrix() * dH;
  const double bracket = m.S.gradient(x).dot(j_dH);
  return g * bracket * j_dH;
}

Vector input_rhs(const IphsModel& m, const Vector& x, double t) {
  check_state(m, x);
  Vector out = Vector::Zero(m.n);
  if (!m.W && !m.g) return out;
  const Vector dH = m.H.gradient(x);
  if (m.W) {
    const Vector w = m.W(x, dH);
    if (w.size() != m.n) throw DimensionMismatch("W(x, dH) has the wrong length");
    out += w;
  }
  if (m.g && !m.u.empty()) {
    const Matrix g = m.g(x, dH);
    const Vector u = m.u.at(t);
    if (g.rows() != m.n || g.cols() != u.size()) {
      throw DimensionMismatch("g(x, dH) is " + std::to_string(g.rows()) + "x" +
                              std::to_string(g.cols()) + " but u has width " +
                              std::to_string(u.size()));
    }
    out += g * u;
  }
  return out;
}

Vector full_rhs(const IphsModel& m, const Vector& x, double t) {
  return drift_rhs(m, x) + input_rhs(m, x, t);
}

double observable_rate(const IphsModel& m, const ScalarField& f, const Vector& x) {
  check_state(m, x);
  const double g = positive_gamma(m, x);
  return g * bracket_eval(m.J, m.S, m.H, x) * bracket_eval(m.J, f, m.H, x);
}

double sigma_int(const IphsModel& m, const Vector& x) {
  check_state(m, x);
  const double g = positive_gamma(m, x);
  const double b = bracket_eval(m.J, m.S, m.H, x);
  return g * b * b;
}

Trajectory integrate(const IphsModel& m, const Vector& x0, double t_end, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be positive");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidArgument("t_end must be positive");
  check_state(m, x0);
  if (!x0.allFinite()) throw NonFiniteValue("initial state is not finite");

  Trajectory tr;
  auto record = [&](double t, const Vector& x) {
    const double sigma = sigma_int(m, x);
    tr.times.push_back(t);
    tr.states.push_back(x);
    tr.H_values.push_back(m.H.value(x));
    tr.S_values.push_back(m.S.value(x));
    tr.sigma_int.push_back(sigma);
  };

  const auto steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  Vector x = x0;
  double t = 0.0;
  try {
    record(t, x);
    for (long long k = 1; k <= steps; ++k) {
      const double t_next = k == steps ? t_end : static_cast<double>(k) * dt;
      const double h = t_next - t;
      // u is held at its mid-step value so that a switch on a grid point
      // never leaks into the neighbouring step.
      const double t_input = t + h / 2;
      const Vector k1 = full_rhs(m, x, t_input);
      const Vector k2 = full_rhs(m, x + (h / 2) * k1, t_input);
      const Vector k3 = full_rhs(m, x + (h / 2) * k2, t_input);
      const Vector k4 = full_rhs(m, x + h * k3, t_input);
      Vector next = x + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
      if (!next.allFinite()) {
        tr.fault = IntegrationFault{"NonFiniteState", t, "state became non-finite after t = " +
                                                              std::to_string(t)};
        return tr;
      }
      x = std::move(next);
      t = t_next;
      record(t, x);
    }
  } catch (const NonpositiveGamma& e) {
    tr.fault = IntegrationFault{"NonpositiveGamma", tr.times.empty() ? 0.0 : tr.times.back(),
                                e.what()};
  }
  return tr;
}

bool BalanceReport::closes(double tol, double sigma_slack) const {
  const double limit = tol * scale;
  return energy_defect <= limit && std::min(entropy_defect, entropy_defect_ds) <= limit &&
         sigma_min >= -sigma_slack;
}

BalanceReport audit_balances(const IphsModel& m, const Trajectory& tr) {
  const std::size_t count = tr.size();
  if (count < 3) throw TrajectoryTooShort("balance audit needs at least 3 samples");

  BalanceReport rep;
  rep.energy_defects.assign(count, 0.0);
  rep.sigma_min = *std::min_element(tr.sigma_int.begin(), tr.sigma_int.end());
  for (std::size_t k = 0; k < count; ++k) {
    rep.energy_drift = std::max(rep.energy_drift, std::abs(tr.H_values[k] - tr.H_values[0]));
  }

  const auto& switches = m.u.switch_times();
  double worst_source = 0.0;
  for (std::size_t k = 1; k + 1 < count; ++k) {
    // Five nearest samples (fewer on very short runs), fourth order in dt.
    const std::size_t width = std::min<std::size_t>(5, count);
    const std::size_t lo = std::min(k >= 2 ? k - 2 : 0, count - width);
    const double t_lo = tr.times[lo];
    const double t_hi = tr.times[lo + width - 1];
    if (m.g && std::any_of(switches.begin(), switches.end(),
                           [&](double s) { return s > t_lo && s < t_hi; })) {
      continue;
    }
    const std::vector<double> nodes(tr.times.begin() + static_cast<std::ptrdiff_t>(lo),
                                    tr.times.begin() + static_cast<std::ptrdiff_t>(lo + width));
    const auto weights = derivative_weights(tr.times[k], nodes);
    auto derivative = [&](const std::vector<double>& f) {
      double d = 0.0;
      for (std::size_t i = 0; i < width; ++i) d += weights[i] * (f[lo + i] - f[k]);
      return d;
    };
    const double dH_dt = derivative(tr.H_values);
    const double dS_dt = derivative(tr.S_values);
    const double t1 = tr.times[k];

    const Vector& x = tr.states[k];
    const Vector source = input_rhs(m, x, t1);
    const double supply_h = m.H.gradient(x).dot(source);
    const double supply_s = m.S.gradient(x).dot(source);
    const double sigma = tr.sigma_int[k];

    rep.energy_defects[k] = std::abs(dH_dt - supply_h);
    rep.energy_defect = std::max(rep.energy_defect, rep.energy_defects[k]);
    rep.entropy_defect = std::max(rep.entropy_defect, std::abs(dS_dt - (sigma + supply_h)));
    rep.entropy_defect_ds = std::max(rep.entropy_defect_ds, std::abs(dS_dt - (sigma + supply_s)));
    worst_source =
        std::max(worst_source, std::abs(sigma) + std::abs(supply_h) + std::abs(supply_s));
  }
  rep.scale = 1.0 + worst_source;
  return rep;
}

}  // namespace ciph
