#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ciph/brackets.hpp"
#include "ciph/conditions.hpp"
#include "ciph/dynamics.hpp"
#include "ciph/errors.hpp"
#include "ciph/io.hpp"
#include "ciph/splitter.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

ciph::Tensor4 to_tensor(const Array& a) {
  if (a.ndim() != 4) throw ciph::DimensionMismatch("tensor must have four axes");
  const auto n = a.shape(0);
  for (int axis = 1; axis < 4; ++axis) {
    if (a.shape(axis) != n) throw ciph::DimensionMismatch("tensor axes must have equal length");
  }
  return ciph::Tensor4(static_cast<int>(n), std::vector<double>(a.data(), a.data() + a.size()));
}

Array from_tensor(const ciph::Tensor4& t) {
  const py::ssize_t n = t.dim();
  Array out({n, n, n, n});
  std::copy(t.values().begin(), t.values().end(), out.mutable_data());
  return out;
}

py::dict report_dict(const ciph::ConditionReport& r) {
  py::dict d("condition"_a = std::string(ciph::to_string(r.condition)), "pass"_a = r.pass,
             "tolerance"_a = r.tolerance, "residual"_a = r.residual, "detail"_a = r.detail);
  if (r.index_witness) {
    const auto& w = *r.index_witness;
    d["witness"] = py::make_tuple(w[0] + 1, w[1] + 1, w[2] + 1, w[3] + 1);
  } else if (r.direction_witness) {
    d["witness"] = *r.direction_witness;
  } else {
    d["witness"] = py::none();
  }
  d["witness_residual"] = r.witness_residual;
  return d;
}

std::vector<ciph::Vector> directions_or_standard(int n, const std::optional<std::vector<ciph::Vector>>& dirs,
                                                 std::uint64_t seed) {
  return dirs ? *dirs : ciph::standard_directions(n, seed);
}

py::dict simulate(const ciph::IphsModel& m, const ciph::Vector& x0, double t_end, double dt) {
  const auto tr = ciph::integrate(m, x0, t_end, dt);
  ciph::Matrix states(static_cast<Eigen::Index>(tr.size()), m.n);
  for (std::size_t k = 0; k < tr.size(); ++k) states.row(static_cast<Eigen::Index>(k)) = tr.states[k].transpose();
  py::dict d("times"_a = tr.times, "states"_a = states, "H"_a = tr.H_values, "S"_a = tr.S_values,
             "sigma_int"_a = tr.sigma_int);
  d["fault"] = py::none();
  if (tr.fault) {
    d["fault"] = py::dict("kind"_a = tr.fault->kind, "last_valid_time"_a = tr.fault->last_valid_time,
                          "message"_a = tr.fault->message);
  }
  d["balance"] = py::none();
  if (tr.size() >= 3) {
    const auto b = ciph::audit_balances(m, tr);
    d["balance"] = py::dict("energy_defect"_a = b.energy_defect, "entropy_defect"_a = b.entropy_defect,
                            "entropy_defect_dS"_a = b.entropy_defect_ds, "sigma_min"_a = b.sigma_min,
                            "energy_drift"_a = b.energy_drift, "scale"_a = b.scale,
                            "closes"_a = b.closes());
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Conservative-irreversible tensors, bracket splitting and IPHS integration";

  py::register_exception<ciph::Error>(m, "CiphError", PyExc_ValueError);

  m.attr("DEFAULT_TOLERANCE") = ciph::kDefaultTolerance;
  m.attr("DEFAULT_DIRECTION_SEED") = ciph::kDefaultDirectionSeed;

  m.def("standard_directions", &ciph::standard_directions, "n"_a,
        "seed"_a = ciph::kDefaultDirectionSeed);

  m.def(
      "check",
      [](const Array& t, double tol, const std::optional<std::vector<ciph::Vector>>& directions,
         std::uint64_t seed) {
        const auto tensor = to_tensor(t);
        const auto summary =
            ciph::check_all(tensor, directions_or_standard(tensor.dim(), directions, seed), tol);
        py::list reports;
        for (const auto& r : summary.reports) reports.append(report_dict(r));
        return py::dict("reports"_a = reports,
                        "conservative_irreversible"_a = summary.conservative_irreversible());
      },
      "t"_a, "tol"_a = ciph::kDefaultTolerance, "directions"_a = py::none(),
      "seed"_a = ciph::kDefaultDirectionSeed);

  m.def(
      "contract_last_two",
      [](const Array& t, const ciph::Vector& y) { return ciph::contract_last_two(to_tensor(t), y); },
      "t"_a, "y"_a);

  m.def(
      "symmetrize_34", [](const Array& t) { return from_tensor(ciph::symmetrize_34(to_tensor(t))); },
      "t"_a);

  m.def(
      "product_tensor",
      [](const ciph::Matrix& a, const ciph::Matrix& b) {
        return from_tensor(ciph::product_tensor(ciph::BracketMatrix(a), ciph::BracketMatrix(b)));
      },
      "A"_a, "B"_a);

  m.def(
      "split",
      [](const Array& t, double tol) {
        const auto r = ciph::split_tensor(to_tensor(t), tol);
        py::dict d("status"_a = std::string(ciph::to_string(r.status)),
                   "route"_a = std::string(ciph::to_string(r.route)), "residual"_a = r.residual);
        d["gamma"] = r.gamma ? py::cast(*r.gamma) : py::none();
        d["J"] = r.J ? py::cast(r.J->matrix()) : py::none();
        return d;
      },
      "t"_a, "tol"_a = ciph::kDefaultTolerance);

  m.def(
      "simulate_builtin",
      [](const std::string& name, const ciph::Vector& x0, double t_end, double dt, double conductance) {
        if (name == "quadratic-linear") return simulate(ciph::IphsModel::quadratic_linear(), x0, t_end, dt);
        if (name == "heat-exchanger") {
          return simulate(ciph::IphsModel::heat_exchanger(conductance), x0, t_end, dt);
        }
        throw ciph::InvalidArgument("unknown builtin model \"" + name + "\"");
      },
      "name"_a, "x0"_a, "t_end"_a, "dt"_a = 1e-3, "conductance"_a = 1.0);

  m.def(
      "simulate_json",
      [](const std::string& model_json, const ciph::Vector& x0, double t_end, double dt) {
        ciph::io::json j;
        try {
          j = ciph::io::json::parse(model_json);
        } catch (const ciph::io::json::exception& e) {
          throw ciph::FormatError(e.what());
        }
        return simulate(ciph::io::model_from_json(j), x0, t_end, dt);
      },
      "model_json"_a, "x0"_a, "t_end"_a, "dt"_a = 1e-3);
}
