#include "ciph/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "ciph/errors.hpp"

namespace ciph::io {

namespace {

int require_dim(const json& j, const char* what) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer()) {
    throw FormatError(std::string(what) + ": missing integer field \"n\"");
  }
  const int n = j["n"].get<int>();
  if (n < 1 || n > Tensor4::kMaxDim) {
    throw FormatError(std::string(what) + ": n = " + std::to_string(n) + " outside [1, 32]");
  }
  return n;
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw FormatError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw FormatError(where + ": value is not finite");
  return v;
}

double parse_coefficient(const json& j, const std::string& where) {
  if (j.is_number()) return require_number(j, where);
  if (!j.is_string()) throw FormatError(where + ": coefficient must be a number or \"p/q\"");
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  auto parse = [&](const std::string& part) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(part, &used);
    } catch (const std::exception&) {
      throw FormatError(where + ": cannot parse coefficient \"" + s + "\"");
    }
    if (used != part.size()) throw FormatError(where + ": cannot parse coefficient \"" + s + "\"");
    return v;
  };
  if (slash == std::string::npos) return parse(s);
  const double den = parse(s.substr(slash + 1));
  if (den == 0.0) throw FormatError(where + ": zero denominator in \"" + s + "\"");
  return parse(s.substr(0, slash)) / den;
}

double param_or(const json& params, const char* key, double fallback, const std::string& where) {
  if (params.is_null() || !params.contains(key)) return fallback;
  return require_number(params[key], where + ".params." + key);
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Vector vector_from_json(const json& j, int n, const std::string& where) {
  if (!j.is_array() || static_cast<int>(j.size()) != n) {
    throw FormatError(where + ": expected an array of " + std::to_string(n) + " numbers");
  }
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = require_number(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

}  // namespace

Tensor4 tensor_from_json(const json& j) {
  const int n = require_dim(j, "tensor");
  Tensor4 t(n);
  if (!j.contains("entries")) return t;
  const json& entries = j["entries"];
  if (!entries.is_array()) throw FormatError("tensor: \"entries\" must be an array");

  std::map<Index4, std::size_t> seen;
  for (std::size_t e = 0; e < entries.size(); ++e) {
    const std::string where = "entries[" + std::to_string(e) + "]";
    const json& entry = entries[e];
    if (!entry.is_object()) throw FormatError(where + ": expected an object");
    Index4 idx{};
    const char* keys[] = {"i", "j", "k", "l"};
    for (int slot = 0; slot < 4; ++slot) {
      if (!entry.contains(keys[slot]) || !entry[keys[slot]].is_number_integer()) {
        throw FormatError(where + ": missing integer index \"" + keys[slot] + "\"");
      }
      const int value = entry[keys[slot]].get<int>();
      if (value < 1 || value > n) {
        throw FormatError(where + ": index " + keys[slot] + " = " + std::to_string(value) +
                          " outside [1, " + std::to_string(n) + "]");
      }
      idx[slot] = value - 1;
    }
    if (!entry.contains("v")) throw FormatError(where + ": missing value \"v\"");
    const double v = require_number(entry["v"], where + ".v");
    const auto [it, inserted] = seen.emplace(idx, e);
    if (!inserted) {
      throw FormatError(where + ": duplicate index (" + std::to_string(idx[0] + 1) + "," +
                        std::to_string(idx[1] + 1) + "," + std::to_string(idx[2] + 1) + "," +
                        std::to_string(idx[3] + 1) + ") already given by entries[" +
                        std::to_string(it->second) + "]");
    }
    t.set(idx[0], idx[1], idx[2], idx[3], v);
  }
  return t;
}

json tensor_to_json(const Tensor4& t) {
  const int n = t.dim();
  json entries = json::array();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = t(i, j, k, l);
          if (v == 0.0) continue;
          entries.push_back({{"i", i + 1}, {"j", j + 1}, {"k", k + 1}, {"l", l + 1}, {"v", v}});
        }
  return {{"n", n}, {"entries", std::move(entries)}};
}

BracketMatrix matrix_from_json(const json& j) {
  const json* rows = &j;
  int n = 0;
  if (j.is_object()) {
    n = require_dim(j, "matrix");
    if (!j.contains("rows")) throw FormatError("matrix: missing \"rows\"");
    rows = &j["rows"];
  }
  if (!rows->is_array() || rows->empty()) throw FormatError("matrix: rows must be a non-empty array");
  if (n == 0) n = static_cast<int>(rows->size());
  if (static_cast<int>(rows->size()) != n) {
    throw FormatError("matrix: expected " + std::to_string(n) + " rows, got " +
                      std::to_string(rows->size()));
  }
  Matrix a(n, n);
  for (int r = 0; r < n; ++r) {
    const std::string where = "rows[" + std::to_string(r) + "]";
    a.row(r) = vector_from_json((*rows)[r], n, where).transpose();
  }
  return BracketMatrix(std::move(a));
}

json matrix_to_json(const BracketMatrix& m) {
  json rows = json::array();
  for (int r = 0; r < m.dim(); ++r) rows.push_back(vector_to_json(m.matrix().row(r).transpose()));
  return {{"n", m.dim()}, {"rows", std::move(rows)}};
}

ScalarField field_from_json(const json& j, int n) {
  if (!j.is_object()) throw FormatError("field spec must be an object");
  if (j.contains("poly")) {
    const json& terms = j["poly"];
    if (!terms.is_array()) throw FormatError("poly: expected an array of [exponents, coeff]");
    std::vector<ScalarField::Monomial> ms;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const std::string where = "poly[" + std::to_string(t) + "]";
      const json& term = terms[t];
      if (!term.is_array() || term.size() != 2 || !term[0].is_array()) {
        throw FormatError(where + ": expected [[exponents...], coeff]");
      }
      ScalarField::Monomial m;
      for (const auto& e : term[0]) {
        if (!e.is_number_integer()) throw FormatError(where + ": exponents must be integers");
        m.exponents.push_back(e.get<int>());
      }
      m.coefficient = parse_coefficient(term[1], where);
      ms.push_back(std::move(m));
    }
    try {
      return ScalarField::polynomial(n, std::move(ms));
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("poly: ") + e.what());
    }
  }
  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw FormatError("field builtin name must be a string");
    const std::string name = j["builtin"].get<std::string>();
    const json params = j.value("params", json());
    if (name == "exp_sum") return ScalarField::exp_sum(n, param_or(params, "scale", 1.0, name));
    if (name == "exp_neg_sum") {
      return ScalarField::exp_neg_sum(n, param_or(params, "lambda", 1.0, name));
    }
    if (name == "constant") return ScalarField::constant(n, param_or(params, "value", 0.0, name));
    throw FormatError("unknown builtin field \"" + name + "\"");
  }
  throw FormatError("field spec needs \"poly\" or \"builtin\"");
}

IphsModel model_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("model: expected an object");
  auto model = [&]() -> IphsModel {
    if (j.contains("builtin")) {
      if (!j["builtin"].is_string()) throw FormatError("model: builtin must be a string");
      const std::string name = j["builtin"].get<std::string>();
      const json params = j.value("params", json());
      if (name == "quadratic-linear") return IphsModel::quadratic_linear();
      if (name == "heat-exchanger") {
        return IphsModel::heat_exchanger(param_or(params, "conductance", 1.0, name));
      }
      throw FormatError("unknown builtin model \"" + name + "\"");
    }
    const int n = require_dim(j, "model");
    for (const char* key : {"H", "S", "J", "gamma"}) {
      if (!j.contains(key)) throw FormatError(std::string("model: missing \"") + key + "\"");
    }
    BracketMatrix jm = matrix_from_json(j["J"]);
    if (jm.dim() != n) throw FormatError("model: J dimension differs from n");
    try {
      return IphsModel(field_from_json(j["H"], n), field_from_json(j["S"], n), std::move(jm),
                       field_from_json(j["gamma"], n));
    } catch (const InvalidArgument& e) {
      throw FormatError(std::string("model: ") + e.what());
    }
  }();

  const int n = model.n;
  if (j.contains("n") && j["n"] != n) throw FormatError("model: n disagrees with builtin");

  if (j.contains("W")) {
    const json& w = j["W"];
    if (!w.is_array() || static_cast<int>(w.size()) != n) {
      throw FormatError("model: W must list " + std::to_string(n) + " field specs");
    }
    std::vector<ScalarField> comps;
    for (const auto& c : w) comps.push_back(field_from_json(c, n));
    model.W = [comps](const Vector& x, const Vector&) {
      Vector out(static_cast<Eigen::Index>(comps.size()));
      for (std::size_t i = 0; i < comps.size(); ++i) out[static_cast<Eigen::Index>(i)] = comps[i].value(x);
      return out;
    };
  }

  if (j.contains("g")) {
    const json& g = j["g"];
    if (!g.is_array() || static_cast<int>(g.size()) != n || !g[0].is_array() || g[0].empty()) {
      throw FormatError("model: g must be " + std::to_string(n) + " rows of field specs");
    }
    const std::size_t m = g[0].size();
    std::vector<std::vector<ScalarField>> entries;
    for (std::size_t r = 0; r < g.size(); ++r) {
      if (!g[r].is_array() || g[r].size() != m) {
        throw FormatError("model: g row " + std::to_string(r) + " has the wrong length");
      }
      std::vector<ScalarField> row;
      for (const auto& c : g[r]) row.push_back(field_from_json(c, n));
      entries.push_back(std::move(row));
    }
    model.g = [entries](const Vector& x, const Vector&) {
      Matrix out(static_cast<Eigen::Index>(entries.size()), static_cast<Eigen::Index>(entries[0].size()));
      for (std::size_t r = 0; r < entries.size(); ++r)
        for (std::size_t c = 0; c < entries[r].size(); ++c)
          out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entries[r][c].value(x);
      return out;
    };
  }

  if (j.contains("u")) {
    const json& u = j["u"];
    if (!u.is_array()) throw FormatError("model: u must be an array of {t, value}");
    std::vector<double> times;
    std::vector<Vector> values;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const std::string where = "u[" + std::to_string(k) + "]";
      if (!u[k].is_object() || !u[k].contains("t") || !u[k].contains("value")) {
        throw FormatError(where + ": expected {\"t\": number, \"value\": [...]}");
      }
      times.push_back(require_number(u[k]["t"], where + ".t"));
      const json& val = u[k]["value"];
      values.push_back(vector_from_json(val, val.is_array() ? static_cast<int>(val.size()) : -1,
                                        where + ".value"));
    }
    try {
      model.u = InputSchedule(std::move(times), std::move(values));
    } catch (const Error& e) {
      throw FormatError(std::string("model: u: ") + e.what());
    }
  }
  return model;
}

std::vector<Vector> directions_from_json(const json& j, int n) {
  const json& list = j.is_object() && j.contains("directions") ? j["directions"] : j;
  if (!list.is_array()) throw FormatError("directions: expected an array of vectors");
  std::vector<Vector> out;
  for (std::size_t d = 0; d < list.size(); ++d) {
    out.push_back(vector_from_json(list[d], n, "directions[" + std::to_string(d) + "]"));
  }
  return out;
}

json report_to_json(const ConditionReport& r) {
  json out = {{"condition", std::string(to_string(r.condition))},
              {"verdict", r.pass ? "pass" : "fail"},
              {"tolerance", r.tolerance},
              {"residual", r.residual}};
  json witness = nullptr;
  if (r.index_witness) {
    const auto& w = *r.index_witness;
    witness = {{"index", {w[0] + 1, w[1] + 1, w[2] + 1, w[3] + 1}}, {"residual", r.witness_residual}};
  } else if (r.direction_witness) {
    witness = {{"direction", vector_to_json(*r.direction_witness)}, {"residual", r.witness_residual}};
  }
  out["witness"] = std::move(witness);
  if (!r.detail.empty()) out["detail"] = r.detail;
  if (r.condition == Condition::PsdC && r.pass) out["note"] = "no violation found";
  return out;
}

json split_to_json(const SplitResult& r) {
  return {{"status", std::string(to_string(r.status))},
          {"route", std::string(to_string(r.route))},
          {"gamma", r.gamma ? json(*r.gamma) : json(nullptr)},
          {"J", r.J ? matrix_to_json(*r.J) : json(nullptr)},
          {"residual", r.residual}};
}

json balance_to_json(const BalanceReport& b) {
  return {{"energy_defect", b.energy_defect},
          {"entropy_defect", b.entropy_defect},
          {"entropy_defect_dS", b.entropy_defect_ds},
          {"sigma_min", b.sigma_min},
          {"energy_drift", b.energy_drift},
          {"scale", b.scale}};
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr,
                          const std::vector<double>& energy_defects) {
  const Eigen::Index n = tr.states.empty() ? 0 : tr.states.front().size();
  out << "t";
  for (Eigen::Index i = 0; i < n; ++i) out << ",x" << (i + 1);
  out << ",H,S,sigma_int,energy_defect\n";
  for (std::size_t k = 0; k < tr.size(); ++k) {
    out << format_double(tr.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) out << ',' << format_double(tr.states[k][i]);
    out << ',' << format_double(tr.H_values[k]) << ',' << format_double(tr.S_values[k]) << ','
        << format_double(tr.sigma_int[k]) << ','
        << format_double(k < energy_defects.size() ? energy_defects[k] : 0.0) << '\n';
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(2) << '\n';
  if (!out) throw FormatError("write failed for " + path.string());
}

}  // namespace ciph::io
