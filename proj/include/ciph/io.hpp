#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "ciph/brackets.hpp"
#include "ciph/conditions.hpp"
#include "ciph/dynamics.hpp"
#include "ciph/splitter.hpp"
#include "ciph/tensor4.hpp"

// JSON and CSV formats. All indices in files are one-based.
namespace ciph::io {

using json = nlohmann::json;

/// {"n": int, "entries": [{"i","j","k","l","v"}, ...]}; zero entries omitted
/// on output, duplicates rejected on input.
Tensor4 tensor_from_json(const json& j);
json tensor_to_json(const Tensor4& t);

/// {"n": int, "rows": [[...], ...]}. A bare array of rows is accepted on input.
BracketMatrix matrix_from_json(const json& j);
json matrix_to_json(const BracketMatrix& m);

/// Field spec: {"poly": [[[e1..en], coeff], ...]} with coeff a number or a
/// "p/q" string, or {"builtin": name, "params": {...}}.
ScalarField field_from_json(const json& j, int n);

/// Model file; see README for the schema.
IphsModel model_from_json(const json& j);

std::vector<Vector> directions_from_json(const json& j, int n);

json report_to_json(const ConditionReport& r);
json split_to_json(const SplitResult& r);
json balance_to_json(const BalanceReport& b);

/// Header t,x1..xn,H,S,sigma_int,energy_defect; 17 significant digits.
void write_trajectory_csv(std::ostream& out, const Trajectory& tr,
                          const std::vector<double>& energy_defects);

/// "%.17g".
std::string format_double(double v);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace ciph::io
