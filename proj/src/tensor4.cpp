#include "ciph/tensor4.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ciph/errors.hpp"

namespace ciph {

namespace {

void check_dim(int n) {
  if (n < 1 || n > Tensor4::kMaxDim) {
    throw InvalidArgument("tensor dimension " + std::to_string(n) + " outside [1, " +
                          std::to_string(Tensor4::kMaxDim) + "]");
  }
}

std::size_t fourth_power(int n) {
  const auto m = static_cast<std::size_t>(n);
  return m * m * m * m;
}

}  // namespace

Tensor4::Tensor4(int n) : n_(n) {
  check_dim(n);
  values_.assign(fourth_power(n), 0.0);
}

Tensor4::Tensor4(int n, std::vector<double> values) : n_(n), values_(std::move(values)) {
  check_dim(n);
  if (values_.size() != fourth_power(n)) {
    throw DimensionMismatch("expected " + std::to_string(fourth_power(n)) +
                            " tensor values, got " + std::to_string(values_.size()));
  }
  if (!std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); })) {
    throw NonFiniteValue("tensor contains a non-finite entry");
  }
}

void Tensor4::set(int i, int j, int k, int l, double v) {
  for (int idx : {i, j, k, l}) {
    if (idx < 0 || idx >= n_) {
      throw InvalidArgument("tensor index " + std::to_string(idx) + " out of range");
    }
  }
  if (!std::isfinite(v)) throw NonFiniteValue("tensor entries must be finite");
  values_[offset(i, j, k, l)] = v;
}

double Tensor4::max_abs() const noexcept {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Tensor4 Tensor4::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return Tensor4(n_, std::move(out));
}

Tensor4 symmetrize_34(const Tensor4& t) {
  const int n = t.dim();
  Tensor4 out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out.set(i, j, k, l, (t(i, j, k, l) + t(i, j, l, k)) / 2);
  return out;
}

Tensor4 linear_combine(double lambda, const Tensor4& a, const Tensor4& b) {
  if (!(lambda >= 0.0)) throw NegativeCoefficient("coefficient must be nonnegative");
  if (a.dim() != b.dim()) throw DimensionMismatch("tensor dimensions differ");
  std::vector<double> out(a.size());
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t idx = 0; idx < out.size(); ++idx) out[idx] = lambda * av[idx] + bv[idx];
  return Tensor4(a.dim(), std::move(out));
}

}  // namespace ciph
