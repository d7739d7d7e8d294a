#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace ciph {

/// Zero-based index tuple (i, j, k, l) into a Tensor4.
using Index4 = std::array<int, 4>;

/// Dense covariant 4-tensor over R^n with entries t[i,j,k,l].
///
/// Storage is row-major with i slowest. Indices are zero-based in the C++
/// API; file formats and reports shift them to one-based. Every entry is
/// finite.
class Tensor4 {
 public:
  static constexpr int kMaxDim = 32;

  /// Zero tensor. Throws InvalidArgument unless 1 <= n <= kMaxDim.
  explicit Tensor4(int n);

  /// Takes ownership of n^4 row-major values.
  Tensor4(int n, std::vector<double> values);

  int dim() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }

  double operator()(int i, int j, int k, int l) const noexcept {
    return values_[offset(i, j, k, l)];
  }
  double operator()(const Index4& idx) const noexcept {
    return (*this)(idx[0], idx[1], idx[2], idx[3]);
  }

  /// Bounds- and finiteness-checked write.
  void set(int i, int j, int k, int l, double v);

  std::span<const double> values() const noexcept { return values_; }

  double max_abs() const noexcept;

  /// Entrywise scalar multiple.
  Tensor4 scaled(double factor) const;

  bool operator==(const Tensor4&) const = default;

 private:
  std::size_t offset(int i, int j, int k, int l) const noexcept {
    const auto n = static_cast<std::size_t>(n_);
    return ((static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)) * n +
            static_cast<std::size_t>(k)) *
               n +
           static_cast<std::size_t>(l);
  }

  int n_;
  std::vector<double> values_;
};

/// result[i,j,k,l] = (t[i,j,k,l] + t[i,j,l,k]) / 2.
Tensor4 symmetrize_34(const Tensor4& t);

/// Entrywise lambda * a + b. Throws NegativeCoefficient for lambda < 0 and
/// DimensionMismatch for tensors of different dimension.
Tensor4 linear_combine(double lambda, const Tensor4& a, const Tensor4& b);

}  // namespace ciph
