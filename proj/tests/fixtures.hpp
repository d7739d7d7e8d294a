#pragma once

#include <cmath>
#include <random>

#include "ciph/brackets.hpp"
#include "ciph/field.hpp"
#include "ciph/tensor4.hpp"

namespace fixtures {

// Entries below are one-based.
inline void put(ciph::Tensor4& t, int i, int j, int k, int l, double v) {
  t.set(i - 1, j - 1, k - 1, l - 1, v);
}

/// Symmetric n = 2 tensor: symmetrisation of 2 e_J.
inline ciph::Tensor4 eps2() {
  ciph::Tensor4 t(2);
  put(t, 1, 1, 2, 2, 2);
  put(t, 2, 2, 1, 1, 2);
  for (auto [i, j, k, l] : {std::array{1, 2, 1, 2}, std::array{1, 2, 2, 1},
                            std::array{2, 1, 1, 2}, std::array{2, 1, 2, 1}}) {
    put(t, i, j, k, l, -1);
  }
  return t;
}

/// e_J = J[i,k] J[j,l] for the standard 2x2 skew J.
inline ciph::Tensor4 e_J() {
  ciph::Tensor4 t(2);
  put(t, 1, 1, 2, 2, 1);
  put(t, 2, 2, 1, 1, 1);
  put(t, 1, 2, 2, 1, -1);
  put(t, 2, 1, 1, 2, -1);
  return t;
}

inline ciph::Tensor4 single_entry(int n, int i, int j, int k, int l, double v = 1.0) {
  ciph::Tensor4 t(n);
  put(t, i, j, k, l, v);
  return t;
}

inline double max_diff(const ciph::Tensor4& a, const ciph::Tensor4& b) {
  double d = 0.0;
  for (std::size_t idx = 0; idx < a.size(); ++idx) {
    d = std::max(d, std::abs(a.values()[idx] - b.values()[idx]));
  }
  return d;
}

/// {f, g}_A evaluated by hand: df^T A dg with explicit loops.
inline double bracket_by_hand(const ciph::Matrix& a, const ciph::Vector& df,
                              const ciph::Vector& dg) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) s += df[i] * a(i, j) * dg[j];
  return s;
}

}  // namespace fixtures
