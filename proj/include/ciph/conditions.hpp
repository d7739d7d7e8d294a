#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ciph/field.hpp"
#include "ciph/linalg.hpp"
#include "ciph/tensor4.hpp"

namespace ciph {

enum class Condition { SymA, CyclicB, PsdC, RawIII, QuasiPoisson };

std::string_view to_string(Condition c) noexcept;

/// Verdict of one tensor condition.
///
/// A failing report always carries a witness: an index tuple for the
/// entrywise identities, a direction for the PSD condition. `residual` is the
/// largest violation measured; `witness_residual` is the one at the witness.
struct ConditionReport {
  Condition condition = Condition::SymA;
  bool pass = true;
  double tolerance = 0.0;
  double residual = 0.0;
  std::optional<Index4> index_witness;      // zero-based
  std::optional<Vector> direction_witness;  // PsdC only
  double witness_residual = 0.0;
  std::string detail;
};

/// Default relative tolerance used by the CLI and the convenience overloads.
inline constexpr double kDefaultTolerance = 1e-10;

/// Seed of the pseudorandom part of the default PSD direction set ("CIPH").
inline constexpr std::uint64_t kDefaultDirectionSeed = 0x43495048ULL;

/// Number of pseudorandom unit vectors in the default direction set.
inline constexpr int kRandomDirections = 64;

/// Standard basis vectors, all e_i + e_j and e_i - e_j for i < j, then
/// kRandomDirections unit vectors drawn from a fixed-seed generator.
std::vector<Vector> standard_directions(int n,
                                        std::uint64_t seed = kDefaultDirectionSeed);

/// Absolute tolerance tol * max(1, max|t|).
double scaled_tolerance(const Tensor4& t, double tol = kDefaultTolerance);

/// (a): t[i,j,k,l] == t[i,j,l,k]. The witness is the first arg-max; pairs
/// are visited with l < k, so it names the lower-triangular member.
ConditionReport check_sym_a(const Tensor4& t, double tol);

// The remaining entrywise checks report the first violating tuple in
// row-major order as witness.

/// (b): t[i,j,k,l] + t[k,j,l,i] + t[l,j,i,k] == 0 for all index tuples.
ConditionReport check_cyclic_b(const Tensor4& t, double tol);

/// Raw annihilation identities for tensors without symmetry (a):
///   t[i,j,i,l] + t[i,j,l,i] + t[l,j,i,i] == 0 for all i, j, l, and the
///   six-term identity over pairwise different i, k, l.
/// The witness for a six-term violation is (i, j, k, l).
ConditionReport check_raw_iii(const Tensor4& t, double tol);

/// (c): M(y)[i,j] = sum_{k,l} t[i,j,k,l] y_k y_l is symmetric and PSD for each
/// direction y, up to tol * max(1, max|M(y)|). Reports the first violating
/// direction in list order. A pass means no violation was found among the
/// supplied directions. Throws EmptyDirectionSet and DimensionMismatch.
ConditionReport check_psd_c(const Tensor4& t, const std::vector<Vector>& directions,
                            double tol);

/// t[i,j,k,l] == -t[l,j,k,i]: every biderivation e(., s, h, .) is skew.
ConditionReport check_quasi_poisson(const Tensor4& t, double tol);

/// M(y) of condition (c).
Matrix contract_last_two(const Tensor4& t, const Vector& y);

/// sum t[i,j,k,l] df_i ds_j dh_k dq_l at x.
double evaluate_e(const Tensor4& t, const ScalarField& f, const ScalarField& s,
                  const ScalarField& h, const ScalarField& q, const Vector& x);

/// E(f, s, h) = e(f, s, h, h).
double evaluate_E(const Tensor4& t, const ScalarField& f, const ScalarField& s,
                  const ScalarField& h, const Vector& x);

/// Quadruple contraction with explicit vectors.
double contract(const Tensor4& t, const Vector& a, const Vector& b, const Vector& c,
                const Vector& d);

/// Reports for (a), (b), raw (iii), (c) and quasi-Poisson, in that order.
struct ConditionSummary {
  std::vector<ConditionReport> reports;
  /// (a) and (b) and (c) hold: t represents a conservative-irreversible function.
  bool conservative_irreversible() const;
  const ConditionReport& get(Condition c) const;
};

ConditionSummary check_all(const Tensor4& t, const std::vector<Vector>& directions,
                           double tol);

}  // namespace ciph
