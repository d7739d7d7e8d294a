#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ciph/field.hpp"
#include "ciph/linalg.hpp"
#include "ciph/tensor4.hpp"

// Brute-force oracles. Nothing in here calls into the condition checkers,
// the bracket code or the splitter; agreement with them is evidence.
namespace ciph::verify {

struct OracleConfig {
  std::uint64_t seed = 1;
  int trials = 1000;
  double fd_step = 1e-6;
  int poly_degree_max = 3;

  /// Throws InvalidArgument unless trials >= 1 and fd_step > 0.
  void validate() const;
};

/// Central differences, one coordinate at a time.
Vector fd_gradient(const ScalarField& f, const Vector& x, double step = 1e-6);

/// Verdicts of the independent loop implementations.
struct OracleVerdicts {
  bool sym_a = true;
  bool cyclic_b = true;
  bool raw_iii = true;
  bool psd_c = true;
  bool quasi_poisson = true;
  double sym_a_residual = 0.0;
  double cyclic_b_residual = 0.0;
  double raw_iii_residual = 0.0;
  double quasi_poisson_residual = 0.0;
};

inline constexpr int kOracleMaxDim = 5;

/// Quadruple-loop condition checks for n <= 5 (DimensionTooLarge otherwise).
/// The PSD verdict uses Eigen's self-adjoint solver on the given directions,
/// with the same relative scaling rule as the primary checker.
OracleVerdicts exhaustive_condition_check(const Tensor4& t, double tol,
                                          const std::vector<Vector>& directions);

/// Same, over basis vectors and e_i +- e_j only.
OracleVerdicts exhaustive_condition_check(const Tensor4& t, double tol = 0.0);

struct ConsIrrevOptions {
  std::optional<double> gamma;   // otherwise uniform in [0, 10]
  std::optional<Matrix> J;       // otherwise random skew, entries in [-1, 1]
};

/// gamma/2 (J[i,k]J[j,l] + J[i,l]J[j,k]) for `count` draws. Trial c uses the
/// generator seeded with seed + c.
std::vector<Tensor4> random_cons_irrev(std::uint64_t seed, int n, int count,
                                       const ConsIrrevOptions& options = {});

// Generators shared by the test suites and the oracle subcommand.

/// Skew matrix with entries uniform in [-1, 1], rescaled so max|J| = 1.
Matrix random_skew(std::mt19937_64& rng, int n);

/// Matrix with entries uniform in [-1, 1] and |A + A^T| >= 0.1 somewhere.
Matrix random_non_skew(std::mt19937_64& rng, int n);

/// Polynomial with total degree <= max_degree and small integer-ratio
/// coefficients.
ScalarField random_polynomial(std::mt19937_64& rng, int n, int max_degree);

/// Tensor with entries uniform in [-1, 1].
Tensor4 random_tensor(std::mt19937_64& rng, int n);

Vector random_vector(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0);

}  // namespace ciph::verify
