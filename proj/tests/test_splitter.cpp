#include <doctest.h>

#include <random>

#include "ciph/brackets.hpp"
#include "ciph/conditions.hpp"
#include "ciph/errors.hpp"
#include "ciph/splitter.hpp"
#include "ciph/verify.hpp"
#include "fixtures.hpp"

using namespace ciph;

namespace {

// J with the documented gauge: max |J| = 1 and first nonzero entry positive.
Matrix gauge(Matrix j) {
  j /= j.cwiseAbs().maxCoeff();
  for (Eigen::Index idx = 0; idx < j.size(); ++idx) {
    const double v = j(idx / j.cols(), idx % j.cols());
    if (v != 0.0) return v < 0 ? Matrix(-j) : j;
  }
  return j;
}

double diff(const Matrix& a, const Matrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("flatten_pairs round trip") {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 4; ++n) {
    const auto t = verify::random_tensor(rng, n);
    CHECK(unflatten_pairs(flatten_pairs(t)) == t);
  }
  CHECK_THROWS_AS(unflatten_pairs(Matrix(3, 3)), DimensionMismatch);
  // A product flattens to vec(A) vec(B)^T.
  const auto j = BracketMatrix::standard_skew();
  const Matrix f = flatten_pairs(product_tensor(j, j.scaled(2.0)));
  CHECK(f(0 * 2 + 1, 1 * 2 + 0) == 1.0 * -2.0);
}

TEST_CASE("rank_one_factor") {
  const auto zero = rank_one_factor(Matrix::Zero(4, 4), 1e-12);
  CHECK(zero.rank_one);
  CHECK(zero.a.matrix() == Matrix::Zero(2, 2));

  CHECK_FALSE(rank_one_factor(flatten_pairs(fixtures::eps2()), 1e-10).rank_one);
  CHECK_THROWS_AS(rank_one_factor(Matrix::Zero(3, 3), 1e-12), DimensionMismatch);

  std::mt19937_64 rng(2);
  for (int n = 2; n <= 4; ++n) {
    const BracketMatrix a(verify::random_non_skew(rng, n));
    const BracketMatrix b(verify::random_non_skew(rng, n));
    const auto r = rank_one_factor(flatten_pairs(product_tensor(a, b)), 1e-12);
    REQUIRE(r.rank_one);
    CHECK(fixtures::max_diff(product_tensor(r.a, r.b), product_tensor(a, b)) <= 1e-14);
  }
}

TEST_CASE("split_product examples") {
  const auto j = BracketMatrix::standard_skew();
  auto r = split_product(j, j.scaled(2.0), 1e-10);
  REQUIRE(r.split());
  CHECK(r.route == SplitRoute::Product);
  CHECK(*r.gamma == doctest::Approx(2.0));
  CHECK(r.J->matrix() == j.matrix());

  // Gauge: A = -3 J gives J with positive first nonzero, gamma rescaled.
  r = split_product(j.scaled(-3.0), j.scaled(-6.0), 1e-10);
  REQUIRE(r.split());
  CHECK(*r.gamma == doctest::Approx(18.0));
  CHECK(r.J->matrix() == j.matrix());

  CHECK(split_product(BracketMatrix(Matrix::Identity(2, 2)), j, 1e-10).status ==
        SplitStatus::NotSkew);

  r = split_product(j, j.scaled(-1.0), 1e-10);
  CHECK(r.status == SplitStatus::NegativeGamma);

  const auto blocks = BracketMatrix::block_skew({1.0, 1.0});
  const auto other = BracketMatrix::block_skew({1.0, 2.0});
  r = split_product(blocks, other, 1e-10);
  CHECK(r.status == SplitStatus::NotProportional);
  // The product fails pointwise symmetry of M(y) on the standard directions.
  const auto psd = check_psd_c(product_tensor(blocks, other), standard_directions(4), 1e-10);
  CHECK_FALSE(psd.pass);
  CHECK(psd.detail.find("symmetric") != std::string::npos);

  r = split_product(BracketMatrix::zero(2), j, 1e-10);
  REQUIRE(r.split());
  CHECK(*r.gamma == 0.0);
  CHECK(r.J->matrix() == Matrix::Zero(2, 2));
}

TEST_CASE("split_tensor examples") {
  auto r = split_tensor(fixtures::eps2(), 1e-10);
  REQUIRE(r.split());
  CHECK(r.route == SplitRoute::Symmetric);
  CHECK(*r.gamma == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.J->matrix() == BracketMatrix::standard_skew().matrix());
  CHECK(reconstruct(r) == fixtures::eps2());

  std::mt19937_64 rng(3);
  const Matrix j3 = verify::random_skew(rng, 3);
  r = split_tensor(product_tensor(BracketMatrix(j3), BracketMatrix(3 * j3)), 1e-10);
  REQUIRE(r.split());
  CHECK(r.route == SplitRoute::Product);
  CHECK(fixtures::max_diff(reconstruct(r), product_tensor(BracketMatrix(j3), BracketMatrix(3 * j3))) <=
        1e-12);

  Tensor4 dd(2);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) dd.set(i, i, k, k, 1.0);
  r = split_tensor(dd, 1e-10);
  CHECK(r.status == SplitStatus::NotRankOne);
  CHECK_FALSE(r.J);

  r = split_tensor(Tensor4(3), 1e-10);
  REQUIRE(r.split());
  CHECK(*r.gamma == 0.0);

  CHECK_FALSE(split_tensor(fixtures::eps2().scaled(-1.0), 1e-10).split());
  CHECK_THROWS_AS(split_tensor(dd, -1.0), InvalidArgument);
  CHECK_THROWS_AS(reconstruct(split_tensor(dd, 1e-10)), InvalidArgument);
}

TEST_CASE("round trip over random skew products") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> gamma_dist(1e-3, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix j = verify::random_skew(rng, n);
    const double gamma = gamma_dist(rng);
    const auto t = product_tensor(BracketMatrix(j), BracketMatrix(gamma * j));
    const auto r = split_tensor(t, 1e-10);
    REQUIRE(r.split());
    CHECK(std::abs(*r.gamma - gamma) <= 1e-9);
    CHECK(std::min(diff(r.J->matrix(), j), diff(r.J->matrix(), -j)) <= 1e-9);
    CHECK(r.J->matrix() == gauge(r.J->matrix()));

    // Forward direction: what splits passes the raw identities and (c).
    const auto back = reconstruct(r);
    CHECK(check_raw_iii(back, scaled_tolerance(back)).pass);
    CHECK(check_psd_c(back, standard_directions(n), kDefaultTolerance).pass);
  }
}

TEST_CASE("symmetric representative keeps the factor-two bookkeeping") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> gamma_dist(0.1, 10.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix j = verify::random_skew(rng, n);
    const double gamma = gamma_dist(rng);
    const auto t = symmetrize_34(product_tensor(BracketMatrix(j), BracketMatrix(gamma * j)).scaled(2.0));
    const auto r = split_tensor(t, 1e-10);
    REQUIRE(r.split());
    CHECK(r.route == SplitRoute::Symmetric);
    CHECK(*r.gamma == doctest::Approx(2 * gamma).epsilon(1e-10));
    CHECK(std::min(diff(r.J->matrix(), j), diff(r.J->matrix(), -j)) <= 1e-9);
  }
}

TEST_CASE("block-diagonal J with several components") {
  // Sign fixing across components goes through cross entries.
  const auto j = BracketMatrix::block_skew({1.0, -0.5, 0.25});
  const auto t = symmetrize_34(product_tensor(j, j.scaled(4.0)));
  const auto r = split_tensor(t, 1e-10);
  REQUIRE(r.split());
  CHECK(*r.gamma == doctest::Approx(4.0));
  CHECK(diff(r.J->matrix(), j.matrix()) <= 1e-12);
}

TEST_CASE("contrapositives") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 4;
    const BracketMatrix a(verify::random_non_skew(rng, n));
    Matrix bm;
    do {
      bm = verify::random_non_skew(rng, n);
    } while (bm.cwiseAbs().maxCoeff() == 0.0);
    const auto t = product_tensor(a, BracketMatrix(bm));
    CHECK_FALSE(check_raw_iii(t, scaled_tolerance(t)).pass);
    CHECK_FALSE(split_tensor(t, 1e-10).split());
  }

  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 4;
    const BracketMatrix a(verify::random_skew(rng, n));
    // In two dimensions every skew B is proportional to A.
    const BracketMatrix b(n == 2 || trial % 2 == 0 ? verify::random_non_skew(rng, n)
                                                   : verify::random_skew(rng, n));
    const auto t = product_tensor(a, b);
    const auto r = check_psd_c(t, standard_directions(n), kDefaultTolerance);
    CHECK_FALSE(r.pass);
    CHECK(r.detail.find("symmetric") != std::string::npos);
    CHECK(split_product(a, b, 1e-10).status == SplitStatus::NotProportional);
  }
}

TEST_CASE("status and route names") {
  CHECK(to_string(SplitStatus::Split) == "SPLIT");
  CHECK(to_string(SplitStatus::NotRankOne) == "NOT_RANK_ONE");
  CHECK(to_string(SplitStatus::NegativeGamma) == "NEGATIVE_GAMMA");
  CHECK(to_string(SplitRoute::Symmetric) == "symmetric");
}
