#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "mixedsimplex/error.hpp"
#include "mixedsimplex/transforms.hpp"
#include "oracles.hpp"

using namespace mixedsimplex;

namespace {

double max_diff(const SimplexPoint& a, const SimplexPoint& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

double max_diff(const SimplexPoint& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

std::vector<double> random_logits(std::mt19937_64& gen, std::size_t K, double scale = 2.0) {
  std::normal_distribution<double> n(0.0, scale);
  std::vector<double> z(K);
  for (auto& v : z) v = n(gen);
  return z;
}

void check_valid(const SimplexPoint& y) {
  double s = 0.0;
  for (double v : y.values()) {
    CHECK(v >= 0.0);
    s += v;
  }
  CHECK(std::abs(s - 1.0) <= 1e-12);
}

}  // namespace

TEST_CASE("logit vectors reject non-finite entries") {
  CHECK_THROWS_AS(LogitVector({1.0, INFINITY}), Error);
  CHECK_THROWS_AS(LogitVector({NAN}), Error);
  CHECK_THROWS_AS(LogitVector(std::vector<double>{}), Error);
}

TEST_CASE("softmax examples") {
  auto y = softmax(LogitVector({0, 0}), 1.0);
  CHECK(y[0] == doctest::Approx(0.5));
  y = softmax(LogitVector({std::log(2.0), 0}), 1.0);
  CHECK(y[0] == doctest::Approx(2.0 / 3));
  CHECK(y[1] == doctest::Approx(1.0 / 3));
  y = softmax(LogitVector({1, 0}), 0.01);
  CHECK(y[1] < 1e-40);
  CHECK(y[1] > 0.0);
  y = softmax(LogitVector({1000, -1000}), 1.0);
  CHECK(y[0] == 1.0);
  CHECK_THROWS_AS(softmax(LogitVector({1, 0}), 0.0), Error);
}

TEST_CASE("argmax indicator spreads over ties") {
  CHECK(argmax_indicator(LogitVector({3, 1, 0})).values() == std::vector<double>{1, 0, 0});
  CHECK(argmax_indicator(LogitVector({2, 2, 0})).values() == std::vector<double>{0.5, 0.5, 0});
  auto y = argmax_indicator(LogitVector({0, 0, 0}));
  for (double v : y.values()) CHECK(v == doctest::Approx(1.0 / 3));
}

TEST_CASE("top-k softmax") {
  CHECK(max_diff(topk_softmax(LogitVector({1, 2, 3}), 3, 1.0), softmax(LogitVector({1, 2, 3}), 1.0)) <
        1e-15);
  auto y = topk_softmax(LogitVector({0, 0, -5}), 2, 1.0);
  CHECK(y[0] == doctest::Approx(0.5));
  CHECK(y[2] == 0.0);
  CHECK(topk_softmax(LogitVector({3, 1}), 1, 1.0).values() == std::vector<double>{1, 0});
  // Ties at the boundary keep the lowest index.
  CHECK(topk_softmax(LogitVector({1, 1, 1}), 1, 1.0).values() == std::vector<double>{1, 0, 0});
  CHECK(topk_softmax(LogitVector({0, 1, 1, 1}), 2, 1.0).values() ==
        std::vector<double>{0, 0.5, 0.5, 0});
  CHECK_THROWS_AS(topk_softmax(LogitVector({1, 2}), 0, 1.0), Error);
  CHECK_THROWS_AS(topk_softmax(LogitVector({1, 2}), 3, 1.0), Error);
}

TEST_CASE("sparsemax examples") {
  const auto centre = sparsemax(LogitVector({0, 0, 0}));
  for (double v : centre.values()) CHECK(v == doctest::Approx(1.0 / 3));
  CHECK(sparsemax(LogitVector({2, 0})).values() == std::vector<double>{1, 0});
  const std::vector<double> z{1.2, 0.7, -0.3};
  const auto y = sparsemax(LogitVector(z));
  CHECK(max_diff(y, oracle::sparsemax_qp(z)) < 1e-9);
  CHECK(y[0] == doctest::Approx(0.75));
  CHECK(y[1] == doctest::Approx(0.25));
  CHECK(y[2] == 0.0);
}

TEST_CASE("sparsemax saturates exactly for K = 2") {
  for (double t = 1.0; t < 50.0; t += 0.37) CHECK(sparsemax(LogitVector({t, 0})).values()[0] == 1.0);
  CHECK(sparsemax(LogitVector({0.999, 0}))[0] < 1.0);
}

TEST_CASE("sparsemax agrees with the projected-gradient QP") {
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<std::size_t> dim(2, 64);
  for (int i = 0; i < 300; ++i) {
    const auto z = random_logits(gen, dim(gen));
    CHECK(max_diff(sparsemax(LogitVector(z)), oracle::sparsemax_qp(z)) < 1e-7);
  }
}

TEST_CASE("entmax special cases") {
  auto y = entmax(LogitVector({0, 0}), 1.5);
  CHECK(y[0] == doctest::Approx(0.5));
  CHECK(entmax(LogitVector({2, 0}), 1.5).values() == std::vector<double>{1, 0});
  for (double t = 2.0; t < 20.0; t += 0.5) CHECK(entmax(LogitVector({t, 0}), 1.5)[0] == 1.0);
  CHECK(entmax(LogitVector({1.99, 0}), 1.5)[0] < 1.0);
  std::mt19937_64 gen(5);
  for (int i = 0; i < 100; ++i) {
    const auto z = random_logits(gen, 2 + i % 20);
    CHECK(max_diff(entmax(LogitVector(z), 2.0), sparsemax(LogitVector(z))) < 1e-9);
    CHECK(max_diff(entmax(LogitVector(z), 1.0), softmax(LogitVector(z))) < 1e-15);
    CHECK(max_diff(entmax(LogitVector(z), 1.0 + 1e-4), softmax(LogitVector(z))) < 1e-2);
  }
  CHECK_THROWS_AS(entmax(LogitVector({1, 0}), 0.5), Error);
}

TEST_CASE("entmax threshold matches a grid search") {
  const std::vector<double> z{1, 0, 0};
  const double tau = entmax_threshold(LogitVector(z), 1.5);
  CHECK(std::abs(tau - oracle::entmax_tau_grid(z, 1.5)) < 1e-6);
  const auto y = entmax(LogitVector(z), 1.5);
  for (std::size_t k = 0; k < 3; ++k) {
    const double base = std::max(0.0, 1.0 + 0.5 * (z[k] - tau));
    CHECK(y[k] == doctest::Approx(base * base).epsilon(1e-9));
  }
}

TEST_CASE("transforms return simplex points on random inputs") {
  std::mt19937_64 gen(9);
  std::uniform_int_distribution<std::size_t> dim(2, 64);
  std::uniform_real_distribution<double> alpha(1.0, 3.0);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t K = dim(gen);
    const LogitVector z(random_logits(gen, K, i % 2 ? 1.0 : 30.0));
    check_valid(softmax(z, 0.5));
    check_valid(sparsemax(z));
    check_valid(entmax(z, alpha(gen)));
    check_valid(topk_softmax(z, 1 + i % K, 1.0));
    check_valid(argmax_indicator(z));
  }
}

TEST_CASE("permutation equivariance and translation invariance") {
  std::mt19937_64 gen(13);
  for (int i = 0; i < 200; ++i) {
    const std::size_t K = 2 + i % 10;
    auto z = random_logits(gen, K);
    std::vector<std::size_t> perm(K);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> pz(K), shifted(K);
    for (std::size_t k = 0; k < K; ++k) {
      pz[k] = z[perm[k]];
      shifted[k] = z[k] + 3.25;
    }
    const auto sm = sparsemax(LogitVector(z)), psm = sparsemax(LogitVector(pz));
    const auto em = entmax(LogitVector(z), 1.5), pem = entmax(LogitVector(pz), 1.5);
    const auto so = softmax(LogitVector(z)), pso = softmax(LogitVector(pz));
    for (std::size_t k = 0; k < K; ++k) {
      CHECK(psm[k] == doctest::Approx(sm[perm[k]]).epsilon(1e-12));
      CHECK(pem[k] == doctest::Approx(em[perm[k]]).epsilon(1e-9));
      CHECK(pso[k] == doctest::Approx(so[perm[k]]).epsilon(1e-12));
    }
    CHECK(max_diff(sparsemax(LogitVector(shifted)), sm) < 1e-12);
    CHECK(max_diff(softmax(LogitVector(shifted)), so) < 1e-12);
  }
}
