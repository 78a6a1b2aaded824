#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "mixedsimplex/error.hpp"
#include "mixedsimplex/simplex.hpp"
#include "oracles.hpp"

using namespace mixedsimplex;

namespace {

Face F(std::initializer_list<std::size_t> one_based) {
  std::vector<std::size_t> idx;
  for (auto k : one_based) idx.push_back(k - 1);
  return Face::from_indices(idx);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("simplex points validate and renormalize") {
  SimplexPoint p({0.25, 0.75});
  CHECK(p[0] == 0.25);
  SimplexPoint drift({0.5, 0.5 + 5e-10});
  CHECK(std::abs(drift[0] + drift[1] - 1.0) < 1e-15);
  CHECK(kind_of([] { SimplexPoint({0.5, 0.6}); }) == ErrorKind::InvalidPoint);
  CHECK(kind_of([] { SimplexPoint({1.5, -0.5}); }) == ErrorKind::InvalidPoint);
  CHECK(kind_of([] { SimplexPoint({NAN, 1.0}); }) == ErrorKind::InvalidPoint);
  CHECK(kind_of([] { SimplexPoint(std::vector<double>{}); }) == ErrorKind::InvalidPoint);
}

TEST_CASE("face_of picks the support above tolerance") {
  CHECK(face_of(SimplexPoint({1, 0, 0})) == F({1}));
  CHECK(face_of(SimplexPoint({0.5, 0.5, 0})) == F({1, 2}));
  CHECK(face_of(SimplexPoint({0.2, 0.8})) == F({1, 2}));
  CHECK(face_of(SimplexPoint({1e-12, 1.0 - 1e-12})) == F({2}));
  CHECK(face_of(SimplexPoint({1e-12, 1.0 - 1e-12}), 0.0) == F({1, 2}));
  CHECK(kind_of([] { face_of(SimplexPoint({0.5, 0.5}), 0.5); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([] { face_of(SimplexPoint({1.0 / 3, 1.0 / 3, 1.0 / 3}), 0.34); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("face_of with tol just under 1/K can degenerate") {
  // Every coordinate equals 1/K, all strictly above tol < 1/K.
  CHECK(face_of(SimplexPoint({0.25, 0.25, 0.25, 0.25}), 0.2499) == Face::full(4));
}

TEST_CASE("faces report size, dimension and 1-based alphabet need") {
  const Face f = F({2, 4});
  CHECK(f.size() == 2);
  CHECK(f.dimension() == 1);
  CHECK(f.min_alphabet() == 4);
  CHECK(f.is_subface_of(F({1, 2, 4})));
  CHECK_FALSE(F({1, 2, 4}).is_subface_of(f));
  CHECK(kind_of([] { Face(FaceMask{0}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("face volumes use the dropped-coordinate parametrization") {
  CHECK(face_volume(F({1})) == 1.0);
  CHECK(face_volume(F({1, 2})) == 1.0);
  CHECK(face_volume(F({1, 2, 3})) == 0.5);
  CHECK(face_volume(Face::full(5)) == doctest::Approx(1.0 / 24));
  CHECK(std::exp(log_face_volume(Face::full(7))) == doctest::Approx(1.0 / 720));
}

TEST_CASE("measure of simple face sets") {
  CHECK(measure(FaceSet{}) == 0.0);
  CHECK(measure(FaceSet({F({1}), F({2}), F({3})})) == 3.0);
  CHECK(measure(FaceSet::all(3)) == 6.5);
  // Sum of C(K,k)/(k-1)! computed independently.
  for (std::size_t K = 1; K <= 10; ++K) {
    double expected = 0.0;
    for (std::size_t k = 1; k <= K; ++k)
      expected += std::tgamma(K + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(K - k + 1.0)) /
                  std::tgamma(static_cast<double>(k));
    CHECK(measure(FaceSet::all(K)) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("face lattice has 2^K - 1 faces ordered by inclusion") {
  for (std::size_t K = 2; K <= 10; ++K) {
    FaceLattice lat(K);
    const auto faces = lat.enumerate();
    CHECK(faces.size() == (std::size_t{1} << K) - 1);
    CHECK(lat.size() == faces.size());
  }
  FaceLattice lat(4);
  for (Face f : lat.enumerate())
    for (Face g : lat.enumerate())
      CHECK(FaceLattice::contains(f, g) == ((f.mask() & g.mask()) == f.mask()));
}

TEST_CASE("lattice enumeration is capped") {
  CHECK(kind_of([] { FaceLattice(25); }) == ErrorKind::KTooLarge);
  setenv("MIXEDSIMPLEX_MAX_K", "30", 1);
  CHECK(lattice_k_cap() == 30);
  unsetenv("MIXEDSIMPLEX_MAX_K");
  CHECK(lattice_k_cap() == 24);
}

TEST_CASE("face sets form a Boolean algebra") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t K = 1 + trial % 5;
    const FaceSet a = oracle::random_face_set(K, gen), b = oracle::random_face_set(K, gen);
    const FaceSet all = FaceSet::all(K);
    CHECK(a.unite(b) == b.unite(a));
    CHECK(a.intersect(b).is_subset_of(a));
    CHECK(a.unite(a.complement(K)) == all);
    CHECK(a.intersect(a.complement(K)).empty());
    CHECK(a.complement(K).complement(K) == a);
    CHECK(a.unite(b).complement(K) == a.complement(K).intersect(b.complement(K)));
    CHECK(a.minus(b) == a.intersect(b.complement(K)));
    CHECK(a.disjoint_with(b) == a.intersect(b).empty());
  }
}

TEST_CASE("measure is additive and monotone on random face sets") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t K = 1 + trial % 5;
    const FaceSet a = oracle::random_face_set(K, gen), b = oracle::random_face_set(K, gen);
    CHECK(measure_exact(a.unite(b)) + measure_exact(a.intersect(b)) ==
          measure_exact(a) + measure_exact(b));
    CHECK(measure(a.intersect(b)) <= measure(a));
    CHECK(measure(a) <= measure(a.unite(b)));
  }
}

TEST_CASE("face_of assigns exactly one face and the restriction lies in its interior") {
  std::mt19937_64 gen(3);
  std::uniform_int_distribution<int> dim(2, 8);
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution zero(0.3), tiny(0.1);
  for (int trial = 0; trial < 10000; ++trial) {
    const int K = dim(gen);
    std::vector<double> w(K);
    for (auto& x : w) x = zero(gen) ? 0.0 : (tiny(gen) ? 1e-13 : e(gen));
    if (*std::max_element(w.begin(), w.end()) < 1e-3) w[0] = 1.0;
    const SimplexPoint p = SimplexPoint::normalized(w);
    const Face f = face_of(p);
    const SimplexPoint r = restrict_to_face(p, f);
    int owners = 0;
    FaceLattice(K).for_each([&](Face g) { owners += (g == f); });
    CHECK(owners == 1);
    for (int k = 0; k < K; ++k) CHECK((r[k] > 0.0) == f.has_index(k));
    CHECK(face_of(r, 0.0) == f);
  }
}

TEST_CASE("exact measure is rational in units of 1/23!") {
  const ExactMeasure m = measure_exact(FaceSet::all(3));
  CHECK(m.to_double() == 6.5);
  CHECK(kind_of([] { measure_exact(FaceSet::single(Face::full(25))); }) == ErrorKind::KTooLarge);
  CHECK(measure(FaceSet::single(Face::full(30))) == doctest::Approx(1.0 / std::tgamma(30.0)));
}
