#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "automata_support.hpp"
#include "mixedsimplex/error.hpp"

using namespace mixedsimplex;
using namespace automata_support;

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

// a . b . (anything on the edge) . a over K = 2.
Mfsa worked_example_automaton() {
  Mfsa a(2);
  a.add_states(5);
  a.set_initial(0);
  a.set_final(4);
  a.add_edge(0, 1, FaceSet::single(F({1})));
  a.add_edge(1, 2, FaceSet::single(F({2})));
  a.add_edge(2, 3, FaceSet::single(F({1, 2})));
  a.add_edge(3, 4, FaceSet::single(F({1})));
  return a;
}

MixedString worked_example_string() {
  return MixedString(2, {SimplexPoint({1, 0}), SimplexPoint({0, 1}), SimplexPoint({0.2, 0.8}),
                         SimplexPoint({1, 0})});
}

bool outgoing_disjoint(const Mfsa& a) {
  for (const auto& edges : a.outgoing())
    for (std::size_t i = 0; i < edges.size(); ++i)
      for (std::size_t j = i + 1; j < edges.size(); ++j)
        if (!a.edges()[edges[i]].support.disjoint_with(a.edges()[edges[j]].support)) return false;
  return true;
}

}  // namespace

TEST_CASE("the worked mixed string: acceptance, skeleton and projections") {
  const auto x = worked_example_string();
  CHECK(accepts(worked_example_automaton(), x));
  CHECK(skeleton_string(x) == std::vector<Face>{F({1}), F({2}), F({1, 2}), F({1})});
  const auto proj = projection_string(x);
  CHECK(proj == std::vector<std::vector<std::size_t>>{{0, 1, 0, 0}, {0, 1, 1, 0}});
  const Fsa pa = projection_automaton(worked_example_automaton());
  CHECK(is_deterministic(pa));
  for (const auto& w : proj) {
    std::vector<Symbol> s(w.begin(), w.end());
    CHECK(accepts(pa, s));
  }
  const Fsa sk = skeleton_automaton(worked_example_automaton());
  CHECK(accepts(sk, masks(skeleton_string(x))));
}

TEST_CASE("support mismatch rejects and alphabets must agree") {
  Mfsa a(2);
  a.add_states(2);
  a.set_initial(0);
  a.set_final(1);
  a.add_edge(0, 1, FaceSet::single(F({1, 2})));
  CHECK_FALSE(accepts(a, MixedString::pure(2, {0})));
  CHECK(accepts(a, MixedString(2, {SimplexPoint({0.4, 0.6})})));
  CHECK(kind_of([&] { accepts(a, MixedString::pure(3, {0})); }) == ErrorKind::AlphabetMismatch);
  CHECK(kind_of([&] { a.add_edge(0, 1, FaceSet::single(F({3}))); }) == ErrorKind::AlphabetMismatch);
  CHECK(kind_of([&] { a.add_edge(0, 1, FaceSet::single(F({1})), 0.5); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { Mfsa(21); }) == ErrorKind::KTooLarge);
  CHECK(kind_of([] { projection_string(MixedString(
                         20, std::vector<SimplexPoint>(5, SimplexPoint::barycenter(20)))); }) ==
        ErrorKind::TooManyProjections);
}

TEST_CASE("embedded classical automata accept exactly their pure strings") {
  std::mt19937_64 gen(1);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t K = 2 + trial % 2;
    Fsa f;
    const std::size_t n = 1 + trial % 4;
    for (std::size_t s = 0; s < n; ++s) f.add_state();
    std::bernoulli_distribution coin(0.4);
    f.set_initial(0);
    for (std::size_t s = 0; s < n; ++s) {
      f.set_final(s, coin(gen));
      for (std::size_t t = 0; t < n; ++t)
        for (std::size_t k = 0; k < K; ++k)
          if (coin(gen)) f.add_edge(s, t, k);
    }
    const Mfsa m = embed(f, K);
    // Every pure string up to length 6.
    std::vector<std::vector<std::size_t>> words{{}};
    for (std::size_t len = 1; len <= 6; ++len) {
      std::vector<std::vector<std::size_t>> next;
      for (const auto& w : words)
        if (w.size() == len - 1)
          for (std::size_t k = 0; k < K; ++k) {
            auto v = w;
            v.push_back(k);
            next.push_back(v);
          }
      words.insert(words.end(), next.begin(), next.end());
    }
    for (const auto& w : words) {
      std::vector<Symbol> s(w.begin(), w.end());
      CHECK(accepts(m, MixedString::pure(K, w)) == accepts(f, s));
    }
    // Mixed symbols are never consumable on single-vertex supports.
    CHECK_FALSE(accepts(m, MixedString(K, {SimplexPoint::barycenter(K)})));
    // Determinization agrees with the classical powerset construction.
    CHECK(equivalent(projection_automaton(determinize(m)), determinize(f)));
  }
}

TEST_CASE("determinize is deterministic and language-preserving on small automata") {
  std::mt19937_64 gen(2);
  const auto words = all_words(2, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const Mfsa a = oracle::random_mfsa(2, 1 + trial % 3, gen, 0.5, trial % 2 ? 0.3 : 0.0);
    const Mfsa d = determinize(a);
    CHECK(is_deterministic(d));
    CHECK(outgoing_disjoint(d));
    for (const auto& w : words) {
      const bool expected = oracle::path_accepts(a, w);
      CHECK(accepts(d, centroid_string(w, 2)) == expected);
      CHECK(accepts(a, random_string_on(w, 2, gen)) == expected);
    }
    CHECK(equivalent(face_relabel(a), face_relabel(d)));
    CHECK(equivalent(a, d));
  }
}

TEST_CASE("determinize on K = 3 with sampled strings") {
  std::mt19937_64 gen(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Mfsa a = oracle::random_mfsa(3, 5, gen, 0.3, 0.1);
    const Mfsa d = determinize(a);
    CHECK(is_deterministic(d));
    for (int i = 0; i < 200; ++i) {
      const auto w = i % 2 ? walk_word(a, 8, gen) : random_word(3, 8, gen);
      CHECK(accepts(d, random_string_on(w, 3, gen)) == oracle::path_accepts(a, w));
    }
  }
}

TEST_CASE("completion covers every face atom exactly once") {
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t K = 2 + trial % 2;
    const Mfsa c = complete(oracle::random_mfsa(K, 3, gen));
    CHECK(is_complete(c));
    const auto out = c.outgoing();
    for (std::size_t s = 0; s < c.num_states(); ++s)
      for (int i = 0; i < 200; ++i) {
        const auto w = random_word(K, 1, gen);
        if (w.empty()) continue;
        const SimplexPoint y = oracle::random_point_on(w[0], K, gen);
        int hits = 0;
        for (std::size_t e : out[s]) hits += c.edges()[e].support.contains(face_of(y));
        CHECK(hits == 1);
      }
  }
}

TEST_CASE("closure operations") {
  std::mt19937_64 gen(5);
  const auto words = all_words(2, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const Mfsa a = oracle::random_mfsa(2, 1 + trial % 3, gen, 0.5, 0.2);
    const Mfsa b = oracle::random_mfsa(2, 1 + (trial / 3) % 3, gen, 0.5, 0.2);
    const Mfsa na = complement(a), nb = complement(b);
    const Mfsa u = unite(a, b), i = intersect(a, b), c = concatenate(a, b);
    const Mfsa morgan = complement(unite(na, nb));
    const Mfsa contradiction = intersect(a, na);
    CHECK(equivalent(complement(na), a));
    CHECK(equivalent(i, morgan));
    for (const auto& w : words) {
      const bool in_a = oracle::path_accepts(a, w), in_b = oracle::path_accepts(b, w);
      const auto x = random_string_on(w, 2, gen);
      CHECK(accepts(na, x) == !in_a);
      CHECK(accepts(u, x) == (in_a || in_b));
      CHECK(accepts(i, x) == (in_a && in_b));
      CHECK_FALSE(accepts(contradiction, x));
      bool split = false;
      for (std::size_t k = 0; k <= w.size() && !split; ++k)
        split = oracle::path_accepts(a, {w.begin(), w.begin() + k}) &&
                oracle::path_accepts(b, {w.begin() + k, w.end()});
      CHECK(accepts(c, x) == split);
    }
  }
  CHECK(kind_of([] { unite(Mfsa(2), Mfsa(3)); }) == ErrorKind::AlphabetMismatch);
  CHECK(kind_of([] { determinize(Mfsa(2, Semiring::Probability)); }) == ErrorKind::NotDeterminizable);
}

TEST_CASE("epsilon removal preserves the language") {
  Mfsa a(2);
  a.add_states(2);
  a.set_initial(0);
  a.set_final(1);
  a.add_epsilon(0, 1);
  a.add_edge(1, 1, FaceSet::single(F({1, 2})));
  const Mfsa r = epsilon_removal(a);
  CHECK_FALSE(r.has_epsilon());
  std::mt19937_64 gen(6);
  for (int i = 0; i < 1000; ++i) {
    const auto w = random_word(2, 5, gen);
    const auto x = random_string_on(w, 2, gen);
    CHECK(accepts(r, x) == accepts(a, x));
    CHECK(accepts(r, x) == oracle::path_accepts(a, w));
  }
  const Mfsa plain = oracle::random_mfsa(2, 3, gen);
  const Mfsa same = epsilon_removal(plain);
  CHECK(same.edges().size() == plain.edges().size());
}

TEST_CASE("string weight equals path enumeration") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t K = 2 + trial % 2;
    const Mfsa a = oracle::random_weighted_mfsa(K, 5, gen, trial % 2 == 1, false);
    for (int i = 0; i < 25; ++i) {
      const auto x = random_string_on(random_word(K, 4, gen), K, gen);
      const double w = string_weight(a, x);
      CHECK(std::abs(w - oracle::path_sum(a, x)) <= 1e-12 * std::max(1.0, std::abs(w)));
    }
  }
  // A single path is the product of its factors: 0.5 * (0.4 / 1) * (0.3 / 0.5) * 0.2.
  Mfsa p(3, Semiring::Probability);
  p.add_states(3);
  p.set_initial(0, 0.5);
  p.set_final(2, 0.2);
  p.add_edge(0, 1, FaceSet::single(F({1, 2})), 0.4);
  p.add_edge(1, 2, FaceSet::single(Face::full(3)), 0.3);
  const MixedString x(3, {SimplexPoint({0.5, 0.5, 0}), SimplexPoint::barycenter(3)});
  CHECK(string_weight(p, x) == doctest::Approx(0.5 * 0.4 * 0.6 * 0.2).epsilon(1e-14));
}

TEST_CASE("weight push yields a stochastic automaton with the same weights") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Mfsa a = oracle::random_weighted_mfsa(2, 5, gen, trial % 2 == 1, true);
    const Mfsa p = weight_push(a);
    std::vector<double> mass(p.num_states(), 0.0);
    for (const auto& e : p.edges()) mass[e.src] += e.weight;
    for (std::size_t s = 0; s < p.num_states(); ++s)
      CHECK(mass[s] + p.final_weight(s) == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 0; i < 50; ++i) {
      const auto x = random_string_on(random_word(2, 5, gen), 2, gen);
      const double w = string_weight(a, x);
      CHECK(std::abs(string_weight(p, x) - w) <= 1e-10 * std::max(1.0, w));
    }
  }
}

TEST_CASE("weight push rejects untrimmed and divergent automata") {
  Mfsa a(2, Semiring::Probability);
  a.add_states(2);
  a.set_initial(0);
  a.set_final(0);
  a.add_edge(0, 1, FaceSet::single(F({1})), 0.5);
  CHECK(kind_of([&] { weight_push(a); }) == ErrorKind::NotTrim);
  Mfsa b(2, Semiring::Probability);
  b.add_states(1);
  b.set_initial(0);
  b.set_final(0);
  b.add_edge(0, 0, FaceSet::all(2), 1.5);
  CHECK(kind_of([&] { weight_push(b); }) == ErrorKind::DivergentWeights);
}

TEST_CASE("stochastic automaton: length mass matches generative simulation") {
  // Integrating the weight over every mixed string of length L: the weight
  // is constant on each product of face interiors, so the integral is a
  // finite sum of centroid weights times face volumes.
  std::mt19937_64 gen(9);
  const Mfsa a = weight_push(oracle::random_weighted_mfsa(2, 3, gen, false, true));
  double lambda = 0.0;
  for (std::size_t s = 0; s < a.num_states(); ++s) lambda += a.initial_weight(s);
  std::vector<double> exact(4, 0.0);
  for (const auto& w : all_words(2, 3)) {
    double vol = 1.0;
    for (Face f : w) vol *= face_volume(f);
    exact[w.size()] += string_weight(a, centroid_string(w, 2)) * vol / lambda;
  }
  // Generative story: start from lambda, stop with rho, otherwise follow an
  // edge with probability w and emit a uniform point of its support.
  const auto out = a.outgoing();
  std::vector<double> counts(4, 0.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double r = u(gen) * lambda;
    std::size_t s = 0;
    while (s + 1 < a.num_states() && r >= a.initial_weight(s)) r -= a.initial_weight(s++);
    for (std::size_t len = 0; len < 4; ++len) {
      double v = u(gen);
      if (v < a.final_weight(s)) {
        counts[len] += 1;
        break;
      }
      v -= a.final_weight(s);
      std::size_t next = s;
      for (std::size_t e : out[s]) {
        if (v < a.edges()[e].weight) {
          next = a.edges()[e].dst;
          break;
        }
        v -= a.edges()[e].weight;
      }
      s = next;
    }
  }
  for (std::size_t L = 0; L < 4; ++L) {
    const double p = counts[L] / n;
    CHECK(std::abs(p - exact[L]) < 3 * std::sqrt(exact[L] * (1 - exact[L]) / n) + 1e-12);
  }
}

TEST_CASE("skeleton automaton accepts exactly the skeletons of the language") {
  std::mt19937_64 gen(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Mfsa a = oracle::random_mfsa(3, 4, gen, 0.3, 0.1);
    const Fsa sk = skeleton_automaton(a);
    CHECK(is_deterministic(sk));
    for (int i = 0; i < 100; ++i) {
      const auto w = i % 2 ? walk_word(a, 6, gen) : random_word(3, 6, gen);
      const auto x = random_string_on(w, 3, gen);
      CHECK(accepts(sk, masks(skeleton_string(x))) == accepts(a, x));
    }
  }
}

TEST_CASE("projection automaton accepts exactly the projections") {
  std::mt19937_64 gen(11);
  const auto words = all_words(2, 4);
  for (int trial = 0; trial < 60; ++trial) {
    const Mfsa a = oracle::random_mfsa(2, 1 + trial % 3, gen, 0.5, 0.2);
    const Fsa pa = projection_automaton(a);
    CHECK(is_deterministic(pa));
    std::set<std::vector<std::size_t>> projections;
    for (const auto& w : words)
      if (oracle::path_accepts(a, w))
        for (auto& p : projection_string(centroid_string(w, 2))) projections.insert(p);
    for (const auto& w : words) {
      bool pure = true;
      std::vector<std::size_t> u;
      for (Face f : w) {
        pure = pure && f.size() == 1;
        u.push_back(f.indices()[0]);
      }
      if (!pure) continue;
      std::vector<Symbol> s(u.begin(), u.end());
      CHECK(accepts(pa, s) == projections.contains(u));
    }
  }
}

TEST_CASE("classical minimization and equivalence") {
  // (ab)* two ways.
  Fsa a;
  a.add_state();
  a.add_state();
  a.set_initial(0);
  a.set_final(0);
  a.add_edge(0, 1, 0);
  a.add_edge(1, 0, 1);
  Fsa b;
  for (int i = 0; i < 4; ++i) b.add_state();
  b.set_initial(0);
  b.set_final(0);
  b.set_final(2);
  b.add_edge(0, 1, 0);
  b.add_edge(1, 2, 1);
  b.add_edge(2, 3, 0);
  b.add_edge(3, 2, 1);
  CHECK(equivalent(a, b));
  const std::vector<Symbol> sigma{0, 1};
  CHECK(minimize(b, sigma).num_states() == 3);  // two live states plus the sink
  b.set_final(3);
  CHECK_FALSE(equivalent(a, b));
}
