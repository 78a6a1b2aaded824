#pragma once

// Shared helpers for the automata tests and the acceptance binary.

#include <random>
#include <vector>

#include "mixedsimplex/fsa.hpp"
#include "mixedsimplex/mfsa.hpp"
#include "oracles.hpp"

namespace automata_support {

using namespace mixedsimplex;

inline MixedString centroid_string(const std::vector<Face>& word, std::size_t K) {
  std::vector<SimplexPoint> pts;
  for (Face f : word) pts.push_back(face_centroid(f, K));
  return MixedString(K, std::move(pts));
}

inline MixedString random_string_on(const std::vector<Face>& word, std::size_t K,
                                    std::mt19937_64& gen) {
  std::vector<SimplexPoint> pts;
  for (Face f : word) pts.push_back(oracle::random_point_on(f, K, gen));
  return MixedString(K, std::move(pts));
}

// Every face word of length <= max_len over the 2^K - 1 faces.
inline std::vector<std::vector<Face>> all_words(std::size_t K, std::size_t max_len) {
  std::vector<std::vector<Face>> out{{}};
  std::vector<std::vector<Face>> layer{{}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::vector<Face>> next;
    for (const auto& w : layer)
      for (FaceMask m = 1; m < (FaceMask{1} << K); ++m) {
        auto v = w;
        v.emplace_back(m);
        next.push_back(std::move(v));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

inline std::vector<Face> random_word(std::size_t K, std::size_t max_len, std::mt19937_64& gen) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<FaceMask> mask(1, (FaceMask{1} << K) - 1);
  std::vector<Face> w(len(gen), Face::vertex(0));
  for (auto& f : w) f = Face(mask(gen));
  return w;
}

// Random word that follows a path of `a` (so most are accepted when the
// path ends in a final state), drawing each face uniformly from the edge
// support.
inline std::vector<Face> walk_word(const Mfsa& a, std::size_t max_len, std::mt19937_64& gen) {
  std::vector<std::size_t> inits;
  for (std::size_t s = 0; s < a.num_states(); ++s)
    if (a.is_initial(s)) inits.push_back(s);
  std::vector<Face> w;
  if (inits.empty()) return w;
  const auto out = a.outgoing();
  std::size_t s = inits[std::uniform_int_distribution<std::size_t>(0, inits.size() - 1)(gen)];
  const std::size_t len = std::uniform_int_distribution<std::size_t>(0, max_len)(gen);
  for (std::size_t steps = 0; w.size() < len && steps < 4 * max_len + 4; ++steps) {
    if (out[s].empty()) break;
    const auto& e = a.edges()[out[s][std::uniform_int_distribution<std::size_t>(0, out[s].size() - 1)(gen)]];
    if (!e.epsilon) {
      const auto& faces = e.support.faces();
      w.push_back(faces[std::uniform_int_distribution<std::size_t>(0, faces.size() - 1)(gen)]);
    }
    s = e.dst;
  }
  return w;
}

// Classical automaton over the face alphabet read straight off the edges
// (no determinization).
inline Fsa face_relabel(const Mfsa& a) {
  Fsa f(Fsa::Alphabet::Faces);
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    f.add_state();
    f.set_initial(s, a.is_initial(s));
    f.set_final(s, a.is_final(s));
  }
  for (const auto& e : a.edges()) {
    if (e.weight <= 0.0) continue;
    if (e.epsilon)
      f.add_epsilon(e.src, e.dst);
    else
      for (Face face : e.support) f.add_edge(e.src, e.dst, face.mask());
  }
  return f;
}

inline std::vector<Symbol> masks(const std::vector<Face>& word) {
  std::vector<Symbol> out;
  for (Face f : word) out.push_back(f.mask());
  return out;
}

}  // namespace automata_support
