#pragma once

// Mixed finite-state automata: transitions read points of the simplex
// instead of symbols. Each edge carries a support made of whole face
// interiors (a FaceSet); a point y is consumable on the edge iff
// face_of(y) belongs to that set. In the probability semiring an edge
// contributes weight * density, the density being uniform over the support
// w.r.t. the direct-sum measure: 1 / measure(support).

#include <cstddef>
#include <vector>

#include "mixedsimplex/fsa.hpp"
#include "mixedsimplex/simplex.hpp"

namespace mixedsimplex {

/// A sequence of simplex points sharing one alphabet size.
class MixedString {
 public:
  MixedString(std::size_t K, std::vector<SimplexPoint> symbols);

  /// Pure string from zero-based symbol indices.
  static MixedString pure(std::size_t K, const std::vector<std::size_t>& word);

  std::size_t K() const noexcept { return K_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  const SimplexPoint& operator[](std::size_t i) const { return symbols_[i]; }
  const std::vector<SimplexPoint>& symbols() const noexcept { return symbols_; }

 private:
  std::size_t K_;
  std::vector<SimplexPoint> symbols_;
};

enum class Semiring { Boolean, Probability };

struct MfsaEdge {
  std::size_t src;
  std::size_t dst;
  /// Empty for epsilon edges.
  FaceSet support;
  double weight = 1.0;
  bool epsilon = false;
};

class Mfsa {
 public:
  /// Throws KTooLarge above automaton_k_cap().
  explicit Mfsa(std::size_t K, Semiring semiring = Semiring::Boolean);

  std::size_t add_state();
  void add_states(std::size_t n);
  void set_initial(std::size_t s, double weight = 1.0);
  void set_final(std::size_t s, double weight = 1.0);
  /// Empty supports are dropped; faces must fit in K. Boolean automata only
  /// take weights 0 and 1.
  void add_edge(std::size_t src, std::size_t dst, FaceSet support, double weight = 1.0);
  void add_epsilon(std::size_t src, std::size_t dst, double weight = 1.0);

  std::size_t K() const noexcept { return K_; }
  Semiring semiring() const noexcept { return semiring_; }
  std::size_t num_states() const noexcept { return initial_.size(); }
  double initial_weight(std::size_t s) const { return initial_[s]; }
  double final_weight(std::size_t s) const { return final_[s]; }
  bool is_initial(std::size_t s) const { return initial_[s] > 0.0; }
  bool is_final(std::size_t s) const { return final_[s] > 0.0; }
  const std::vector<MfsaEdge>& edges() const noexcept { return edges_; }
  bool has_epsilon() const noexcept;

  /// Edge indices leaving each state.
  std::vector<std::vector<std::size_t>> outgoing() const;

 private:
  void check_state(std::size_t s) const;
  void check_weight(double w) const;

  std::size_t K_;
  Semiring semiring_;
  std::vector<double> initial_;
  std::vector<double> final_;
  std::vector<MfsaEdge> edges_;
};

/// Single initial state, no epsilon edges, pairwise disjoint outgoing
/// supports at every state.
bool is_deterministic(const Mfsa& a);

/// Deterministic, and the outgoing supports of every state cover all
/// 2^K - 1 faces.
bool is_complete(const Mfsa& a);

/// Subset simulation over positive-weight edges.
bool accepts(const Mfsa& a, const MixedString& x, double tol = kDefaultFaceTolerance);

/// Probability-semiring weight: sum over consistent paths of
/// lambda * prod(w * density) * rho, epsilon edges contributing w only.
double string_weight(const Mfsa& a, const MixedString& x, double tol = kDefaultFaceTolerance);

/// Generalized powerset construction. Boolean automata only
/// (NotDeterminizable otherwise).
Mfsa determinize(const Mfsa& a);

/// Determinizes if needed and routes uncovered faces to a sink state.
Mfsa complete(const Mfsa& a);

Mfsa complement(const Mfsa& a);
Mfsa unite(const Mfsa& a, const Mfsa& b);
/// Product construction with intersected supports.
Mfsa intersect(const Mfsa& a, const Mfsa& b);
Mfsa concatenate(const Mfsa& a, const Mfsa& b);

/// Epsilon-free equivalent. Boolean: closure-based; probability: closure
/// weights (I - E)^{-1}. Epsilon-free input is returned unchanged.
Mfsa epsilon_removal(const Mfsa& a);

/// Stochastic equivalent: per state, outgoing weights plus the final weight
/// sum to one, string weights unchanged. Throws NotTrim if some state cannot
/// reach a final state, DivergentWeights if total mass is infinite.
Mfsa weight_push(const Mfsa& a);

std::vector<Face> skeleton_string(const MixedString& x, double tol = kDefaultFaceTolerance);

/// Classical DFA over the face alphabet 2^Σ \ {∅} (symbols are face masks)
/// recognizing the skeletons of the mixed language.
Fsa skeleton_automaton(const Mfsa& a);

inline constexpr std::size_t kMaxProjections = 1'000'000;

/// All pure strings u with u_i in supp(x_i), lexicographic, zero-based.
std::vector<std::vector<std::size_t>> projection_string(const MixedString& x,
                                                        double tol = kDefaultFaceTolerance);

/// Classical DFA over Σ (zero-based symbols) recognizing the projections.
Fsa projection_automaton(const Mfsa& a);

/// Embeds a classical automaton over [K]: every symbol edge becomes a
/// single-vertex support.
Mfsa embed(const Fsa& f, std::size_t K);

/// Exact mixed-language equality: membership depends only on the skeleton,
/// so this compares the skeleton automata.
bool equivalent(const Mfsa& a, const Mfsa& b);

}  // namespace mixedsimplex
