#pragma once

// Classical (Boolean) finite-state automata over a finite alphabet of
// integer symbols. Used as the target of skeleton and projection, and for
// exact language equivalence of mixed automata.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mixedsimplex {

using Symbol = std::uint64_t;

struct FsaEdge {
  std::size_t src;
  std::size_t dst;
  Symbol symbol;
  bool epsilon = false;
};

class Fsa {
 public:
  /// How symbols are read: face bitmasks (skeleton alphabet 2^Σ \ {∅}) or
  /// zero-based indices into Σ.
  enum class Alphabet { Faces, Symbols };

  explicit Fsa(Alphabet alphabet = Alphabet::Symbols) : alphabet_(alphabet) {}

  std::size_t add_state();
  void set_initial(std::size_t s, bool on = true);
  void set_final(std::size_t s, bool on = true);
  void add_edge(std::size_t src, std::size_t dst, Symbol symbol);
  void add_epsilon(std::size_t src, std::size_t dst);

  Alphabet alphabet() const noexcept { return alphabet_; }
  std::size_t num_states() const noexcept { return initial_.size(); }
  bool is_initial(std::size_t s) const { return initial_[s]; }
  bool is_final(std::size_t s) const { return final_[s]; }
  const std::vector<FsaEdge>& edges() const noexcept { return edges_; }
  std::vector<std::size_t> initial_states() const;

  /// Sorted distinct non-epsilon symbols.
  std::vector<Symbol> symbols() const;

 private:
  void check_state(std::size_t s) const;

  Alphabet alphabet_;
  std::vector<bool> initial_;
  std::vector<bool> final_;
  std::vector<FsaEdge> edges_;
};

bool accepts(const Fsa& a, std::span<const Symbol> word);

/// Single initial state, no epsilon edges, at most one edge per
/// (state, symbol).
bool is_deterministic(const Fsa& a);

/// Powerset construction over reachable subsets (epsilon closure applied).
Fsa determinize(const Fsa& a);

/// Minimal complete DFA over `alphabet` (which must cover every symbol of
/// `a`), states numbered in breadth-first order from the initial state.
Fsa minimize(const Fsa& a, std::span<const Symbol> alphabet);

/// Exact language equality via minimization and isomorphism of the
/// canonical minimal DFAs.
bool equivalent(const Fsa& a, const Fsa& b);

}  // namespace mixedsimplex
