#include "mixedsimplex/fsa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "mixedsimplex/error.hpp"

namespace mixedsimplex {
namespace {

using StateSet = std::vector<std::size_t>;

std::vector<std::vector<std::size_t>> outgoing(const Fsa& a) {
  std::vector<std::vector<std::size_t>> out(a.num_states());
  for (std::size_t i = 0; i < a.edges().size(); ++i) out[a.edges()[i].src].push_back(i);
  return out;
}

StateSet closure(const Fsa& a, const std::vector<std::vector<std::size_t>>& out, StateSet seed) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<std::size_t> stack;
  for (std::size_t s : seed)
    if (!seen[s]) seen[s] = true, stack.push_back(s);
  StateSet result;
  while (!stack.empty()) {
    const std::size_t s = stack.back();
    stack.pop_back();
    result.push_back(s);
    for (std::size_t e : out[s]) {
      const auto& edge = a.edges()[e];
      if (edge.epsilon && !seen[edge.dst]) seen[edge.dst] = true, stack.push_back(edge.dst);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

}  // namespace

std::size_t Fsa::add_state() {
  initial_.push_back(false);
  final_.push_back(false);
  return initial_.size() - 1;
}

void Fsa::check_state(std::size_t s) const {
  if (s >= num_states()) throw Error(ErrorKind::InvalidArgument, "state index out of range");
}

void Fsa::set_initial(std::size_t s, bool on) {
  check_state(s);
  initial_[s] = on;
}

void Fsa::set_final(std::size_t s, bool on) {
  check_state(s);
  final_[s] = on;
}

void Fsa::add_edge(std::size_t src, std::size_t dst, Symbol symbol) {
  check_state(src);
  check_state(dst);
  edges_.push_back({src, dst, symbol, false});
}

void Fsa::add_epsilon(std::size_t src, std::size_t dst) {
  check_state(src);
  check_state(dst);
  edges_.push_back({src, dst, 0, true});
}

std::vector<std::size_t> Fsa::initial_states() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < num_states(); ++s)
    if (initial_[s]) out.push_back(s);
  return out;
}

std::vector<Symbol> Fsa::symbols() const {
  std::set<Symbol> s;
  for (const auto& e : edges_)
    if (!e.epsilon) s.insert(e.symbol);
  return {s.begin(), s.end()};
}

bool accepts(const Fsa& a, std::span<const Symbol> word) {
  const auto out = outgoing(a);
  StateSet current = closure(a, out, a.initial_states());
  for (Symbol sym : word) {
    StateSet next;
    for (std::size_t s : current)
      for (std::size_t e : out[s]) {
        const auto& edge = a.edges()[e];
        if (!edge.epsilon && edge.symbol == sym) next.push_back(edge.dst);
      }
    if (next.empty()) return false;
    current = closure(a, out, std::move(next));
  }
  return std::any_of(current.begin(), current.end(), [&](std::size_t s) { return a.is_final(s); });
}

bool is_deterministic(const Fsa& a) {
  if (a.initial_states().size() != 1) return false;
  std::set<std::pair<std::size_t, Symbol>> seen;
  for (const auto& e : a.edges()) {
    if (e.epsilon) return false;
    if (!seen.insert({e.src, e.symbol}).second) return false;
  }
  return true;
}

Fsa determinize(const Fsa& a) {
  const auto out = outgoing(a);
  Fsa d(a.alphabet());
  std::map<StateSet, std::size_t> ids;
  std::deque<StateSet> queue;
  auto intern = [&](StateSet set) {
    auto [it, inserted] = ids.try_emplace(set, 0);
    if (inserted) {
      it->second = d.add_state();
      if (std::any_of(set.begin(), set.end(), [&](std::size_t s) { return a.is_final(s); }))
        d.set_final(it->second);
      queue.push_back(std::move(set));
    }
    return it->second;
  };
  d.set_initial(intern(closure(a, out, a.initial_states())));
  while (!queue.empty()) {
    const StateSet current = std::move(queue.front());
    queue.pop_front();
    const std::size_t from = ids.at(current);
    std::map<Symbol, StateSet> succ;
    for (std::size_t s : current)
      for (std::size_t e : out[s]) {
        const auto& edge = a.edges()[e];
        if (!edge.epsilon) succ[edge.symbol].push_back(edge.dst);
      }
    for (auto& [sym, targets] : succ) {
      const std::size_t to = intern(closure(a, out, std::move(targets)));
      d.add_edge(from, to, sym);
    }
  }
  return d;
}

Fsa minimize(const Fsa& a, std::span<const Symbol> alphabet) {
  const Fsa dfa = is_deterministic(a) ? a : determinize(a);
  std::vector<Symbol> sigma(alphabet.begin(), alphabet.end());
  std::sort(sigma.begin(), sigma.end());
  sigma.erase(std::unique(sigma.begin(), sigma.end()), sigma.end());
  for (Symbol s : dfa.symbols())
    if (!std::binary_search(sigma.begin(), sigma.end(), s))
      throw Error(ErrorKind::AlphabetMismatch, "alphabet does not cover the automaton");

  // Dense transition table with an explicit sink at index n.
  const std::size_t n = dfa.num_states();
  const std::size_t sink = n;
  const std::size_t m = sigma.size();
  std::vector<std::size_t> delta((n + 1) * m, sink);
  for (const auto& e : dfa.edges()) {
    const auto col = std::lower_bound(sigma.begin(), sigma.end(), e.symbol) - sigma.begin();
    delta[e.src * m + col] = e.dst;
  }
  std::vector<std::size_t> cls(n + 1);
  for (std::size_t s = 0; s <= n; ++s) cls[s] = (s < n && dfa.is_final(s)) ? 1 : 0;

  // Moore refinement until the number of classes stops growing.
  std::size_t num_classes = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> signature_ids;
    std::vector<std::size_t> next(n + 1);
    for (std::size_t s = 0; s <= n; ++s) {
      std::vector<std::size_t> sig{cls[s]};
      for (std::size_t c = 0; c < m; ++c) sig.push_back(cls[delta[s * m + c]]);
      next[s] = signature_ids.try_emplace(std::move(sig), signature_ids.size()).first->second;
    }
    const std::size_t count = signature_ids.size();
    cls = std::move(next);
    if (count == num_classes) break;
    num_classes = count;
  }

  // Canonical numbering: BFS from the initial class, symbols in order.
  const std::size_t start = dfa.initial_states().front();
  std::vector<std::size_t> rep(num_classes, sink);
  for (std::size_t s = n + 1; s-- > 0;) rep[cls[s]] = s;
  std::vector<std::size_t> order(num_classes, static_cast<std::size_t>(-1));
  Fsa result(a.alphabet());
  std::deque<std::size_t> queue{cls[start]};
  order[cls[start]] = result.add_state();
  while (!queue.empty()) {
    const std::size_t c = queue.front();
    queue.pop_front();
    for (std::size_t col = 0; col < m; ++col) {
      const std::size_t t = cls[delta[rep[c] * m + col]];
      if (order[t] == static_cast<std::size_t>(-1)) {
        order[t] = result.add_state();
        queue.push_back(t);
      }
    }
  }
  for (std::size_t c = 0; c < num_classes; ++c) {
    if (order[c] == static_cast<std::size_t>(-1)) continue;
    const std::size_t r = rep[c];
    if (r < n && dfa.is_final(r)) result.set_final(order[c]);
    for (std::size_t col = 0; col < m; ++col)
      result.add_edge(order[c], order[cls[delta[r * m + col]]], sigma[col]);
  }
  result.set_initial(order[cls[start]]);
  return result;
}

bool equivalent(const Fsa& a, const Fsa& b) {
  std::vector<Symbol> sigma = a.symbols();
  const auto sb = b.symbols();
  sigma.insert(sigma.end(), sb.begin(), sb.end());
  const Fsa ma = minimize(a, sigma);
  const Fsa mb = minimize(b, sigma);
  if (ma.num_states() != mb.num_states()) return false;
  for (std::size_t s = 0; s < ma.num_states(); ++s)
    if (ma.is_final(s) != mb.is_final(s) || ma.is_initial(s) != mb.is_initial(s)) return false;
  auto table = [](const Fsa& f) {
    std::vector<std::tuple<std::size_t, Symbol, std::size_t>> t;
    for (const auto& e : f.edges()) t.emplace_back(e.src, e.symbol, e.dst);
    std::sort(t.begin(), t.end());
    return t;
  };
  return table(ma) == table(mb);
}

}  // namespace mixedsimplex
