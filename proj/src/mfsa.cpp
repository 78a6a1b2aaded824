#include "mixedsimplex/mfsa.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <string>

#include "mixedsimplex/error.hpp"

namespace mixedsimplex {
namespace {

using StateSet = std::vector<std::size_t>;
using Outgoing = std::vector<std::vector<std::size_t>>;

void require_same_alphabet(const Mfsa& a, const Mfsa& b) {
  if (a.K() != b.K()) throw Error(ErrorKind::AlphabetMismatch, "automata differ in K");
}

void require_boolean(const Mfsa& a, const char* op) {
  if (a.semiring() != Semiring::Boolean)
    throw Error(ErrorKind::NotDeterminizable,
                std::string(op) + " needs a Boolean automaton; weighted automata may not be "
                                  "determinizable");
}

StateSet closure(const Mfsa& a, const Outgoing& out, StateSet seed) {
  std::vector<bool> seen(a.num_states(), false);
  StateSet stack;
  for (std::size_t s : seed)
    if (!seen[s]) seen[s] = true, stack.push_back(s);
  StateSet result;
  while (!stack.empty()) {
    const std::size_t s = stack.back();
    stack.pop_back();
    result.push_back(s);
    for (std::size_t e : out[s]) {
      const auto& edge = a.edges()[e];
      if (edge.epsilon && edge.weight > 0.0 && !seen[edge.dst])
        seen[edge.dst] = true, stack.push_back(edge.dst);
    }
  }
  std::sort(result.begin(), result.end());
  return result;
}

StateSet initial_states(const Mfsa& a) {
  StateSet s;
  for (std::size_t i = 0; i < a.num_states(); ++i)
    if (a.is_initial(i)) s.push_back(i);
  return s;
}

// Copies b's states and edges into `into` after offset, without initial or
// final weights.
void append_edges(Mfsa& into, const Mfsa& b, std::size_t offset) {
  for (const auto& e : b.edges()) {
    if (e.epsilon)
      into.add_epsilon(e.src + offset, e.dst + offset, e.weight);
    else
      into.add_edge(e.src + offset, e.dst + offset, e.support, e.weight);
  }
}

// Epsilon-closure weights C = (I - E)^{-1}, E(s, t) = total epsilon weight.
Eigen::MatrixXd epsilon_closure_weights(const Mfsa& a) {
  const auto n = static_cast<Eigen::Index>(a.num_states());
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
  for (const auto& e : a.edges())
    if (e.epsilon) E(e.src, e.dst) += e.weight;
  if (n > 0 && E.eigenvalues().cwiseAbs().maxCoeff() >= 1.0)
    throw Error(ErrorKind::DivergentWeights, "epsilon cycles have unbounded total weight");
  return (Eigen::MatrixXd::Identity(n, n) - E).inverse();
}

Mfsa epsilon_removal_weighted(const Mfsa& a) {
  const Eigen::MatrixXd C = epsilon_closure_weights(a);
  const std::size_t n = a.num_states();
  Mfsa r(a.K(), Semiring::Probability);
  r.add_states(n);
  const auto out = a.outgoing();
  for (std::size_t s = 0; s < n; ++s) {
    if (a.initial_weight(s) > 0.0) r.set_initial(s, a.initial_weight(s));
    double rho = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const double c = C(s, t);
      if (c <= 0.0) continue;
      rho += c * a.final_weight(t);
      for (std::size_t e : out[t]) {
        const auto& edge = a.edges()[e];
        if (!edge.epsilon && edge.weight > 0.0) r.add_edge(s, edge.dst, edge.support, c * edge.weight);
      }
    }
    if (rho > 0.0) r.set_final(s, rho);
  }
  return r;
}

Mfsa epsilon_removal_boolean(const Mfsa& a) {
  const std::size_t n = a.num_states();
  const auto out = a.outgoing();
  Mfsa r(a.K(), Semiring::Boolean);
  r.add_states(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (a.is_initial(s)) r.set_initial(s);
    std::map<std::size_t, FaceSet> merged;
    bool final = false;
    for (std::size_t t : closure(a, out, {s})) {
      final = final || a.is_final(t);
      for (std::size_t e : out[t]) {
        const auto& edge = a.edges()[e];
        if (!edge.epsilon && edge.weight > 0.0)
          merged[edge.dst] = merged[edge.dst].unite(edge.support);
      }
    }
    if (final) r.set_final(s);
    for (auto& [dst, support] : merged) r.add_edge(s, dst, std::move(support));
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// MixedString

MixedString::MixedString(std::size_t K, std::vector<SimplexPoint> symbols)
    : K_(K), symbols_(std::move(symbols)) {
  if (K == 0) throw Error(ErrorKind::InvalidArgument, "alphabet must be non-empty");
  for (const auto& y : symbols_)
    if (y.size() != K) throw Error(ErrorKind::AlphabetMismatch, "mixed string symbols differ in K");
}

MixedString MixedString::pure(std::size_t K, const std::vector<std::size_t>& word) {
  std::vector<SimplexPoint> symbols;
  symbols.reserve(word.size());
  for (std::size_t k : word) symbols.push_back(SimplexPoint::vertex(K, k));
  return MixedString(K, std::move(symbols));
}

// ---------------------------------------------------------------------------
// Mfsa

Mfsa::Mfsa(std::size_t K, Semiring semiring) : K_(K), semiring_(semiring) {
  if (K == 0) throw Error(ErrorKind::InvalidArgument, "alphabet must be non-empty");
  if (K > automaton_k_cap())
    throw Error(ErrorKind::KTooLarge,
                "automata are capped at K = " + std::to_string(automaton_k_cap()));
}

std::size_t Mfsa::add_state() {
  initial_.push_back(0.0);
  final_.push_back(0.0);
  return initial_.size() - 1;
}

void Mfsa::add_states(std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) add_state();
}

void Mfsa::check_state(std::size_t s) const {
  if (s >= num_states()) throw Error(ErrorKind::InvalidArgument, "state index out of range");
}

void Mfsa::check_weight(double w) const {
  if (!std::isfinite(w) || w < 0.0)
    throw Error(ErrorKind::InvalidArgument, "weights must be finite and non-negative");
  if (semiring_ == Semiring::Boolean && w != 0.0 && w != 1.0)
    throw Error(ErrorKind::InvalidArgument, "Boolean automata take weights 0 or 1");
}

void Mfsa::set_initial(std::size_t s, double weight) {
  check_state(s);
  check_weight(weight);
  initial_[s] = weight;
}

void Mfsa::set_final(std::size_t s, double weight) {
  check_state(s);
  check_weight(weight);
  final_[s] = weight;
}

void Mfsa::add_edge(std::size_t src, std::size_t dst, FaceSet support, double weight) {
  check_state(src);
  check_state(dst);
  check_weight(weight);
  if (support.empty()) return;
  if (std::any_of(support.begin(), support.end(), [&](Face f) { return f.min_alphabet() > K_; }))
    throw Error(ErrorKind::AlphabetMismatch, "edge support does not fit in the alphabet");
  edges_.push_back({src, dst, std::move(support), weight, false});
}

void Mfsa::add_epsilon(std::size_t src, std::size_t dst, double weight) {
  check_state(src);
  check_state(dst);
  check_weight(weight);
  edges_.push_back({src, dst, FaceSet{}, weight, true});
}

bool Mfsa::has_epsilon() const noexcept {
  return std::any_of(edges_.begin(), edges_.end(), [](const MfsaEdge& e) { return e.epsilon; });
}

std::vector<std::vector<std::size_t>> Mfsa::outgoing() const {
  std::vector<std::vector<std::size_t>> out(num_states());
  for (std::size_t i = 0; i < edges_.size(); ++i) out[edges_[i].src].push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Structure checks

bool is_deterministic(const Mfsa& a) {
  if (initial_states(a).size() != 1 || a.has_epsilon()) return false;
  const auto out = a.outgoing();
  for (const auto& edges : out) {
    FaceSet seen;
    for (std::size_t e : edges) {
      const auto& support = a.edges()[e].support;
      if (!seen.disjoint_with(support)) return false;
      seen = seen.unite(support);
    }
  }
  return true;
}

bool is_complete(const Mfsa& a) {
  if (!is_deterministic(a)) return false;
  const auto total = (FaceMask{1} << a.K()) - 1;
  for (const auto& edges : a.outgoing()) {
    std::size_t covered = 0;
    for (std::size_t e : edges) covered += a.edges()[e].support.size();
    if (covered != total) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Evaluation

bool accepts(const Mfsa& a, const MixedString& x, double tol) {
  if (x.K() != a.K()) throw Error(ErrorKind::AlphabetMismatch, "string and automaton differ in K");
  const auto out = a.outgoing();
  StateSet current = closure(a, out, initial_states(a));
  for (const auto& y : x.symbols()) {
    const Face f = face_of(y, tol);
    StateSet next;
    for (std::size_t s : current)
      for (std::size_t e : out[s]) {
        const auto& edge = a.edges()[e];
        if (!edge.epsilon && edge.weight > 0.0 && edge.support.contains(f)) next.push_back(edge.dst);
      }
    if (next.empty()) return false;
    current = closure(a, out, std::move(next));
  }
  return std::any_of(current.begin(), current.end(), [&](std::size_t s) { return a.is_final(s); });
}

double string_weight(const Mfsa& a, const MixedString& x, double tol) {
  if (x.K() != a.K()) throw Error(ErrorKind::AlphabetMismatch, "string and automaton differ in K");
  const Mfsa r = a.has_epsilon() ? epsilon_removal_weighted(a) : a;
  const std::size_t n = r.num_states();
  std::vector<double> density(r.edges().size());
  for (std::size_t i = 0; i < r.edges().size(); ++i)
    density[i] = 1.0 / measure(r.edges()[i].support);
  std::vector<double> forward(n);
  for (std::size_t s = 0; s < n; ++s) forward[s] = r.initial_weight(s);
  for (const auto& y : x.symbols()) {
    const Face f = face_of(y, tol);
    std::vector<double> next(n, 0.0);
    for (std::size_t i = 0; i < r.edges().size(); ++i) {
      const auto& e = r.edges()[i];
      if (forward[e.src] != 0.0 && e.support.contains(f))
        next[e.dst] += forward[e.src] * e.weight * density[i];
    }
    forward = std::move(next);
  }
  double total = 0.0;
  for (std::size_t s = 0; s < n; ++s) total += forward[s] * r.final_weight(s);
  return total;
}

// ---------------------------------------------------------------------------
// Determinization and closure operations

Mfsa determinize(const Mfsa& a) {
  require_boolean(a, "determinize");
  const auto out = a.outgoing();
  Mfsa d(a.K(), Semiring::Boolean);
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
  d.set_initial(intern(closure(a, out, initial_states(a))));
  while (!queue.empty()) {
    const StateSet current = std::move(queue.front());
    queue.pop_front();
    const std::size_t from = ids.at(current);
    // Successor of every face atom read from this subset.
    std::map<Face, StateSet> succ;
    for (std::size_t s : current)
      for (std::size_t e : out[s]) {
        const auto& edge = a.edges()[e];
        if (edge.epsilon || edge.weight <= 0.0) continue;
        for (Face f : edge.support) succ[f].push_back(edge.dst);
      }
    // Atoms with the same successor subset share one edge.
    std::map<StateSet, std::vector<Face>> groups;
    for (auto& [f, targets] : succ) groups[closure(a, out, std::move(targets))].push_back(f);
    for (auto& [target, faces] : groups) {
      const std::size_t to = intern(target);
      d.add_edge(from, to, FaceSet(std::move(faces)));
    }
  }
  return d;
}

Mfsa complete(const Mfsa& a) {
  Mfsa d = is_deterministic(a) && a.semiring() == Semiring::Boolean ? a : determinize(a);
  const auto out = d.outgoing();
  std::vector<FaceSet> missing(d.num_states());
  bool needs_sink = false;
  for (std::size_t s = 0; s < d.num_states(); ++s) {
    FaceSet covered;
    for (std::size_t e : out[s]) covered = covered.unite(d.edges()[e].support);
    missing[s] = covered.complement(d.K());
    needs_sink = needs_sink || !missing[s].empty();
  }
  if (!needs_sink) return d;
  const std::size_t sink = d.add_state();
  for (std::size_t s = 0; s + 1 < d.num_states(); ++s)
    if (!missing[s].empty()) d.add_edge(s, sink, std::move(missing[s]));
  d.add_edge(sink, sink, FaceSet::all(d.K()));
  return d;
}

Mfsa complement(const Mfsa& a) {
  const Mfsa c = complete(a);
  Mfsa r(c.K(), Semiring::Boolean);
  r.add_states(c.num_states());
  for (std::size_t s = 0; s < c.num_states(); ++s) {
    if (c.is_initial(s)) r.set_initial(s);
    if (!c.is_final(s)) r.set_final(s);
  }
  append_edges(r, c, 0);
  return r;
}

Mfsa unite(const Mfsa& a, const Mfsa& b) {
  require_same_alphabet(a, b);
  require_boolean(a, "union");
  require_boolean(b, "union");
  Mfsa u(a.K(), Semiring::Boolean);
  u.add_states(a.num_states() + b.num_states());
  const std::size_t off = a.num_states();
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    if (a.is_initial(s)) u.set_initial(s);
    if (a.is_final(s)) u.set_final(s);
  }
  for (std::size_t s = 0; s < b.num_states(); ++s) {
    if (b.is_initial(s)) u.set_initial(s + off);
    if (b.is_final(s)) u.set_final(s + off);
  }
  append_edges(u, a, 0);
  append_edges(u, b, off);
  return determinize(u);
}

Mfsa intersect(const Mfsa& a, const Mfsa& b) {
  require_same_alphabet(a, b);
  require_boolean(a, "intersection");
  require_boolean(b, "intersection");
  const Mfsa ra = epsilon_removal(a);
  const Mfsa rb = epsilon_removal(b);
  const auto out_a = ra.outgoing();
  const auto out_b = rb.outgoing();
  Mfsa p(a.K(), Semiring::Boolean);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> ids;
  std::deque<std::pair<std::size_t, std::size_t>> queue;
  auto intern = [&](std::size_t s, std::size_t t) {
    auto [it, inserted] = ids.try_emplace({s, t}, 0);
    if (inserted) {
      it->second = p.add_state();
      if (ra.is_final(s) && rb.is_final(t)) p.set_final(it->second);
      queue.emplace_back(s, t);
    }
    return it->second;
  };
  for (std::size_t s : initial_states(ra))
    for (std::size_t t : initial_states(rb)) p.set_initial(intern(s, t));
  while (!queue.empty()) {
    const auto [s, t] = queue.front();
    queue.pop_front();
    const std::size_t from = ids.at({s, t});
    for (std::size_t ea : out_a[s]) {
      const auto& x = ra.edges()[ea];
      if (x.weight <= 0.0) continue;
      for (std::size_t eb : out_b[t]) {
        const auto& y = rb.edges()[eb];
        if (y.weight <= 0.0) continue;
        FaceSet both = x.support.intersect(y.support);
        if (both.empty()) continue;
        const std::size_t to = intern(x.dst, y.dst);
        p.add_edge(from, to, std::move(both));
      }
    }
  }
  return p;
}

Mfsa concatenate(const Mfsa& a, const Mfsa& b) {
  require_same_alphabet(a, b);
  require_boolean(a, "concatenation");
  require_boolean(b, "concatenation");
  Mfsa c(a.K(), Semiring::Boolean);
  c.add_states(a.num_states() + b.num_states());
  const std::size_t off = a.num_states();
  for (std::size_t s = 0; s < a.num_states(); ++s)
    if (a.is_initial(s)) c.set_initial(s);
  for (std::size_t s = 0; s < b.num_states(); ++s)
    if (b.is_final(s)) c.set_final(s + off);
  append_edges(c, a, 0);
  append_edges(c, b, off);
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    if (!a.is_final(s)) continue;
    for (std::size_t t = 0; t < b.num_states(); ++t)
      if (b.is_initial(t)) c.add_epsilon(s, t + off);
  }
  return determinize(epsilon_removal(c));
}

Mfsa epsilon_removal(const Mfsa& a) {
  if (!a.has_epsilon()) return a;
  return a.semiring() == Semiring::Boolean ? epsilon_removal_boolean(a)
                                           : epsilon_removal_weighted(a);
}

Mfsa weight_push(const Mfsa& a) {
  const std::size_t n = a.num_states();
  // Co-accessibility: every state must reach a final state.
  std::vector<std::vector<std::size_t>> incoming(n);
  for (const auto& e : a.edges())
    if (e.weight > 0.0) incoming[e.dst].push_back(e.src);
  std::vector<bool> coaccessible(n, false);
  std::vector<std::size_t> stack;
  for (std::size_t s = 0; s < n; ++s)
    if (a.is_final(s)) coaccessible[s] = true, stack.push_back(s);
  while (!stack.empty()) {
    const std::size_t s = stack.back();
    stack.pop_back();
    for (std::size_t t : incoming[s])
      if (!coaccessible[t]) coaccessible[t] = true, stack.push_back(t);
  }
  for (std::size_t s = 0; s < n; ++s)
    if (!coaccessible[s])
      throw Error(ErrorKind::NotTrim, "state " + std::to_string(s) + " cannot reach a final state");

  // Each edge density integrates to one, so the total suffix mass V solves
  // V = rho + W V with W(s, t) the summed edge weights.
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(N, N);
  Eigen::VectorXd rho(N);
  for (std::size_t s = 0; s < n; ++s) rho(s) = a.final_weight(s);
  for (const auto& e : a.edges()) W(e.src, e.dst) += e.weight;
  if (N > 0 && W.eigenvalues().cwiseAbs().maxCoeff() >= 1.0)
    throw Error(ErrorKind::DivergentWeights, "total automaton mass is unbounded");
  const Eigen::VectorXd V = (Eigen::MatrixXd::Identity(N, N) - W).partialPivLu().solve(rho);

  Mfsa r(a.K(), Semiring::Probability);
  r.add_states(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (a.initial_weight(s) > 0.0) r.set_initial(s, a.initial_weight(s) * V(s));
    if (a.final_weight(s) > 0.0) r.set_final(s, a.final_weight(s) / V(s));
  }
  for (const auto& e : a.edges()) {
    const double w = e.weight * V(e.dst) / V(e.src);
    if (e.epsilon)
      r.add_epsilon(e.src, e.dst, w);
    else
      r.add_edge(e.src, e.dst, e.support, w);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Skeleton and projection

std::vector<Face> skeleton_string(const MixedString& x, double tol) {
  std::vector<Face> out;
  out.reserve(x.size());
  for (const auto& y : x.symbols()) out.push_back(face_of(y, tol));
  return out;
}

namespace {

Fsa relabel(const Mfsa& a, Fsa::Alphabet alphabet) {
  Fsa f(alphabet);
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    f.add_state();
    if (a.is_initial(s)) f.set_initial(s);
    if (a.is_final(s)) f.set_final(s);
  }
  for (const auto& e : a.edges()) {
    if (e.weight <= 0.0) continue;
    if (e.epsilon) {
      f.add_epsilon(e.src, e.dst);
    } else if (alphabet == Fsa::Alphabet::Faces) {
      for (Face face : e.support) f.add_edge(e.src, e.dst, face.mask());
    } else {
      for (std::size_t k : Face(e.support.symbol_mask()).indices()) f.add_edge(e.src, e.dst, k);
    }
  }
  return f;
}

}  // namespace

Fsa skeleton_automaton(const Mfsa& a) { return determinize(relabel(a, Fsa::Alphabet::Faces)); }

std::vector<std::vector<std::size_t>> projection_string(const MixedString& x, double tol) {
  std::vector<std::vector<std::size_t>> choices;
  double count = 1.0;
  for (const auto& f : skeleton_string(x, tol)) {
    choices.push_back(f.indices());
    count *= static_cast<double>(f.size());
  }
  if (count > static_cast<double>(kMaxProjections))
    throw Error(ErrorKind::TooManyProjections, "more than 10^6 projections");
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> word(choices.size());
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == choices.size()) {
      out.push_back(word);
      return;
    }
    for (std::size_t k : choices[i]) {
      word[i] = k;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

Fsa projection_automaton(const Mfsa& a) { return determinize(relabel(a, Fsa::Alphabet::Symbols)); }

Mfsa embed(const Fsa& f, std::size_t K) {
  Mfsa m(K, Semiring::Boolean);
  m.add_states(f.num_states());
  for (std::size_t s = 0; s < f.num_states(); ++s) {
    if (f.is_initial(s)) m.set_initial(s);
    if (f.is_final(s)) m.set_final(s);
  }
  for (const auto& e : f.edges()) {
    if (e.epsilon)
      m.add_epsilon(e.src, e.dst);
    else
      m.add_edge(e.src, e.dst, FaceSet::single(Face::vertex(e.symbol)));
  }
  return m;
}

bool equivalent(const Mfsa& a, const Mfsa& b) {
  require_same_alphabet(a, b);
  return equivalent(skeleton_automaton(a), skeleton_automaton(b));
}

}  // namespace mixedsimplex
