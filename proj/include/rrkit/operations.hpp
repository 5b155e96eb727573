// Copyright 2026 The rrkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Language-level operations on Dfa/Nfa: subset construction, trimming,
// products, shortest witnesses, inclusion and equivalence, SCC condensation.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rrkit/automaton.hpp"
#include "rrkit/core.hpp"

namespace rrkit {

/// Subset construction over epsilon-closed reachable subsets. The empty subset
/// is never materialized, so the result is partial. States come out in BFS
/// discovery order.
inline Dfa determinize(const Nfa& n) {
  Dfa out(n.alphabet, 0);
  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  auto intern = [&](std::vector<int> set) {
    auto [it, fresh] = ids.emplace(set, static_cast<int>(subsets.size()));
    if (fresh) {
      bool acc = std::any_of(set.begin(), set.end(),
                             [&](int q) { return n.accepting[q]; });
      out.add_state(acc);
      subsets.push_back(std::move(set));
    }
    return it->second;
  };
  intern(epsilon_closure(n, n.initial));
  out.initial = 0;
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    for (std::size_t i = 0; i < n.alphabet.size(); ++i) {
      auto target = epsilon_closure(n, post(n, subsets[k], static_cast<int>(i)));
      if (target.empty()) continue;
      int id = intern(std::move(target));
      out.next[k][i] = id;
    }
  }
  return out;
}

inline Dfa determinize(const Dfa& a) { return a; }

namespace detail {

inline std::vector<bool> forward_reachable(const Dfa& a) {
  std::vector<bool> seen(a.num_states(), false);
  std::vector<int> stack{a.initial};
  seen[a.initial] = true;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int t : a.next[q]) {
      if (t != kNoState && !seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

inline std::vector<bool> coreachable(const Dfa& a) {
  std::vector<std::vector<int>> back(a.num_states());
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    for (int t : a.next[q]) {
      if (t != kNoState) back[t].push_back(static_cast<int>(q));
    }
  }
  std::vector<bool> seen(a.num_states(), false);
  std::vector<int> stack;
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    if (a.accepting[q]) {
      seen[q] = true;
      stack.push_back(static_cast<int>(q));
    }
  }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int p : back[q]) {
      if (!seen[p]) {
        seen[p] = true;
        stack.push_back(p);
      }
    }
  }
  return seen;
}

}  // namespace detail

/// Keeps exactly the states that are reachable and co-reachable. An empty
/// language yields the canonical empty automaton.
inline Dfa trim(const Dfa& a) {
  auto reach = detail::forward_reachable(a);
  auto coreach = detail::coreachable(a);
  if (!(reach[a.initial] && coreach[a.initial])) return empty_dfa(a.alphabet);

  std::vector<int> renamed(a.num_states(), kNoState);
  Dfa out(a.alphabet, 0);
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    if (reach[q] && coreach[q]) renamed[q] = out.add_state(a.accepting[q]);
  }
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    if (renamed[q] == kNoState) continue;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      int t = a.next[q][i];
      if (t != kNoState && renamed[t] != kNoState) out.next[renamed[q]][i] = renamed[t];
    }
  }
  out.initial = renamed[a.initial];
  return canonicalize(out);
}

/// Trims, then merges equivalent states by partition refinement. A missing
/// transition is its own class, which is sound because trimmed states are
/// all live.
inline Dfa minimize(const Dfa& a) {
  Dfa t = trim(a);
  const std::size_t n = t.num_states();
  std::vector<int> block(n);
  for (std::size_t q = 0; q < n; ++q) block[q] = t.accepting[q] ? 1 : 0;
  std::size_t count = 0;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next_block(n);
    for (std::size_t q = 0; q < n; ++q) {
      std::vector<int> signature{block[q]};
      for (int s : t.next[q]) signature.push_back(s == kNoState ? -1 : block[s]);
      next_block[q] = ids.emplace(std::move(signature), static_cast<int>(ids.size())).first->second;
    }
    block = std::move(next_block);
    if (ids.size() == count) break;
    count = ids.size();
  }
  Dfa out(t.alphabet, count);
  out.initial = block[t.initial];
  for (std::size_t q = 0; q < n; ++q) {
    out.accepting[block[q]] = t.accepting[q];
    for (std::size_t i = 0; i < t.alphabet.size(); ++i) {
      int s = t.next[q][i];
      out.next[block[q]][i] = s == kNoState ? kNoState : block[s];
    }
  }
  return canonicalize(out);
}

/// Intersection over reachable state pairs. The second operand is reordered
/// onto the first's alphabet; the symbol sets must agree.
inline Nfa product_intersect(const Nfa& a, const Nfa& b_in) {
  if (!a.alphabet.same_symbols(b_in.alphabet)) {
    throw AlphabetError("product over different alphabets '" + a.alphabet.symbols() +
                        "' and '" + b_in.alphabet.symbols() + "'");
  }
  Nfa b = widen(b_in, a.alphabet);
  Nfa out(a.alphabet);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    auto [it, fresh] = ids.emplace(std::pair{p, q}, static_cast<int>(pairs.size()));
    if (fresh) {
      out.add_state(a.accepting[p] && b.accepting[q]);
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  auto ia = a.initial, ib = b.initial;
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  for (int p : ia) {
    for (int q : ib) out.initial.push_back(intern(p, q));
  }
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [p, q] = pairs[k];
    std::vector<NfaEdge> moves;
    for (const auto& e : a.edges[p]) {
      if (e.symbol == kEpsilon) {
        moves.push_back({kEpsilon, intern(e.target, q)});
        continue;
      }
      for (const auto& f : b.edges[q]) {
        if (f.symbol == e.symbol) moves.push_back({e.symbol, intern(e.target, f.target)});
      }
    }
    for (const auto& f : b.edges[q]) {
      if (f.symbol == kEpsilon) moves.push_back({kEpsilon, intern(p, f.target)});
    }
    out.edges[k] = std::move(moves);
  }
  return out;
}

/// Deterministic product; partial wherever either side is.
inline Dfa product_intersect(const Dfa& a, const Dfa& b_in) {
  if (!a.alphabet.same_symbols(b_in.alphabet)) {
    throw AlphabetError("product over different alphabets '" + a.alphabet.symbols() +
                        "' and '" + b_in.alphabet.symbols() + "'");
  }
  Dfa b = widen(b_in, a.alphabet);
  Dfa out(a.alphabet, 0);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    auto [it, fresh] = ids.emplace(std::pair{p, q}, static_cast<int>(pairs.size()));
    if (fresh) {
      out.add_state(a.accepting[p] && b.accepting[q]);
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  out.initial = intern(a.initial, b.initial);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [p, q] = pairs[k];
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      int tp = a.next[p][i], tq = b.next[q][i];
      if (tp != kNoState && tq != kNoState) out.next[k][i] = intern(tp, tq);
    }
  }
  return out;
}

/// Shortest accepted word, least in alphabet order among the shortest.
///
/// Distances to acceptance are computed backwards (epsilon moves cost 0,
/// symbols cost 1); the word is then read off greedily, always taking the
/// smallest symbol that keeps some state on a shortest completion.
inline std::optional<Word> shortest_word(const Nfa& n) {
  constexpr int kInf = std::numeric_limits<int>::max();
  const std::size_t size = n.num_states();
  std::vector<std::vector<NfaEdge>> back(size);
  for (std::size_t q = 0; q < size; ++q) {
    for (const auto& e : n.edges[q]) back[e.target].push_back({e.symbol, static_cast<int>(q)});
  }
  std::vector<int> dist(size, kInf);
  std::deque<int> queue;
  for (std::size_t q = 0; q < size; ++q) {
    if (n.accepting[q]) {
      dist[q] = 0;
      queue.push_back(static_cast<int>(q));
    }
  }
  while (!queue.empty()) {  // 0-1 BFS
    int q = queue.front();
    queue.pop_front();
    for (const auto& e : back[q]) {
      int w = e.symbol == kEpsilon ? 0 : 1;
      if (dist[q] + w < dist[e.target]) {
        dist[e.target] = dist[q] + w;
        if (w == 0) {
          queue.push_front(e.target);
        } else {
          queue.push_back(e.target);
        }
      }
    }
  }

  auto current = epsilon_closure(n, n.initial);
  int remaining = kInf;
  for (int q : current) remaining = std::min(remaining, dist[q]);
  if (remaining == kInf) return std::nullopt;

  auto at_distance = [&](const std::vector<int>& set, int d) {
    std::vector<int> out;
    for (int q : set) {
      if (dist[q] == d) out.push_back(q);
    }
    return out;
  };
  current = at_distance(current, remaining);
  Word word;
  while (remaining > 0) {
    bool advanced = false;
    for (std::size_t i = 0; i < n.alphabet.size() && !advanced; ++i) {
      auto next = at_distance(
          epsilon_closure(n, post(n, current, static_cast<int>(i))), remaining - 1);
      if (!next.empty()) {
        word.push_back(n.alphabet[i]);
        current = std::move(next);
        --remaining;
        advanced = true;
      }
    }
    if (!advanced) throw VerificationError("shortest_word: lost the shortest path");
  }
  return word;
}

inline std::optional<Word> shortest_word(const Dfa& a) { return shortest_word(to_nfa(a)); }

inline bool is_empty(const Nfa& n) { return !shortest_word(n).has_value(); }
inline bool is_empty(const Dfa& a) { return !detail::coreachable(a)[a.initial]; }

/// Complement over the automaton's own alphabet; a sink completes the
/// transition function when needed.
inline Dfa complement(const Dfa& a) {
  Dfa out = a;
  int sink = kNoState;
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    for (auto& t : out.next[q]) {
      if (t == kNoState) {
        if (sink == kNoState) sink = static_cast<int>(out.num_states());
        t = sink;
      }
    }
  }
  if (sink != kNoState) {
    out.add_state(false);
    for (auto& t : out.next[sink]) t = sink;
  }
  for (std::size_t q = 0; q < out.num_states(); ++q) out.accepting[q] = !out.accepting[q];
  return out;
}

inline Dfa complement(const Dfa& a, const Alphabet& sigma) {
  return complement(widen(a, sigma));
}

struct InclusionResult {
  bool included = true;
  std::optional<Word> counterexample;  // in the smaller language, not the larger

  explicit operator bool() const noexcept { return included; }
};

/// Checks L(b) ⊆ L(a) over the union of both alphabets.
inline InclusionResult includes(const Dfa& a, const Nfa& b) {
  Alphabet sigma = unite(a.alphabet, b.alphabet);
  auto outside = to_nfa(complement(a, sigma));
  auto witness = shortest_word(product_intersect(widen(b, sigma), outside));
  if (!witness) return {};
  return {false, witness};
}

inline InclusionResult includes(const Dfa& a, const Dfa& b) { return includes(a, to_nfa(b)); }

struct EquivalenceResult {
  bool equivalent = true;
  std::optional<Word> separator;
  // Which operand accepts the separator: 0 for the first, 1 for the second.
  int accepted_by = -1;

  explicit operator bool() const noexcept { return equivalent; }
};

/// Language equality; on failure, the separator is the shortlex-least word
/// in the symmetric difference.
inline EquivalenceResult equivalent(const Nfa& a, const Nfa& b) {
  Alphabet sigma = unite(a.alphabet, b.alphabet);
  Dfa da = determinize(widen(a, sigma));
  Dfa db = determinize(widen(b, sigma));
  auto only_b = includes(da, to_nfa(db));
  auto only_a = includes(db, to_nfa(da));
  if (only_a && only_b) return {};
  if (only_a.included) return {false, only_b.counterexample, 1};
  if (only_b.included) return {false, only_a.counterexample, 0};
  if (shortlex_less(sigma, *only_b.counterexample, *only_a.counterexample)) {
    return {false, only_b.counterexample, 1};
  }
  return {false, only_a.counterexample, 0};
}

inline EquivalenceResult equivalent(const Dfa& a, const Dfa& b) {
  return equivalent(to_nfa(a), to_nfa(b));
}
inline EquivalenceResult equivalent(const Dfa& a, const Nfa& b) {
  return equivalent(to_nfa(a), b);
}
inline EquivalenceResult equivalent(const Nfa& a, const Dfa& b) {
  return equivalent(a, to_nfa(b));
}

/// Strongly connected components of a Dfa's transition graph.
struct Condensation {
  // Component index per state. Components are numbered in topological order
  // of the DAG: every DAG edge goes from a lower to a higher index.
  std::vector<int> component;
  std::size_t count = 0;
  // One entry per automaton transition that crosses components.
  std::vector<std::pair<int, int>> dag_edges;
  // True iff the component contains a transition within itself.
  std::vector<bool> nontrivial;
};

inline Condensation condense(const Dfa& a) {
  const int n = static_cast<int>(a.num_states());
  std::vector<int> index(n, -1), low(n, 0), tarjan_comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int counter = 0, found = 0;

  // Iterative Tarjan; frame = (state, next symbol to explore).
  std::vector<std::pair<int, std::size_t>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    frames.emplace_back(root, 0);
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [q, i] = frames.back();
      if (i < a.alphabet.size()) {
        int t = a.next[q][i++];
        if (t == kNoState) continue;
        if (index[t] == -1) {
          index[t] = low[t] = counter++;
          stack.push_back(t);
          on_stack[t] = true;
          frames.emplace_back(t, 0);
        } else if (on_stack[t]) {
          low[q] = std::min(low[q], index[t]);
        }
        continue;
      }
      int done = q;
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[done]);
      }
      if (low[done] == index[done]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          tarjan_comp[w] = found;
        } while (w != done);
        ++found;
      }
    }
  }

  Condensation c;
  c.count = static_cast<std::size_t>(found);
  c.component.resize(n);
  // Tarjan emits components in reverse topological order.
  for (int q = 0; q < n; ++q) c.component[q] = found - 1 - tarjan_comp[q];
  c.nontrivial.assign(c.count, false);
  for (int q = 0; q < n; ++q) {
    for (int t : a.next[q]) {
      if (t == kNoState) continue;
      if (c.component[q] == c.component[t]) {
        c.nontrivial[c.component[q]] = true;
      } else {
        c.dag_edges.emplace_back(c.component[q], c.component[t]);
      }
    }
  }
  return c;
}

/// Shortlex-least word leading from `from` to a state satisfying `goal`, or
/// nullopt. `allowed` restricts the states the path may enter (nullptr: all).
template <typename Goal>
std::optional<Word> shortest_path_word(const Dfa& a, int from, Goal goal,
                                       const std::vector<bool>* allowed = nullptr) {
  std::vector<int> parent(a.num_states(), kNoState);
  std::vector<char> via(a.num_states(), 0);
  std::vector<bool> seen(a.num_states(), false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    if (goal(q)) {
      Word w;
      for (int s = q; s != from; s = parent[s]) w.push_back(via[s]);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      int t = a.next[q][i];
      if (t == kNoState || seen[t] || (allowed && !(*allowed)[t])) continue;
      seen[t] = true;
      parent[t] = q;
      via[t] = a.alphabet[i];
      queue.push_back(t);
    }
  }
  return std::nullopt;
}

}  // namespace rrkit
