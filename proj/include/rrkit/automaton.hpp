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

#include <algorithm>
#include <compare>
#include <cstddef>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "rrkit/core.hpp"

namespace rrkit {

/// Deterministic automaton with a possibly partial transition function.
///
/// States are dense integers `0 .. num_states()-1`; `next[q][i]` is the
/// successor of `q` on `alphabet[i]`, or `kNoState`.
struct Dfa {
  Alphabet alphabet;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<int>> next;

  Dfa() = default;
  explicit Dfa(Alphabet sigma, std::size_t states = 1)
      : alphabet(std::move(sigma)) {
    for (std::size_t i = 0; i < states; ++i) add_state();
  }

  std::size_t num_states() const noexcept { return accepting.size(); }

  int add_state(bool accept = false) {
    accepting.push_back(accept);
    next.emplace_back(alphabet.size(), kNoState);
    return static_cast<int>(accepting.size()) - 1;
  }

  void set(int from, char symbol, int to) {
    int i = alphabet.index(symbol);
    if (i < 0) throw AlphabetError(std::string("symbol '") + symbol + "' not in alphabet");
    next[from][i] = to;
  }

  int step(int q, char symbol) const noexcept {
    if (q == kNoState) return kNoState;
    int i = alphabet.index(symbol);
    return i < 0 ? kNoState : next[q][i];
  }

  // State reached from `q` on `w`; kNoState if the run falls off.
  int walk(int q, const Word& w) const noexcept {
    for (char c : w) q = step(q, c);
    return q;
  }

  bool is_accepting(int q) const noexcept {
    return q != kNoState && accepting[q];
  }
};

inline constexpr int kEpsilon = -1;

struct NfaEdge {
  int symbol;  // alphabet index or kEpsilon
  int target;

  auto operator<=>(const NfaEdge&) const = default;
};

/// Nondeterministic automaton with epsilon moves and a set of initial states.
struct Nfa {
  Alphabet alphabet;
  std::vector<int> initial;
  std::vector<bool> accepting;
  std::vector<std::vector<NfaEdge>> edges;

  Nfa() = default;
  explicit Nfa(Alphabet sigma, std::size_t states = 0) : alphabet(std::move(sigma)) {
    for (std::size_t i = 0; i < states; ++i) add_state();
  }

  std::size_t num_states() const noexcept { return accepting.size(); }

  int add_state(bool accept = false) {
    accepting.push_back(accept);
    edges.emplace_back();
    return static_cast<int>(accepting.size()) - 1;
  }

  void add_edge(int from, char symbol, int to) {
    int i = alphabet.index(symbol);
    if (i < 0) throw AlphabetError(std::string("symbol '") + symbol + "' not in alphabet");
    edges[from].push_back({i, to});
  }
  void add_epsilon(int from, int to) { edges[from].push_back({kEpsilon, to}); }
};

/// Sorted epsilon-closure of `states`.
inline std::vector<int> epsilon_closure(const Nfa& n, std::vector<int> states) {
  std::vector<bool> in(n.num_states(), false);
  std::vector<int> stack;
  for (int q : states) {
    if (!in[q]) {
      in[q] = true;
      stack.push_back(q);
    }
  }
  std::vector<int> out;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    out.push_back(q);
    for (const auto& e : n.edges[q]) {
      if (e.symbol == kEpsilon && !in[e.target]) {
        in[e.target] = true;
        stack.push_back(e.target);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Symbol-successors of a state set (not closed).
inline std::vector<int> post(const Nfa& n, const std::vector<int>& states, int symbol) {
  std::vector<int> out;
  for (int q : states) {
    for (const auto& e : n.edges[q]) {
      if (e.symbol == symbol) out.push_back(e.target);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool run(const Dfa& a, const Word& w) {
  int q = a.initial;
  for (char c : w) {
    int i = a.alphabet.index(c);
    if (i < 0) throw AlphabetError(std::string("symbol '") + c + "' not in alphabet");
    q = a.next[q][i];
    if (q == kNoState) return false;
  }
  return a.accepting[q];
}

inline bool run_nfa(const Nfa& n, const Word& w) {
  auto current = epsilon_closure(n, n.initial);
  for (char c : w) {
    int i = n.alphabet.index(c);
    if (i < 0) throw AlphabetError(std::string("symbol '") + c + "' not in alphabet");
    current = epsilon_closure(n, post(n, current, i));
    if (current.empty()) return false;
  }
  return std::any_of(current.begin(), current.end(),
                     [&](int q) { return n.accepting[q]; });
}

inline Nfa to_nfa(const Dfa& a) {
  Nfa n(a.alphabet, a.num_states());
  n.initial = {a.initial};
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    n.accepting[q] = a.accepting[q];
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      if (a.next[q][i] != kNoState) {
        n.edges[q].push_back({static_cast<int>(i), a.next[q][i]});
      }
    }
  }
  return n;
}

/// Re-expresses `a` over `sigma`, which must contain every symbol of `a`.
/// New symbols get no transitions.
inline Dfa widen(const Dfa& a, const Alphabet& sigma) {
  if (!a.alphabet.subset_of(sigma)) {
    throw AlphabetError("cannot widen '" + a.alphabet.symbols() + "' to '" +
                        sigma.symbols() + "'");
  }
  if (a.alphabet == sigma) return a;
  Dfa out(sigma, a.num_states());
  out.initial = a.initial;
  out.accepting = a.accepting;
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      out.next[q][sigma.index(a.alphabet[i])] = a.next[q][i];
    }
  }
  return out;
}

inline Nfa widen(const Nfa& n, const Alphabet& sigma) {
  if (!n.alphabet.subset_of(sigma)) {
    throw AlphabetError("cannot widen '" + n.alphabet.symbols() + "' to '" +
                        sigma.symbols() + "'");
  }
  if (n.alphabet == sigma) return n;
  Nfa out = n;
  out.alphabet = sigma;
  for (auto& list : out.edges) {
    for (auto& e : list) {
      if (e.symbol != kEpsilon) e.symbol = sigma.index(n.alphabet[e.symbol]);
    }
  }
  return out;
}

/// Renumbers states in breadth-first discovery order from the initial state,
/// visiting symbols in alphabet order. Unreachable states keep their relative
/// order after the reachable ones.
inline Dfa canonicalize(const Dfa& a) {
  const std::size_t n = a.num_states();
  std::vector<int> order;
  std::vector<int> renamed(n, kNoState);
  std::deque<int> queue{a.initial};
  renamed[a.initial] = 0;
  order.push_back(a.initial);
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (int t : a.next[q]) {
      if (t != kNoState && renamed[t] == kNoState) {
        renamed[t] = static_cast<int>(order.size());
        order.push_back(t);
        queue.push_back(t);
      }
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (renamed[q] == kNoState) {
      renamed[q] = static_cast<int>(order.size());
      order.push_back(static_cast<int>(q));
    }
  }
  Dfa out(a.alphabet, n);
  out.initial = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int q = order[i];
    out.accepting[i] = a.accepting[q];
    for (std::size_t s = 0; s < a.alphabet.size(); ++s) {
      int t = a.next[q][s];
      out.next[i][s] = t == kNoState ? kNoState : renamed[t];
    }
  }
  return out;
}

/// Sorts and deduplicates edges, then renumbers states breadth-first from the
/// initial states (epsilon edges first, then symbols in alphabet order).
inline Nfa canonicalize(const Nfa& a) {
  const std::size_t n = a.num_states();
  auto sorted_edges = a.edges;
  for (auto& list : sorted_edges) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  auto initial = a.initial;
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());

  std::vector<int> order;
  std::vector<int> renamed(n, kNoState);
  std::deque<int> queue;
  for (int q : initial) {
    renamed[q] = static_cast<int>(order.size());
    order.push_back(q);
    queue.push_back(q);
  }
  while (!queue.empty()) {
    int q = queue.front();
    queue.pop_front();
    for (const auto& e : sorted_edges[q]) {
      if (renamed[e.target] == kNoState) {
        renamed[e.target] = static_cast<int>(order.size());
        order.push_back(e.target);
        queue.push_back(e.target);
      }
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (renamed[q] == kNoState) {
      renamed[q] = static_cast<int>(order.size());
      order.push_back(static_cast<int>(q));
    }
  }
  Nfa out(a.alphabet, n);
  for (int q : initial) out.initial.push_back(renamed[q]);
  std::sort(out.initial.begin(), out.initial.end());
  for (std::size_t i = 0; i < n; ++i) {
    int q = order[i];
    out.accepting[i] = a.accepting[q];
    for (const auto& e : sorted_edges[q]) {
      out.edges[i].push_back({e.symbol, renamed[e.target]});
    }
    std::sort(out.edges[i].begin(), out.edges[i].end());
  }
  return out;
}

/// Canonical empty-language automaton: one non-accepting state, no moves.
inline Dfa empty_dfa(const Alphabet& sigma) { return Dfa(sigma, 1); }

/// Sigma-star: one accepting state looping on every symbol.
inline Dfa universal_dfa(const Alphabet& sigma) {
  Dfa out(sigma, 1);
  out.accepting[0] = true;
  for (auto& t : out.next[0]) t = 0;
  return out;
}

/// Automaton accepting exactly `w`.
inline Nfa word_nfa(const Word& w, const Alphabet& sigma) {
  Nfa out(sigma, w.size() + 1);
  out.initial = {0};
  for (std::size_t i = 0; i < w.size(); ++i) {
    out.add_edge(static_cast<int>(i), w[i], static_cast<int>(i + 1));
  }
  out.accepting[w.size()] = true;
  return out;
}

/// Disjoint union; all parts must share `sigma`'s symbols.
inline Nfa union_nfa(const std::vector<Nfa>& parts, const Alphabet& sigma) {
  Nfa out(sigma);
  for (const auto& raw : parts) {
    Nfa part = widen(raw, sigma);
    int offset = static_cast<int>(out.num_states());
    for (std::size_t q = 0; q < part.num_states(); ++q) {
      out.add_state(part.accepting[q]);
    }
    for (std::size_t q = 0; q < part.num_states(); ++q) {
      for (const auto& e : part.edges[q]) {
        out.edges[offset + q].push_back({e.symbol, e.target + offset});
      }
    }
    for (int q : part.initial) out.initial.push_back(q + offset);
  }
  return out;
}

}  // namespace rrkit
