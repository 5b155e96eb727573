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

// Generators and brute-force oracles shared by the unit tests and the
// acceptance runner. The oracles deliberately avoid the library's own
// algorithms: they simulate machines directly and enumerate words.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "rrkit/rrkit.hpp"

namespace rrkit::testing {

using Rng = std::mt19937;

/// All words over `sigma` of length at most `n`, shortlex order.
inline std::vector<Word> words_up_to(const Alphabet& sigma, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t begin = 0, len = 0; len < n; ++len) {
    std::size_t end = out.size();
    for (std::size_t i = begin; i < end; ++i) {
      for (char c : sigma.symbols()) out.push_back(out[i] + c);
    }
    begin = end;
  }
  return out;
}

// Direct DFA simulation over the transition table.
inline bool dfa_accepts(const Dfa& a, const Word& w) {
  int q = a.initial;
  for (char c : w) {
    int i = a.alphabet.index(c);
    if (i < 0) return false;
    q = a.next[q][i];
    if (q < 0) return false;
  }
  return a.accepting[q];
}

// NFA membership by depth-first search over (state, position) pairs.
inline bool nfa_accepts(const Nfa& n, const Word& w) {
  std::set<std::pair<int, std::size_t>> seen;
  std::vector<std::pair<int, std::size_t>> stack;
  for (int q : n.initial) stack.push_back({q, 0});
  while (!stack.empty()) {
    auto [q, pos] = stack.back();
    stack.pop_back();
    if (!seen.insert({q, pos}).second) continue;
    if (pos == w.size() && n.accepting[q]) return true;
    for (const auto& e : n.edges[q]) {
      if (e.symbol == kEpsilon) {
        stack.push_back({e.target, pos});
      } else if (pos < w.size() && n.alphabet.index(w[pos]) == e.symbol) {
        stack.push_back({e.target, pos + 1});
      }
    }
  }
  return false;
}

// Transducer semantics by direct stepping.
inline std::optional<Word> transduce(const Dfst& t, const Word& x) {
  int q = t.initial;
  Word out;
  for (char c : x) {
    int i = t.input_alphabet.index(c);
    if (i < 0 || t.arcs[q][i].target < 0) return std::nullopt;
    out += t.arcs[q][i].output;
    q = t.arcs[q][i].target;
  }
  if (!t.accepting[q]) return std::nullopt;
  return out + t.final_output[q];
}

/// Searches for x ∈ L(a) with t(x) = y over configurations (t-state,
/// a-state, matched output length). Complete even for erasing transducers.
inline std::optional<Word> preimage_in(const Dfst& t, const Dfa& a, const Word& y) {
  using Config = std::tuple<int, int, std::size_t>;
  std::map<Config, std::pair<Config, char>> parent;
  std::queue<Config> queue;
  Config start{t.initial, a.initial, 0};
  parent[start] = {start, 0};
  queue.push(start);
  while (!queue.empty()) {
    Config cur = queue.front();
    queue.pop();
    auto [p, q, k] = cur;
    if (t.accepting[p] && a.accepting[q] && y.compare(k, Word::npos, t.final_output[p]) == 0) {
      Word x;
      for (Config c = cur; c != start; c = parent[c].first) x.insert(x.begin(), parent[c].second);
      return x;
    }
    for (char c : a.alphabet.symbols()) {
      int ti = t.input_alphabet.index(c);
      int qn = a.next[q][a.alphabet.index(c)];
      if (ti < 0 || qn < 0) continue;
      const auto& arc = t.arcs[p][ti];
      if (arc.target < 0 || y.compare(k, arc.output.size(), arc.output) != 0 ||
          k + arc.output.size() > y.size()) {
        continue;
      }
      Config nxt{arc.target, qn, k + arc.output.size()};
      if (parent.emplace(nxt, std::pair{cur, c}).second) queue.push(nxt);
    }
  }
  return std::nullopt;
}

/// DFA accepting exactly the given words, as a prefix tree.
inline Dfa finite_dfa(const std::vector<Word>& words, const Alphabet& sigma) {
  Dfa out(sigma, 1);
  for (const auto& w : words) {
    int q = 0;
    for (char c : w) {
      int n = out.step(q, c);
      if (n == kNoState) {
        n = out.add_state();
        out.set(q, c, n);
      }
      q = n;
    }
    out.accepting[q] = true;
  }
  return out;
}

inline Dfa regex_dfa(const std::string& pattern, const Alphabet& sigma) {
  return determinize(regex_to_nfa(pattern, sigma));
}

/// Random partial DFA: each transition present with probability `density`.
inline Dfa random_dfa(Rng& rng, const Alphabet& sigma, std::size_t states, double density = 0.8,
                      double accept = 0.4) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(states) - 1);
  std::bernoulli_distribution present(density), acc(accept);
  Dfa out(sigma, states);
  for (std::size_t q = 0; q < states; ++q) {
    out.accepting[q] = acc(rng);
    for (std::size_t i = 0; i < sigma.size(); ++i) {
      if (present(rng)) out.next[q][i] = pick(rng);
    }
  }
  return out;
}

inline Nfa random_nfa(Rng& rng, const Alphabet& sigma, std::size_t states, double epsilon = 0.15) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(states) - 1);
  std::uniform_int_distribution<int> fanout(0, 2);
  std::bernoulli_distribution eps(epsilon), acc(0.3), init(0.3);
  Nfa out(sigma, states);
  out.initial = {0};
  for (std::size_t q = 0; q < states; ++q) {
    out.accepting[q] = acc(rng);
    if (q > 0 && init(rng)) out.initial.push_back(static_cast<int>(q));
    for (char c : sigma.symbols()) {
      for (int k = fanout(rng); k > 0; --k) out.add_edge(static_cast<int>(q), c, pick(rng));
    }
    if (eps(rng)) out.add_epsilon(static_cast<int>(q), pick(rng));
  }
  return out;
}

/// Random DFST with outputs of length 0..max_output.
inline Dfst random_dfst(Rng& rng, const Alphabet& in, const Alphabet& out, std::size_t states,
                        std::size_t max_output = 2, double density = 0.85) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(states) - 1);
  std::uniform_int_distribution<std::size_t> length(0, max_output);
  std::uniform_int_distribution<std::size_t> letter(0, out.size() - 1);
  std::bernoulli_distribution present(density), acc(0.5), has_final(0.3);
  auto word = [&] {
    Word w;
    for (std::size_t n = length(rng); n > 0; --n) w += out[letter(rng)];
    return w;
  };
  Dfst t(in, out, states);
  for (std::size_t q = 0; q < states; ++q) {
    t.accepting[q] = acc(rng);
    if (t.accepting[q] && has_final(rng)) t.final_output[q] = word();
    for (char c : in.symbols()) {
      if (present(rng)) t.set(static_cast<int>(q), c, word(), pick(rng));
    }
  }
  return t;
}

/// Calls `visit` on every DFA with `states` states over `sigma` (initial 0,
/// partial transitions, every accepting set).
inline void for_each_dfa(const Alphabet& sigma, std::size_t states,
                         const std::function<void(const Dfa&)>& visit) {
  const std::size_t slots = states * sigma.size();
  std::vector<int> choice(slots, 0);  // 0 = missing, k = target k-1
  for (;;) {
    for (std::size_t mask = 0; mask < (std::size_t{1} << states); ++mask) {
      Dfa a(sigma, states);
      for (std::size_t s = 0; s < slots; ++s) a.next[s / sigma.size()][s % sigma.size()] = choice[s] - 1;
      for (std::size_t q = 0; q < states; ++q) a.accepting[q] = (mask >> q) & 1u;
      visit(a);
    }
    std::size_t k = 0;
    while (k < slots && ++choice[k] > static_cast<int>(states)) choice[k++] = 0;
    if (k == slots) return;
  }
}

/// True when every state is reachable and co-reachable, by plain search.
inline bool is_trim(const Dfa& a) {
  const std::size_t n = a.num_states();
  std::vector<bool> fwd(n), bwd(n);
  std::vector<int> stack{a.initial};
  fwd[a.initial] = true;
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int t : a.next[q]) {
      if (t >= 0 && !fwd[t]) fwd[t] = true, stack.push_back(t);
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (a.accepting[q]) bwd[q] = true, stack.push_back(static_cast<int>(q));
  }
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (std::size_t p = 0; p < n; ++p) {
      for (int t : a.next[p]) {
        if (t == q && !bwd[p]) bwd[p] = true, stack.push_back(static_cast<int>(p));
      }
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (!fwd[q] || !bwd[q]) return false;
  }
  return true;
}

/// Every trim DFA with 1..max_states states over `sigma`.
inline std::vector<Dfa> trim_dfas(const Alphabet& sigma, std::size_t max_states) {
  std::vector<Dfa> out;
  for (std::size_t n = 1; n <= max_states; ++n) {
    for_each_dfa(sigma, n, [&](const Dfa& a) {
      if (is_trim(a)) out.push_back(a);
    });
  }
  return out;
}

/// Brute-force hardness: some state has two cycle labels of length ≤ bound
/// that do not commute.
inline bool has_noncommuting_cycles(const Dfa& a, std::size_t bound) {
  const auto words = words_up_to(a.alphabet, bound);
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    std::vector<Word> cycles;
    for (const auto& w : words) {
      if (!w.empty() && a.walk(static_cast<int>(q), w) == static_cast<int>(q)) cycles.push_back(w);
    }
    for (const auto& c : cycles) {
      if (c + cycles.front() != cycles.front() + c) return true;
    }
  }
  return false;
}

inline bool reachable(const Digraph& g) {
  std::vector<bool> seen(g.nodes);
  std::queue<std::size_t> queue;
  seen[g.source] = true;
  queue.push(g.source);
  while (!queue.empty()) {
    std::size_t u = queue.front();
    queue.pop();
    for (auto [a, b] : g.edges) {
      if (a == u && !seen[b]) seen[b] = true, queue.push(b);
    }
  }
  return seen[g.target];
}

inline Digraph random_digraph(Rng& rng, std::size_t max_nodes, double p) {
  std::uniform_int_distribution<std::size_t> size(1, max_nodes);
  std::bernoulli_distribution edge(p);
  Digraph g;
  g.nodes = size(rng);
  std::uniform_int_distribution<std::size_t> node(0, g.nodes - 1);
  g.source = node(rng);
  g.target = node(rng);
  for (std::size_t u = 0; u < g.nodes; ++u) {
    for (std::size_t v = 0; v < g.nodes; ++v) {
      if (u != v && edge(rng)) g.edges.push_back({u, v});
    }
  }
  return g;
}

}  // namespace rrkit::testing
