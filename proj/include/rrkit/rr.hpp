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

// Regular realizability: does L(A) meet the filter? Solvers return a witness
// word in the intersection. Also the two reductions built from transducers
// and from graph reachability.

#include <cstddef>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rrkit/automaton.hpp"
#include "rrkit/classify.hpp"
#include "rrkit/core.hpp"
#include "rrkit/operations.hpp"
#include "rrkit/text_format.hpp"
#include "rrkit/transducer.hpp"

namespace rrkit {

/// Shortest (then least) word in L(a) ∩ L(filter), over the union alphabet.
inline std::optional<Word> solve_rr(const Dfa& filter, const Dfa& a) {
  Alphabet sigma = unite(filter.alphabet, a.alphabet);
  return shortest_word(product_intersect(widen(filter, sigma), widen(a, sigma)));
}

/// Nondeterministic-input variant; breadth-first search over the product
/// replaces guessing the two accepting paths.
inline std::optional<Word> solve_rr_nfa(const Nfa& filter, const Nfa& a) {
  Alphabet sigma = unite(filter.alphabet, a.alphabet);
  return shortest_word(product_intersect(widen(filter, sigma), widen(a, sigma)));
}

struct BoundedSolution {
  Word witness;
  std::size_t expression = 0;           // index into the decomposition
  std::vector<std::size_t> exponents;  // one per block
};

namespace detail {

// Counter search: tries exponent vectors block by block. For a block with
// loop x entered in state q, the orbit q, q·x, q·x², … is followed until it
// repeats or dies; exponents beyond that revisit a state already tried.
class CounterSearch {
 public:
  CounterSearch(const BoundedExpr& e, const Dfa& a) : e_(e), a_(a) {}

  std::optional<std::vector<std::size_t>> run(int start) {
    std::vector<std::size_t> exps;
    if (search(0, start, exps)) return exps;
    return std::nullopt;
  }

 private:
  bool search(std::size_t block, int q, std::vector<std::size_t>& exps) {
    if (q == kNoState) return false;
    if (block == e_.blocks.size()) return a_.accepting[q];
    if (failed_.count({block, q})) return false;
    const auto& b = e_.blocks[block];
    std::vector<bool> visited(a_.num_states(), false);
    std::size_t exponent = 0;
    for (int s = q; s != kNoState && !visited[s]; s = a_.walk(s, b.loop), ++exponent) {
      visited[s] = true;
      exps.push_back(exponent);
      if (search(block + 1, a_.walk(s, b.bridge), exps)) return true;
      exps.pop_back();
    }
    failed_.insert({block, q});
    return false;
  }

  const BoundedExpr& e_;
  const Dfa& a_;
  std::set<std::pair<std::size_t, int>> failed_;
};

}  // namespace detail

/// Counter-based decision for an easy filter given by its decomposition. The
/// witness has the shape p x₁^i₁ y₁ … xₙ^iₙ yₙ and is re-checked against both
/// `a` and the generating expression.
inline std::optional<BoundedSolution> solve_rr_bounded(const std::vector<BoundedExpr>& exprs,
                                                       const Dfa& a) {
  for (const auto& e : exprs) {
    for (const auto& b : e.blocks) {
      if (b.loop.empty()) throw PreconditionError("bounded expression with an empty loop word");
    }
  }
  for (std::size_t k = 0; k < exprs.size(); ++k) {
    const auto& e = exprs[k];
    auto exps = detail::CounterSearch(e, a).run(a.walk(a.initial, e.prefix));
    if (!exps) continue;
    BoundedSolution sol{e.prefix, k, *exps};
    for (std::size_t i = 0; i < e.blocks.size(); ++i) {
      sol.witness += power(e.blocks[i].loop, sol.exponents[i]) + e.blocks[i].bridge;
    }
    Alphabet sigma = detail::expr_alphabet(a.alphabet, {e});
    if (!run(widen(a, sigma), sol.witness) || !run_nfa(expr_to_nfa(e, sigma), sol.witness)) {
      throw VerificationError("solve_rr_bounded: witness '" + format_word(sol.witness) +
                              "' failed re-verification");
    }
    return sol;
  }
  return std::nullopt;
}

/// Classifies `filter` first; throws ClassificationError when it is hard.
inline std::optional<BoundedSolution> solve_rr_bounded(const Dfa& filter, const Dfa& a) {
  auto c = classify(filter);
  const auto* easy = std::get_if<EasyFilter>(&c);
  if (!easy) throw ClassificationError("solve_rr_bounded: filter is hard");
  return solve_rr_bounded(easy->decomposition, a);
}

/// Instance transformation along a transducer: if F₁ = t(F₂), then
/// L(a) meets F₁ iff L(result) meets F₂.
inline Dfa reduce_rr(const Dfst& t, const Dfa& a) {
  return determinize(preimage_automaton(t, a));
}

struct Digraph {
  std::size_t nodes = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t source = 0;
  std::size_t target = 0;
  // Optional `alphabet` line; gadget words must be over it when present.
  std::optional<Alphabet> alphabet;
};

inline void validate(const Digraph& g) {
  if (g.source >= g.nodes || g.target >= g.nodes) {
    throw PreconditionError("digraph: source/target out of range");
  }
  for (auto [u, v] : g.edges) {
    if (u >= g.nodes || v >= g.nodes) {
      throw PreconditionError("digraph: edge " + std::to_string(u) + " -> " +
                              std::to_string(v) + " out of range");
    }
  }
}

/// Path-problem gadget: graph edges become epsilon moves, the source is the
/// initial state, and a `w`-labelled chain leads from the target to the only
/// accepting state. States 0..nodes-1 are the graph nodes, then the chain.
inline Nfa reachability_gadget(const Digraph& g, const Word& w, const Alphabet& sigma) {
  validate(g);
  if (!sigma.contains_all(w)) throw AlphabetError("gadget word '" + w + "' not over the alphabet");
  Nfa out(sigma, g.nodes);
  out.initial = {static_cast<int>(g.source)};
  for (auto [u, v] : g.edges) out.add_epsilon(static_cast<int>(u), static_cast<int>(v));
  int cur = static_cast<int>(g.target);
  for (char c : w) {
    int next = out.add_state();
    out.add_edge(cur, c, next);
    cur = next;
  }
  out.accepting[cur] = true;
  return out;
}

// Graph text:
//
//   graph
//   nodes N
//   source s
//   target t
//   edge u v          (any number)
//   alphabet a b      (optional)

inline Digraph parse_digraph(std::string_view text) {
  auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty input");
  if (lines[0].tokens.size() != 1 || lines[0].tokens[0] != "graph") {
    throw ParseError(lines[0].number, "expected header 'graph'");
  }
  Digraph g;
  bool have_nodes = false, have_source = false, have_target = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& key = l.tokens[0];
    auto node = [&](const std::string& tok) {
      auto v = detail::parse_count(tok, l.number);
      if (!have_nodes) throw ParseError(l.number, "'nodes' must come first");
      if (v >= g.nodes) throw ParseError(l.number, "node " + tok + " out of range");
      return v;
    };
    if (key == "nodes") {
      detail::expect_arity(l, 2);
      if (have_nodes) throw ParseError(l.number, "duplicate 'nodes' line");
      g.nodes = detail::parse_count(l.tokens[1], l.number);
      if (g.nodes == 0) throw ParseError(l.number, "a graph needs at least one node");
      have_nodes = true;
    } else if (key == "source") {
      detail::expect_arity(l, 2);
      g.source = node(l.tokens[1]);
      have_source = true;
    } else if (key == "target") {
      detail::expect_arity(l, 2);
      g.target = node(l.tokens[1]);
      have_target = true;
    } else if (key == "edge") {
      detail::expect_arity(l, 3);
      g.edges.emplace_back(node(l.tokens[1]), node(l.tokens[2]));
    } else if (key == "alphabet") {
      if (g.alphabet) throw ParseError(l.number, "duplicate 'alphabet' line");
      g.alphabet = detail::parse_alphabet(l);
    } else {
      throw ParseError(l.number, "unknown directive '" + key + "'");
    }
  }
  if (!have_nodes || !have_source || !have_target) {
    throw ParseError(0, "graph needs 'nodes', 'source' and 'target'");
  }
  return g;
}

inline std::string to_text(const Digraph& g) {
  std::ostringstream out;
  out << "graph\nnodes " << g.nodes << "\nsource " << g.source << "\ntarget " << g.target << '\n';
  if (g.alphabet) {
    out << "alphabet";
    for (char c : g.alphabet->symbols()) out << ' ' << c;
    out << '\n';
  }
  for (auto [u, v] : g.edges) out << "edge " << u << ' ' << v << '\n';
  return out.str();
}

}  // namespace rrkit
