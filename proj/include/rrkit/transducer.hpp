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

// Deterministic finite-state transducers in a one-symbol-per-step normal
// form: every transition consumes exactly one input symbol and emits a word;
// accepting states may emit a final word at end of input.
//
// Composition order: compose_dfst(t1, t2) maps x to t2(t1(x)).

#include <concepts>
#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "rrkit/automaton.hpp"
#include "rrkit/core.hpp"
#include "rrkit/text_format.hpp"

namespace rrkit {

struct DfstArc {
  Word output;
  int target = kNoState;

  bool defined() const noexcept { return target != kNoState; }
  bool operator==(const DfstArc&) const = default;
};

struct Dfst {
  Alphabet input_alphabet;
  Alphabet output_alphabet;
  int initial = 0;
  std::vector<bool> accepting;
  std::vector<std::vector<DfstArc>> arcs;  // [state][input symbol index]
  std::vector<Word> final_output;          // meaningful for accepting states

  Dfst() = default;
  Dfst(Alphabet in, Alphabet out, std::size_t states = 1)
      : input_alphabet(std::move(in)), output_alphabet(std::move(out)) {
    for (std::size_t i = 0; i < states; ++i) add_state();
  }

  std::size_t num_states() const noexcept { return accepting.size(); }

  int add_state(bool accept = false) {
    accepting.push_back(accept);
    arcs.emplace_back(input_alphabet.size());
    final_output.emplace_back();
    return static_cast<int>(accepting.size()) - 1;
  }

  void set(int from, char symbol, Word output, int to) {
    int i = input_alphabet.index(symbol);
    if (i < 0) throw AlphabetError(std::string("input symbol '") + symbol + "' not in alphabet");
    if (!output_alphabet.contains_all(output)) {
      throw AlphabetError("output '" + output + "' not over the output alphabet");
    }
    arcs[from][i] = {std::move(output), to};
  }

  const DfstArc* arc(int q, char symbol) const noexcept {
    int i = input_alphabet.index(symbol);
    if (q == kNoState || i < 0 || !arcs[q][i].defined()) return nullptr;
    return &arcs[q][i];
  }
};

/// Outcome of running a transducer: `output` is meaningful iff `defined`.
struct TransductionResult {
  bool defined = false;
  Word output;

  static TransductionResult undefined() { return {}; }
  bool operator==(const TransductionResult&) const = default;
};

namespace detail {

// Runs `w` from `q` and returns the emitted word and end state, or nullopt
// if a transition is missing. Symbols outside the input alphabet are missing
// transitions here.
inline std::optional<std::pair<Word, int>> feed(const Dfst& t, int q, const Word& w) {
  Word out;
  for (char c : w) {
    const DfstArc* a = t.arc(q, c);
    if (!a) return std::nullopt;
    out += a->output;
    q = a->target;
  }
  return std::pair{std::move(out), q};
}

}  // namespace detail

namespace detail {

inline TransductionResult apply_dfst(const Dfst& t, const Word& x) {
  if (!t.input_alphabet.contains_all(x)) {
    throw AlphabetError("input '" + x + "' not over the input alphabet");
  }
  auto run = feed(t, t.initial, x);
  if (!run || !t.accepting[run->second]) return TransductionResult::undefined();
  return {true, run->first + t.final_output[run->second]};
}

}  // namespace detail

/// Runs `x` through `t`; the result is undefined if the run falls off or ends
/// outside the accepting set. A constrained template, so that argument-
/// dependent lookup never prefers std::apply for a std::string argument.
template <typename T, typename W>
  requires std::same_as<std::remove_cvref_t<T>, Dfst> && std::convertible_to<W, Word>
TransductionResult apply(T&& t, W&& x) {
  return detail::apply_dfst(t, Word(std::forward<W>(x)));
}

/// Breadth-first renumbering from the initial state.
inline Dfst canonicalize(const Dfst& t) {
  const std::size_t n = t.num_states();
  std::vector<int> order{t.initial};
  std::vector<int> renamed(n, kNoState);
  renamed[t.initial] = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    for (const auto& a : t.arcs[order[k]]) {
      if (a.defined() && renamed[a.target] == kNoState) {
        renamed[a.target] = static_cast<int>(order.size());
        order.push_back(a.target);
      }
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    if (renamed[q] == kNoState) {
      renamed[q] = static_cast<int>(order.size());
      order.push_back(static_cast<int>(q));
    }
  }
  Dfst out(t.input_alphabet, t.output_alphabet, n);
  for (std::size_t i = 0; i < n; ++i) {
    int q = order[i];
    out.accepting[i] = t.accepting[q];
    out.final_output[i] = t.accepting[q] ? t.final_output[q] : Word{};
    for (std::size_t s = 0; s < t.input_alphabet.size(); ++s) {
      const auto& a = t.arcs[q][s];
      if (a.defined()) out.arcs[i][s] = {a.output, renamed[a.target]};
    }
  }
  return out;
}

/// Product construction: each t1 output word is fed through t2 stepwise.
/// Requires the output alphabet of t1 to be contained in t2's input alphabet.
inline Dfst compose_dfst(const Dfst& t1, const Dfst& t2) {
  if (!t1.output_alphabet.subset_of(t2.input_alphabet)) {
    throw AlphabetError("compose: output alphabet '" + t1.output_alphabet.symbols() +
                        "' not within input alphabet '" + t2.input_alphabet.symbols() + "'");
  }
  Dfst out(t1.input_alphabet, t2.output_alphabet, 0);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    auto [it, fresh] = ids.emplace(std::pair{p, q}, static_cast<int>(pairs.size()));
    if (fresh) {
      out.add_state();
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  out.initial = intern(t1.initial, t2.initial);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [p, q] = pairs[k];
    if (t1.accepting[p]) {
      auto tail = detail::feed(t2, q, t1.final_output[p]);
      if (tail && t2.accepting[tail->second]) {
        out.accepting[k] = true;
        out.final_output[k] = tail->first + t2.final_output[tail->second];
      }
    }
    for (std::size_t i = 0; i < t1.input_alphabet.size(); ++i) {
      const auto& a = t1.arcs[p][i];
      if (!a.defined()) continue;
      auto step = detail::feed(t2, q, a.output);
      if (!step) continue;
      int target = intern(a.target, step->second);
      out.arcs[k][i] = {std::move(step->first), target};
    }
  }
  return out;
}

/// Automaton for { x : t(x) is defined and lies in L(a) }, over t's input
/// alphabet. States are (transducer state, automaton state) pairs.
inline Nfa preimage_automaton(const Dfst& t, const Dfa& a) {
  if (!t.output_alphabet.subset_of(a.alphabet)) {
    throw AlphabetError("preimage: output alphabet '" + t.output_alphabet.symbols() +
                        "' not within automaton alphabet '" + a.alphabet.symbols() + "'");
  }
  Nfa out(t.input_alphabet);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    auto [it, fresh] = ids.emplace(std::pair{p, q}, static_cast<int>(pairs.size()));
    if (fresh) {
      bool acc = t.accepting[p] && a.is_accepting(a.walk(q, t.final_output[p]));
      out.add_state(acc);
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  out.initial = {intern(t.initial, a.initial)};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [p, q] = pairs[k];
    for (std::size_t i = 0; i < t.input_alphabet.size(); ++i) {
      const auto& arc = t.arcs[p][i];
      if (!arc.defined()) continue;
      int r = a.walk(q, arc.output);
      if (r == kNoState) continue;
      int there = intern(arc.target, r);  // may grow out.edges
      out.edges[k].push_back({static_cast<int>(i), there});
    }
  }
  return out;
}

/// Automaton for { t(x) : x in L(a), t(x) defined }, over t's output
/// alphabet. A transition emitting w becomes a |w|-edge path (an epsilon edge
/// when w is empty); final outputs lead to a single accepting sink.
inline Nfa image_nfa(const Dfst& t, const Dfa& a) {
  if (!a.alphabet.subset_of(t.input_alphabet)) {
    throw AlphabetError("image: automaton alphabet '" + a.alphabet.symbols() +
                        "' not within input alphabet '" + t.input_alphabet.symbols() + "'");
  }
  Nfa out(t.output_alphabet);
  const int accept = out.add_state(true);
  std::map<std::pair<int, int>, int> ids;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int p, int q) {
    auto [it, fresh] = ids.emplace(std::pair{p, q}, static_cast<int>(out.num_states()));
    if (fresh) {
      out.add_state();
      pairs.emplace_back(p, q);
    }
    return it->second;
  };
  auto add_path = [&](int from, const Word& w, int to) {
    if (w.empty()) {
      out.add_epsilon(from, to);
      return;
    }
    int cur = from;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      int mid = out.add_state();
      out.add_edge(cur, w[i], mid);
      cur = mid;
    }
    out.add_edge(cur, w.back(), to);
  };
  out.initial = {intern(t.initial, a.initial)};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto [p, q] = pairs[k];
    int here = ids.at({p, q});
    if (t.accepting[p] && a.accepting[q]) add_path(here, t.final_output[p], accept);
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      int r = a.next[q][i];
      if (r == kNoState) continue;
      const DfstArc* arc = t.arc(p, a.alphabet[i]);
      if (!arc) continue;
      int there = intern(arc->target, r);
      add_path(here, arc->output, there);
    }
  }
  return canonicalize(out);
}

/// Maps w to w for w in L(a) and is undefined elsewhere.
inline Dfst identity_transducer(const Dfa& a) {
  Dfst out(a.alphabet, a.alphabet, a.num_states());
  out.initial = a.initial;
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    out.accepting[q] = a.accepting[q];
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      int r = a.next[q][i];
      if (r != kNoState) out.arcs[q][i] = {Word(1, a.alphabet[i]), r};
    }
  }
  return out;
}

// Text format:
//
//   dfst
//   in_alphabet a b
//   out_alphabet x y
//   states 0 1
//   initial 0
//   accept 1
//   trans <src> <in-symbol> <out-word|-> <dst>
//   final <state> <out-word|->

inline Dfst parse_dfst(std::string_view text) {
  auto lines = detail::tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty input");
  if (lines[0].tokens.size() != 1 || lines[0].tokens[0] != "dfst") {
    throw ParseError(lines[0].number, "expected header 'dfst'");
  }
  std::optional<Alphabet> in, out;
  detail::StateTable states;
  Dfst t;
  bool have_initial = false;
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<int, std::size_t>> finals;  // (state, line)

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& key = l.tokens[0];
    if (key == "in_alphabet") {
      if (in) throw ParseError(l.number, "duplicate 'in_alphabet' line");
      in = detail::parse_alphabet(l);
    } else if (key == "out_alphabet") {
      if (out) throw ParseError(l.number, "duplicate 'out_alphabet' line");
      out = detail::parse_alphabet(l);
    } else if (key == "states") {
      if (!in || !out) throw ParseError(l.number, "alphabets must precede 'states'");
      states.declare(l);
      if (states.size() == 0) throw ParseError(l.number, "a transducer needs at least one state");
      t = Dfst(*in, *out, states.size());
    } else if (key == "initial") {
      detail::expect_arity(l, 2);
      if (have_initial) throw ParseError(l.number, "duplicate 'initial' line");
      have_initial = true;
      t.initial = states.lookup(l.tokens[1], l.number);
    } else if (key == "accept") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        t.accepting[states.lookup(l.tokens[i], l.number)] = true;
      }
    } else if (key == "trans") {
      detail::expect_arity(l, 5);
      int from = states.lookup(l.tokens[1], l.number);
      char c = detail::parse_symbol(l.tokens[2], *in, l.number);
      Word w = parse_word(l.tokens[3], l.number);
      if (!out->contains_all(w)) {
        throw ParseError(l.number, "output '" + w + "' not over the output alphabet");
      }
      int to = states.lookup(l.tokens[4], l.number);
      if (!seen.emplace(from, in->index(c)).second) {
        throw ParseError(l.number, "duplicate transition from state " + l.tokens[1] + " on '" +
                                       l.tokens[2] + "'");
      }
      t.arcs[from][in->index(c)] = {std::move(w), to};
    } else if (key == "final") {
      detail::expect_arity(l, 3);
      int q = states.lookup(l.tokens[1], l.number);
      Word w = parse_word(l.tokens[2], l.number);
      if (!out->contains_all(w)) {
        throw ParseError(l.number, "final output '" + w + "' not over the output alphabet");
      }
      t.final_output[q] = std::move(w);
      finals.emplace_back(q, l.number);
    } else {
      throw ParseError(l.number, "unknown directive '" + key + "'");
    }
  }
  if (!in || !out) throw ParseError(0, "missing alphabet line");
  if (!states.declared()) throw ParseError(0, "missing 'states' line");
  if (!have_initial) throw ParseError(0, "missing 'initial' line");
  for (auto [q, line] : finals) {
    if (!t.accepting[q]) throw ParseError(line, "final output on a non-accepting state");
  }
  return t;
}

inline std::string to_text(const Dfst& t) {
  std::ostringstream out;
  out << "dfst\nin_alphabet";
  for (char c : t.input_alphabet.symbols()) out << ' ' << c;
  out << "\nout_alphabet";
  for (char c : t.output_alphabet.symbols()) out << ' ' << c;
  out << "\nstates";
  for (std::size_t q = 0; q < t.num_states(); ++q) out << ' ' << q;
  out << "\ninitial " << t.initial << "\naccept";
  for (std::size_t q = 0; q < t.num_states(); ++q) {
    if (t.accepting[q]) out << ' ' << q;
  }
  out << '\n';
  for (std::size_t q = 0; q < t.num_states(); ++q) {
    for (std::size_t i = 0; i < t.input_alphabet.size(); ++i) {
      const auto& a = t.arcs[q][i];
      if (a.defined()) {
        out << "trans " << q << ' ' << t.input_alphabet[i] << ' ' << format_word(a.output) << ' '
            << a.target << '\n';
      }
    }
  }
  for (std::size_t q = 0; q < t.num_states(); ++q) {
    if (t.accepting[q] && !t.final_output[q].empty()) {
      out << "final " << q << ' ' << t.final_output[q] << '\n';
    }
  }
  return out.str();
}

}  // namespace rrkit
