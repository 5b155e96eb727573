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

// Line-based text format for automata:
//
//   dfa | nfa
//   alphabet a b ...
//   states 0 1 2 ...
//   initial 0            (nfa: any number of states)
//   accept 1 2 ...
//   trans <src> <symbol|eps> <dst>
//
// `#` starts a comment. State ids are arbitrary non-negative integers in the
// input and are renumbered densely in declaration order.

#include <charconv>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "rrkit/automaton.hpp"
#include "rrkit/core.hpp"

namespace rrkit {

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Non-empty, comment-stripped lines split on whitespace.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(pos, end - pos);
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::istringstream in{std::string(raw)};
    Line line{number, {}};
    for (std::string tok; in >> tok;) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

inline std::size_t parse_count(const std::string& tok, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + tok + "'");
  }
  return value;
}

inline char parse_symbol(const std::string& tok, const Alphabet& sigma, std::size_t line) {
  if (tok.size() != 1 || !is_symbol_char(tok[0])) {
    throw ParseError(line, "invalid symbol '" + tok + "'");
  }
  if (!sigma.contains(tok[0])) throw ParseError(line, "undeclared symbol '" + tok + "'");
  return tok[0];
}

inline Alphabet parse_alphabet(const Line& l, std::size_t first = 1) {
  Alphabet sigma;
  for (std::size_t i = first; i < l.tokens.size(); ++i) {
    const auto& tok = l.tokens[i];
    if (tok.size() != 1 || !is_symbol_char(tok[0])) {
      throw ParseError(l.number, "invalid symbol '" + tok + "'");
    }
    if (!sigma.add(tok[0])) throw ParseError(l.number, "duplicate symbol '" + tok + "'");
  }
  return sigma;
}

// Maps declared external state ids to dense indices.
class StateTable {
 public:
  void declare(const Line& l) {
    if (declared_) throw ParseError(l.number, "duplicate 'states' line");
    declared_ = true;
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      auto id = parse_count(l.tokens[i], l.number);
      if (!ids_.emplace(id, static_cast<int>(ids_.size())).second) {
        throw ParseError(l.number, "duplicate state " + l.tokens[i]);
      }
    }
  }
  int lookup(const std::string& tok, std::size_t line) const {
    if (!declared_) throw ParseError(line, "'states' must be declared first");
    auto it = ids_.find(parse_count(tok, line));
    if (it == ids_.end()) throw ParseError(line, "undeclared state " + tok);
    return it->second;
  }
  bool declared() const noexcept { return declared_; }
  std::size_t size() const noexcept { return ids_.size(); }

 private:
  bool declared_ = false;
  std::map<std::size_t, int> ids_;
};

inline void expect_arity(const Line& l, std::size_t n) {
  if (l.tokens.size() != n) {
    throw ParseError(l.number, "'" + l.tokens[0] + "' expects " + std::to_string(n - 1) +
                                   " argument(s)");
  }
}

inline std::string header_of(std::string_view text) {
  auto lines = tokenize(text);
  if (lines.empty()) return {};
  return lines.front().tokens.front();
}

// Shared body of parse_dfa / parse_nfa.
template <typename Machine>
Machine parse_machine(std::string_view text, bool deterministic) {
  const std::string kind = deterministic ? "dfa" : "nfa";
  auto lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty input");
  if (lines[0].tokens.size() != 1 || lines[0].tokens[0] != kind) {
    throw ParseError(lines[0].number, "expected header '" + kind + "'");
  }
  std::optional<Alphabet> sigma;
  StateTable states;
  Machine m;
  bool have_initial = false;
  std::set<std::pair<int, int>> seen;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    const auto& key = l.tokens[0];
    if (key == "alphabet") {
      if (sigma) throw ParseError(l.number, "duplicate 'alphabet' line");
      sigma = parse_alphabet(l);
    } else if (key == "states") {
      if (!sigma) throw ParseError(l.number, "'alphabet' must precede 'states'");
      states.declare(l);
      if (states.size() == 0) throw ParseError(l.number, "an automaton needs at least one state");
      m = Machine(*sigma, states.size());
    } else if (key == "initial") {
      if (have_initial) throw ParseError(l.number, "duplicate 'initial' line");
      have_initial = true;
      if constexpr (std::is_same_v<Machine, Dfa>) {
        expect_arity(l, 2);
        m.initial = states.lookup(l.tokens[1], l.number);
      } else {
        for (std::size_t i = 1; i < l.tokens.size(); ++i) {
          m.initial.push_back(states.lookup(l.tokens[i], l.number));
        }
      }
    } else if (key == "accept") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        m.accepting[states.lookup(l.tokens[i], l.number)] = true;
      }
    } else if (key == "trans") {
      expect_arity(l, 4);
      if (!sigma || !states.declared()) {
        throw ParseError(l.number, "'alphabet' and 'states' must precede transitions");
      }
      int from = states.lookup(l.tokens[1], l.number);
      int to = states.lookup(l.tokens[3], l.number);
      if (l.tokens[2] == "eps") {
        if constexpr (std::is_same_v<Machine, Dfa>) {
          throw ParseError(l.number, "'eps' is not allowed in a dfa");
        } else {
          m.add_epsilon(from, to);
        }
        continue;
      }
      char c = parse_symbol(l.tokens[2], *sigma, l.number);
      if constexpr (std::is_same_v<Machine, Dfa>) {
        if (!seen.emplace(from, sigma->index(c)).second) {
          throw ParseError(l.number, "duplicate transition from state " + l.tokens[1] +
                                         " on '" + l.tokens[2] + "'");
        }
        m.set(from, c, to);
      } else {
        m.add_edge(from, c, to);
      }
    } else {
      throw ParseError(l.number, "unknown directive '" + key + "'");
    }
  }
  if (!sigma) throw ParseError(0, "missing 'alphabet' line");
  if (!states.declared()) throw ParseError(0, "missing 'states' line");
  if (!have_initial) throw ParseError(0, "missing 'initial' line");
  return m;
}

}  // namespace detail

inline Dfa parse_dfa(std::string_view text) {
  return detail::parse_machine<Dfa>(text, true);
}

inline Nfa parse_nfa(std::string_view text) {
  return detail::parse_machine<Nfa>(text, false);
}

using Automaton = std::variant<Dfa, Nfa>;

/// Dispatches on the header line.
inline Automaton parse_automaton(std::string_view text) {
  auto header = detail::header_of(text);
  if (header == "dfa") return parse_dfa(text);
  if (header == "nfa") return parse_nfa(text);
  throw ParseError(0, header.empty() ? "empty input" : "expected header 'dfa' or 'nfa'");
}

inline std::string to_text(const Dfa& a) {
  std::ostringstream out;
  out << "dfa\nalphabet";
  for (char c : a.alphabet.symbols()) out << ' ' << c;
  out << "\nstates";
  for (std::size_t q = 0; q < a.num_states(); ++q) out << ' ' << q;
  out << "\ninitial " << a.initial << "\naccept";
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    if (a.accepting[q]) out << ' ' << q;
  }
  out << '\n';
  for (std::size_t q = 0; q < a.num_states(); ++q) {
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      if (a.next[q][i] != kNoState) {
        out << "trans " << q << ' ' << a.alphabet[i] << ' ' << a.next[q][i] << '\n';
      }
    }
  }
  return out.str();
}

inline std::string to_text(const Nfa& n) {
  std::ostringstream out;
  out << "nfa\nalphabet";
  for (char c : n.alphabet.symbols()) out << ' ' << c;
  out << "\nstates";
  for (std::size_t q = 0; q < n.num_states(); ++q) out << ' ' << q;
  out << "\ninitial";
  for (int q : n.initial) out << ' ' << q;
  out << "\naccept";
  for (std::size_t q = 0; q < n.num_states(); ++q) {
    if (n.accepting[q]) out << ' ' << q;
  }
  out << '\n';
  for (std::size_t q = 0; q < n.num_states(); ++q) {
    for (const auto& e : n.edges[q]) {
      out << "trans " << q << ' ';
      if (e.symbol == kEpsilon) {
        out << "eps";
      } else {
        out << n.alphabet[e.symbol];
      }
      out << ' ' << e.target << '\n';
    }
  }
  return out.str();
}

}  // namespace rrkit
