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

// Thompson construction for a small regex dialect: symbols, concatenation,
// `|`, postfix `*` and parentheses. Whitespace is ignored. The empty pattern
// denotes the empty word.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "rrkit/automaton.hpp"
#include "rrkit/core.hpp"

namespace rrkit {

namespace detail {

class RegexCompiler {
 public:
  RegexCompiler(std::string_view pattern, Nfa& out) : out_(out) {
    for (char c : pattern) {
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') text_.push_back(c);
    }
  }

  struct Fragment {
    int start;
    int end;
  };

  Fragment compile() {
    if (text_.empty()) return epsilon();
    Fragment f = alternation();
    if (pos_ < text_.size()) {
      throw ParseError(1, text_[pos_] == ')' ? "unbalanced parentheses"
                                             : "unexpected '" + std::string(1, text_[pos_]) + "'");
    }
    return f;
  }

 private:
  Fragment epsilon() {
    int s = out_.add_state(), e = out_.add_state();
    out_.add_epsilon(s, e);
    return {s, e};
  }

  Fragment alternation() {
    Fragment left = concatenation();
    while (pos_ < text_.size() && text_[pos_] == '|') {
      ++pos_;
      Fragment right = concatenation();
      int s = out_.add_state(), e = out_.add_state();
      out_.add_epsilon(s, left.start);
      out_.add_epsilon(s, right.start);
      out_.add_epsilon(left.end, e);
      out_.add_epsilon(right.end, e);
      left = {s, e};
    }
    return left;
  }

  Fragment concatenation() {
    std::optional<Fragment> acc;
    while (pos_ < text_.size() && text_[pos_] != '|' && text_[pos_] != ')') {
      Fragment next = repetition();
      if (!acc) {
        acc = next;
      } else {
        out_.add_epsilon(acc->end, next.start);
        acc->end = next.end;
      }
    }
    if (!acc) throw ParseError(1, "dangling operator at position " + std::to_string(pos_));
    return *acc;
  }

  Fragment repetition() {
    Fragment f = atom();
    while (pos_ < text_.size() && text_[pos_] == '*') {
      ++pos_;
      int s = out_.add_state(), e = out_.add_state();
      out_.add_epsilon(s, f.start);
      out_.add_epsilon(s, e);
      out_.add_epsilon(f.end, f.start);
      out_.add_epsilon(f.end, e);
      f = {s, e};
    }
    return f;
  }

  Fragment atom() {
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Fragment inner = alternation();
      if (pos_ >= text_.size() || text_[pos_] != ')') throw ParseError(1, "unbalanced parentheses");
      ++pos_;
      return inner;
    }
    if (c == '*') throw ParseError(1, "dangling operator '*' at position " + std::to_string(pos_));
    if (!is_symbol_char(c)) {
      throw ParseError(1, "unexpected '" + std::string(1, c) + "' in pattern");
    }
    ++pos_;
    int s = out_.add_state(), e = out_.add_state();
    out_.add_edge(s, c, e);
    return {s, e};
  }

  Nfa& out_;
  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Compiles `pattern` over `sigma`, or over the sorted set of its literals
/// when no alphabet is given. Literals outside `sigma` raise AlphabetError.
inline Nfa regex_to_nfa(std::string_view pattern,
                        const std::optional<Alphabet>& sigma = std::nullopt) {
  Alphabet symbols;
  if (sigma) {
    symbols = *sigma;
  } else {
    std::string literals;
    for (char c : pattern) {
      if (is_symbol_char(c)) literals.push_back(c);
    }
    symbols = alphabet_of(literals);
  }
  Nfa out(symbols);
  detail::RegexCompiler compiler(pattern, out);
  auto [start, end] = compiler.compile();
  out.initial = {start};
  out.accepting[end] = true;
  return canonicalize(out);
}

}  // namespace rrkit
