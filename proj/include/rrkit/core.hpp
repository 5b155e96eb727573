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

// Words, alphabets and the error hierarchy shared by every rrkit module.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rrkit {

using Symbol = char;

// A word is a plain sequence of symbols; the empty string is the empty word.
using Word = std::string;

inline constexpr int kNoState = -1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based, 0 when no line applies.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class AlphabetError : public Error {
 public:
  using Error::Error;
};

// An operation was applied to a filter of the wrong class (easy vs hard).
class ClassificationError : public Error {
 public:
  using Error::Error;
};

// A construction failed its own certificate check. Always a bug.
class VerificationError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

inline bool is_symbol_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

// Finite, explicitly ordered symbol set. Declaration order is the order used
// for lexicographic tie-breaking everywhere.
class Alphabet {
 public:
  Alphabet() { index_.fill(-1); }

  explicit Alphabet(std::string_view symbols) : Alphabet() {
    for (char c : symbols) add(c);
  }

  // Appends `c`; returns false if it was already present.
  bool add(char c) {
    if (!is_symbol_char(c)) {
      throw AlphabetError(std::string("invalid symbol '") + c + "'");
    }
    auto& slot = index_[static_cast<unsigned char>(c)];
    if (slot >= 0) return false;
    slot = static_cast<int>(symbols_.size());
    symbols_.push_back(c);
    return true;
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  char operator[](std::size_t i) const { return symbols_[i]; }
  const std::string& symbols() const noexcept { return symbols_; }

  // Index of `c`, or -1.
  int index(char c) const noexcept {
    auto u = static_cast<unsigned char>(c);
    return u < index_.size() ? index_[u] : -1;
  }
  bool contains(char c) const noexcept { return index(c) >= 0; }

  bool contains_all(std::string_view w) const noexcept {
    for (char c : w) {
      if (!contains(c)) return false;
    }
    return true;
  }
  bool subset_of(const Alphabet& other) const noexcept {
    return other.contains_all(symbols_);
  }
  bool same_symbols(const Alphabet& other) const noexcept {
    return size() == other.size() && subset_of(other);
  }

  bool operator==(const Alphabet& other) const noexcept {
    return symbols_ == other.symbols_;
  }

 private:
  std::string symbols_;
  std::array<int, 128> index_;
};

// Symbols of `a` in order, followed by the symbols of `b` not in `a`.
inline Alphabet unite(const Alphabet& a, const Alphabet& b) {
  Alphabet out = a;
  for (char c : b.symbols()) out.add(c);
  return out;
}

// Sorted set of the symbols occurring in `w`.
inline Alphabet alphabet_of(std::string_view w) {
  std::array<bool, 128> seen{};
  for (char c : w) seen[static_cast<unsigned char>(c) & 0x7f] = true;
  Alphabet out;
  for (int c = 0; c < 128; ++c) {
    if (seen[c]) out.add(static_cast<char>(c));
  }
  return out;
}

// Shortlex order under the alphabet's declaration order.
inline bool shortlex_less(const Alphabet& sigma, const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return sigma.index(a[i]) < sigma.index(b[i]);
  }
  return false;
}

// The empty word is written `-` in every text format.
inline std::string format_word(const Word& w) { return w.empty() ? "-" : w; }

inline Word parse_word(std::string_view token, std::size_t line = 0) {
  if (token == "-") return {};
  for (char c : token) {
    if (!is_symbol_char(c)) {
      throw ParseError(line, "invalid symbol '" + std::string(1, c) +
                                 "' in word '" + std::string(token) + "'");
    }
  }
  return Word(token);
}

inline bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && w.compare(0, p.size(), p) == 0;
}

inline Word power(const Word& w, std::size_t k) {
  Word out;
  out.reserve(w.size() * k);
  for (std::size_t i = 0; i < k; ++i) out += w;
  return out;
}

}  // namespace rrkit
