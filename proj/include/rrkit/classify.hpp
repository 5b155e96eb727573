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

// Hard/easy classification of regular filters.
//
// A filter is hard when some state of its trimmed automaton carries two
// cycles that do not commute; otherwise every cycle family is generated by a
// single word and the language is bounded. Both outcomes carry a certificate
// that can be re-checked independently of how it was found.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rrkit/automaton.hpp"
#include "rrkit/core.hpp"
#include "rrkit/operations.hpp"
#include "rrkit/text_format.hpp"

namespace rrkit {

/// Two prefix-incomparable cycles at `state` of the trimmed filter, with an
/// access word reaching it and an exit word leaving it for acceptance.
struct HardnessWitness {
  int state = 0;
  Word access;
  Word first_cycle;
  Word second_cycle;
  Word exit;

  bool operator==(const HardnessWitness&) const = default;
};

struct LoopBlock {
  Word loop;    // iterated, nonempty
  Word bridge;  // read once after the loop

  bool operator==(const LoopBlock&) const = default;
};

/// prefix · loop₁* bridge₁ · … · loopₙ* bridgeₙ
struct BoundedExpr {
  Word prefix;
  std::vector<LoopBlock> blocks;

  bool operator==(const BoundedExpr&) const = default;
};

struct HardFilter {
  HardnessWitness witness;

  bool operator==(const HardFilter&) const = default;
};

struct EasyFilter {
  std::vector<BoundedExpr> decomposition;
  std::vector<Word> envelope;

  bool operator==(const EasyFilter&) const = default;
};

using Classification = std::variant<HardFilter, EasyFilter>;

inline bool is_hard(const Classification& c) { return std::holds_alternative<HardFilter>(c); }

/// Shortest x with w = x^k, via the KMP failure function.
inline Word primitive_root(const Word& w) {
  if (w.empty()) throw PreconditionError("primitive_root of the empty word");
  const std::size_t n = w.size();
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && w[i] != w[k]) k = fail[k];
    if (w[i] == w[k]) ++k;
    fail[i + 1] = k;
  }
  std::size_t period = n - fail[n];
  return n % period == 0 ? w.substr(0, period) : w;
}

/// (u·v, v·u): equal-length, distinct, hence prefix-incomparable cycles.
inline std::pair<Word, Word> normalize_witness(const Word& u, const Word& v) {
  Word uv = u + v, vu = v + u;
  if (uv == vu) throw PreconditionError("normalize_witness: '" + u + "' and '" + v + "' commute");
  return {std::move(uv), std::move(vu)};
}

inline Nfa expr_to_nfa(const BoundedExpr& e, const Alphabet& sigma) {
  Nfa out(sigma, 1);
  out.initial = {0};
  int cur = 0;
  auto chain = [&](const Word& w) {
    for (char c : w) {
      if (!sigma.contains(c)) {
        throw AlphabetError(std::string("symbol '") + c + "' not in alphabet");
      }
      int next = out.add_state();
      out.add_edge(cur, c, next);
      cur = next;
    }
  };
  chain(e.prefix);
  for (const auto& b : e.blocks) {
    if (b.loop.empty()) throw PreconditionError("bounded expression with an empty loop word");
    // A fresh hub per loop; sharing one between adjacent loops would let
    // them interleave.
    int hub = out.add_state();
    out.add_epsilon(cur, hub);
    cur = hub;
    chain(b.loop.substr(0, b.loop.size() - 1));
    if (!sigma.contains(b.loop.back())) {
      throw AlphabetError(std::string("symbol '") + b.loop.back() + "' not in alphabet");
    }
    out.add_edge(cur, b.loop.back(), hub);
    cur = hub;
    chain(b.bridge);
  }
  out.accepting[cur] = true;
  return out;
}

inline Nfa decomposition_nfa(const std::vector<BoundedExpr>& exprs, const Alphabet& sigma) {
  std::vector<Nfa> parts;
  parts.reserve(exprs.size());
  for (const auto& e : exprs) parts.push_back(expr_to_nfa(e, sigma));
  return union_nfa(parts, sigma);
}

/// w₁* w₂* … wₙ*
inline Nfa star_product_nfa(const std::vector<Word>& words, const Alphabet& sigma) {
  std::vector<BoundedExpr> single(1);
  for (const auto& w : words) single[0].blocks.push_back({w, {}});
  return expr_to_nfa(single[0], sigma);
}

/// Letter-wise envelope: in expression order, each prefix and bridge
/// contributes its letters as singleton factors and each loop contributes
/// itself.
inline std::vector<Word> envelope_of(const std::vector<BoundedExpr>& exprs) {
  std::vector<Word> out;
  auto letters = [&](const Word& w) {
    for (char c : w) out.emplace_back(1, c);
  };
  for (const auto& e : exprs) {
    letters(e.prefix);
    for (const auto& b : e.blocks) {
      out.push_back(b.loop);
      letters(b.bridge);
    }
  }
  return out;
}

namespace detail {

inline Alphabet alphabet_with(const Alphabet& base, const std::vector<Word>& words) {
  Alphabet out = base;
  for (const auto& w : words) {
    for (char c : w) out.add(c);
  }
  return out;
}

inline Alphabet expr_alphabet(const Alphabet& base, const std::vector<BoundedExpr>& exprs) {
  std::vector<Word> words;
  for (const auto& e : exprs) {
    words.push_back(e.prefix);
    for (const auto& b : e.blocks) {
      words.push_back(b.loop);
      words.push_back(b.bridge);
    }
  }
  return alphabet_with(base, words);
}

// Shortlex-least nonempty cycle at q that stays inside q's component.
inline Word shortest_cycle(const Dfa& a, const Condensation& c, int q) {
  std::vector<bool> inside(a.num_states());
  for (std::size_t s = 0; s < a.num_states(); ++s) inside[s] = c.component[s] == c.component[q];
  std::optional<Word> best;
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    if (!inside[s]) continue;
    for (std::size_t i = 0; i < a.alphabet.size(); ++i) {
      if (a.next[s][i] != q) continue;
      auto to_s = shortest_path_word(a, q, [&](int r) { return r == static_cast<int>(s); }, &inside);
      if (!to_s) continue;
      Word cand = *to_s + a.alphabet[i];
      if (!best || shortlex_less(a.alphabet, cand, *best)) best = cand;
    }
  }
  if (!best) throw VerificationError("shortest_cycle: state is not on a cycle");
  return *best;
}

// The automaton of all cycles at q: q's component, entered and left at q.
inline Dfa cycle_automaton(const Dfa& a, const Condensation& c, int q) {
  Dfa out = a;
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    out.accepting[s] = static_cast<int>(s) == q;
    for (auto& t : out.next[s]) {
      if (t != kNoState && c.component[t] != c.component[q]) t = kNoState;
    }
  }
  out.initial = q;
  return out;
}

// Root*: a |root|-state ring.
inline Dfa root_star_dfa(const Word& root, const Alphabet& sigma) {
  Dfa out(sigma, root.size());
  out.accepting[0] = true;
  for (std::size_t i = 0; i < root.size(); ++i) {
    out.set(static_cast<int>(i), root[i], static_cast<int>((i + 1) % root.size()));
  }
  return out;
}

}  // namespace detail

/// Scans the trimmed automaton for a state whose cycles are not all powers of
/// one word. `trimmed` must be the output of trim().
inline std::optional<HardnessWitness> find_hardness_witness(const Dfa& trimmed) {
  const auto cond = condense(trimmed);
  for (std::size_t s = 0; s < trimmed.num_states(); ++s) {
    const int q = static_cast<int>(s);
    if (!cond.nontrivial[cond.component[q]]) continue;
    Word u = detail::shortest_cycle(trimmed, cond, q);
    Word root = primitive_root(u);
    auto check = includes(detail::root_star_dfa(root, trimmed.alphabet),
                          detail::cycle_automaton(trimmed, cond, q));
    if (check) continue;
    // The counterexample is a cycle outside root*, so it cannot commute with
    // u; being the shortest such cycle it is also prefix-incomparable with u.
    HardnessWitness w;
    w.state = q;
    w.first_cycle = std::move(u);
    w.second_cycle = *check.counterexample;
    w.access = *shortest_path_word(trimmed, trimmed.initial, [&](int r) { return r == q; });
    w.exit = *shortest_path_word(trimmed, q, [&](int r) { return trimmed.accepting[r] != 0; });
    return w;
  }
  return std::nullopt;
}

/// Outcome of re-checking a certificate; `reason` explains a failure.
struct CertificateCheck {
  bool ok = true;
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
  static CertificateCheck fail(std::string why) { return {false, std::move(why)}; }
};

/// Replays a witness against a trimmed automaton.
inline CertificateCheck check_witness(const Dfa& trimmed, const HardnessWitness& w) {
  if (w.state < 0 || static_cast<std::size_t>(w.state) >= trimmed.num_states()) {
    return CertificateCheck::fail("witness state out of range");
  }
  for (const Word* word : {&w.access, &w.first_cycle, &w.second_cycle, &w.exit}) {
    if (!trimmed.alphabet.contains_all(*word)) {
      return CertificateCheck::fail("witness word '" + *word + "' leaves the alphabet");
    }
  }
  if (trimmed.walk(trimmed.initial, w.access) != w.state) {
    return CertificateCheck::fail("access word does not reach the witness state");
  }
  if (w.first_cycle.empty() || w.second_cycle.empty()) {
    return CertificateCheck::fail("empty cycle");
  }
  if (trimmed.walk(w.state, w.first_cycle) != w.state ||
      trimmed.walk(w.state, w.second_cycle) != w.state) {
    return CertificateCheck::fail("cycle words do not return to the witness state");
  }
  if (!trimmed.is_accepting(trimmed.walk(w.state, w.exit))) {
    return CertificateCheck::fail("exit word does not reach acceptance");
  }
  if (is_prefix(w.first_cycle, w.second_cycle) || is_prefix(w.second_cycle, w.first_cycle)) {
    return CertificateCheck::fail("cycles are prefix-comparable");
  }
  return {};
}

/// Checks that `exprs` denote exactly L(f) and that `envelope` bounds it.
inline CertificateCheck check_easy(const Dfa& f, const EasyFilter& easy) {
  for (const auto& e : easy.decomposition) {
    for (const auto& b : e.blocks) {
      if (b.loop.empty()) return CertificateCheck::fail("empty loop word");
    }
  }
  for (const auto& w : easy.envelope) {
    if (w.empty()) return CertificateCheck::fail("empty envelope word");
  }
  Alphabet sigma = detail::alphabet_with(detail::expr_alphabet(f.alphabet, easy.decomposition),
                                         easy.envelope);
  auto same = equivalent(decomposition_nfa(easy.decomposition, sigma), to_nfa(widen(f, sigma)));
  if (!same) {
    return CertificateCheck::fail("decomposition differs from the filter on '" +
                                  format_word(*same.separator) + "'");
  }
  auto bound = includes(determinize(star_product_nfa(easy.envelope, sigma)), widen(f, sigma));
  if (!bound) {
    return CertificateCheck::fail("envelope misses '" + format_word(*bound.counterexample) + "'");
  }
  return {};
}

inline CertificateCheck verify_classification(const Dfa& f, const Classification& c) {
  if (const auto* hard = std::get_if<HardFilter>(&c)) return check_witness(trim(f), hard->witness);
  return check_easy(f, std::get<EasyFilter>(c));
}

namespace detail {

// Path enumeration over the condensation of an easy trimmed automaton. Every
// nontrivial component is a simple cycle; entering it at e contributes a
// block whose loop is the cycle read from e.
// Merges pairs P·Q and P·x·x*·Q into P·x*·Q until no pair is left. Path
// enumeration produces such pairs whenever a loop is entered by its own
// last letters, e.g. a* ∪ a*·b·b* for a*b*.
inline void absorb_skips(std::vector<BoundedExpr>& exprs) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k < exprs.size() && !changed; ++k) {
      for (std::size_t j = 0; j < exprs[k].blocks.size() && !changed; ++j) {
        BoundedExpr merged = exprs[k];
        Word& before = j == 0 ? merged.prefix : merged.blocks[j - 1].bridge;
        const Word& loop = merged.blocks[j].loop;
        if (before.size() < loop.size() ||
            before.compare(before.size() - loop.size(), loop.size(), loop) != 0) {
          continue;
        }
        before.resize(before.size() - loop.size());
        // The expression that skips block j entirely.
        BoundedExpr skip = merged;
        Word& skip_before = j == 0 ? skip.prefix : skip.blocks[j - 1].bridge;
        skip_before += skip.blocks[j].bridge;
        skip.blocks.erase(skip.blocks.begin() + static_cast<std::ptrdiff_t>(j));
        for (std::size_t m = 0; m < exprs.size(); ++m) {
          if (m == k || !(exprs[m] == skip)) continue;
          exprs[k] = std::move(merged);
          exprs.erase(exprs.begin() + static_cast<std::ptrdiff_t>(m));
          changed = true;
          break;
        }
      }
    }
  }
}

class Decomposer {
 public:
  explicit Decomposer(const Dfa& a) : a_(a), cond_(condense(a)) {}

  std::vector<BoundedExpr> run() {
    if (a_.num_states() == 1 && !a_.accepting[0] && !cond_.nontrivial[0]) {
      bool no_moves = true;
      for (int t : a_.next[0]) no_moves = no_moves && t == kNoState;
      if (no_moves) return {};
    }
    extend(a_.initial, BoundedExpr{});
    absorb_skips(out_);
    return std::move(out_);
  }

 private:
  static Word& tail(BoundedExpr& e) {
    return e.blocks.empty() ? e.prefix : e.blocks.back().bridge;
  }

  void extend(int entry, BoundedExpr expr) {
    const int comp = cond_.component[entry];
    if (!cond_.nontrivial[comp]) {
      if (a_.accepting[entry]) out_.push_back(expr);
      for (std::size_t i = 0; i < a_.alphabet.size(); ++i) {
        int t = a_.next[entry][i];
        if (t == kNoState) continue;
        BoundedExpr next = expr;
        tail(next).push_back(a_.alphabet[i]);
        extend(t, std::move(next));
      }
      return;
    }
    // Walk the simple cycle once from the entry state.
    std::vector<int> ring{entry};
    Word loop;
    for (int q = entry;;) {
      int inner = kNoState;
      char via = 0;
      for (std::size_t i = 0; i < a_.alphabet.size(); ++i) {
        int t = a_.next[q][i];
        if (t == kNoState || cond_.component[t] != comp) continue;
        if (inner != kNoState) throw ClassificationError("decompose: filter is not bounded");
        inner = t;
        via = a_.alphabet[i];
      }
      loop.push_back(via);
      if (inner == entry) break;
      ring.push_back(inner);
      q = inner;
    }
    expr.blocks.push_back({loop, {}});
    for (std::size_t k = 0; k < ring.size(); ++k) {
      const int q = ring[k];
      const Word along = loop.substr(0, k);
      if (a_.accepting[q]) {
        BoundedExpr done = expr;
        done.blocks.back().bridge = along;
        out_.push_back(std::move(done));
      }
      for (std::size_t i = 0; i < a_.alphabet.size(); ++i) {
        int t = a_.next[q][i];
        if (t == kNoState || cond_.component[t] == comp) continue;
        BoundedExpr next = expr;
        next.blocks.back().bridge = along + a_.alphabet[i];
        extend(t, std::move(next));
      }
    }
  }

  const Dfa& a_;
  Condensation cond_;
  std::vector<BoundedExpr> out_;
};

}  // namespace detail

/// Bounded-expression decomposition of an easy filter, verified equivalent
/// to the filter before it is returned.
inline std::vector<BoundedExpr> decompose(const Dfa& f) {
  Dfa t = trim(f);
  if (find_hardness_witness(t)) throw ClassificationError("decompose: filter is hard");
  auto exprs = detail::Decomposer(t).run();
  EasyFilter cert{exprs, envelope_of(exprs)};
  if (auto check = check_easy(f, cert); !check) {
    throw VerificationError("decompose: " + check.reason);
  }
  return exprs;
}

inline std::vector<Word> envelope(const Dfa& f) { return envelope_of(decompose(f)); }

/// Classifies `f` and re-verifies the certificate before returning it.
inline Classification classify(const Dfa& f) {
  Dfa t = trim(f);
  Classification result;
  if (auto w = find_hardness_witness(t)) {
    result = HardFilter{*w};
  } else {
    auto exprs = detail::Decomposer(t).run();
    auto env = envelope_of(exprs);
    result = EasyFilter{std::move(exprs), std::move(env)};
  }
  if (auto check = verify_classification(f, result); !check) {
    throw VerificationError("classify: " + check.reason);
  }
  return result;
}

// Certificate text:
//
//   hard q=<id> p=<word|-> u=<word> v=<word> s=<word|->
//
//   easy
//   expr p=<word|-> blocks=(x,y);(x,y)     (blocks=- when there are none)
//   envelope w1 w2 ...

inline std::string to_text(const HardnessWitness& w) {
  std::ostringstream out;
  out << "hard q=" << w.state << " p=" << format_word(w.access) << " u="
      << format_word(w.first_cycle) << " v=" << format_word(w.second_cycle)
      << " s=" << format_word(w.exit) << '\n';
  return out.str();
}

inline std::string to_text(const BoundedExpr& e) {
  std::ostringstream out;
  out << "expr p=" << format_word(e.prefix) << " blocks=";
  if (e.blocks.empty()) out << '-';
  for (std::size_t i = 0; i < e.blocks.size(); ++i) {
    if (i > 0) out << ';';
    out << '(' << format_word(e.blocks[i].loop) << ',' << format_word(e.blocks[i].bridge) << ')';
  }
  out << '\n';
  return out.str();
}

inline std::string to_text(const Classification& c) {
  if (const auto* hard = std::get_if<HardFilter>(&c)) return to_text(hard->witness);
  const auto& easy = std::get<EasyFilter>(c);
  std::string out = "easy\n";
  for (const auto& e : easy.decomposition) out += to_text(e);
  out += "envelope";
  for (const auto& w : easy.envelope) out += " " + format_word(w);
  out += '\n';
  return out;
}

namespace detail {

inline std::string field(const std::string& token, std::string_view key, std::size_t line) {
  if (token.size() < key.size() + 1 || token.compare(0, key.size(), key) != 0 ||
      token[key.size()] != '=') {
    throw ParseError(line, "expected '" + std::string(key) + "=...', got '" + token + "'");
  }
  return token.substr(key.size() + 1);
}

inline BoundedExpr parse_expr(const Line& l) {
  if (l.tokens.size() != 3) throw ParseError(l.number, "'expr' expects p=... blocks=...");
  BoundedExpr e;
  e.prefix = parse_word(field(l.tokens[1], "p", l.number), l.number);
  std::string blocks = field(l.tokens[2], "blocks", l.number);
  if (blocks == "-" || blocks.empty()) return e;
  std::size_t pos = 0;
  while (pos < blocks.size()) {
    std::size_t close = blocks.find(')', pos);
    std::size_t comma = blocks.find(',', pos);
    if (blocks[pos] != '(' || close == std::string::npos || comma == std::string::npos ||
        comma > close) {
      throw ParseError(l.number, "malformed block list '" + blocks + "'");
    }
    LoopBlock b;
    b.loop = parse_word(blocks.substr(pos + 1, comma - pos - 1), l.number);
    b.bridge = parse_word(blocks.substr(comma + 1, close - comma - 1), l.number);
    if (b.loop.empty()) throw ParseError(l.number, "empty loop word");
    e.blocks.push_back(std::move(b));
    pos = close + 1;
    if (pos < blocks.size()) {
      if (blocks[pos] != ';') throw ParseError(l.number, "malformed block list '" + blocks + "'");
      ++pos;
    }
  }
  return e;
}

}  // namespace detail

inline Classification parse_classification(std::string_view text) {
  auto lines = detail::tokenize(text);
  // Tolerate the HARD/EASY banner the command line prints first.
  if (!lines.empty() && lines[0].tokens.size() == 1 &&
      (lines[0].tokens[0] == "HARD" || lines[0].tokens[0] == "EASY")) {
    lines.erase(lines.begin());
  }
  if (lines.empty()) throw ParseError(0, "empty certificate");
  const auto& head = lines[0];
  if (head.tokens[0] == "hard") {
    if (head.tokens.size() != 6) throw ParseError(head.number, "'hard' expects q= p= u= v= s=");
    HardnessWitness w;
    w.state = static_cast<int>(
        detail::parse_count(detail::field(head.tokens[1], "q", head.number), head.number));
    w.access = parse_word(detail::field(head.tokens[2], "p", head.number), head.number);
    w.first_cycle = parse_word(detail::field(head.tokens[3], "u", head.number), head.number);
    w.second_cycle = parse_word(detail::field(head.tokens[4], "v", head.number), head.number);
    w.exit = parse_word(detail::field(head.tokens[5], "s", head.number), head.number);
    // An optional `normalized U=.. V=..` line must agree with the cycles.
    for (std::size_t k = 1; k < lines.size(); ++k) {
      const auto& l = lines[k];
      if (k > 1 || l.tokens.size() != 3 || l.tokens[0] != "normalized") {
        throw ParseError(l.number, "unexpected line after 'hard'");
      }
      Word zero = parse_word(detail::field(l.tokens[1], "U", l.number), l.number);
      Word one = parse_word(detail::field(l.tokens[2], "V", l.number), l.number);
      if (zero != w.first_cycle + w.second_cycle || one != w.second_cycle + w.first_cycle) {
        throw ParseError(l.number, "normalized pair does not match the cycles");
      }
    }
    return HardFilter{w};
  }
  if (head.tokens[0] != "easy" || head.tokens.size() != 1) {
    throw ParseError(head.number, "expected 'hard' or 'easy'");
  }
  EasyFilter easy;
  bool have_envelope = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& l = lines[k];
    if (have_envelope) throw ParseError(l.number, "'envelope' must be the last line");
    if (l.tokens[0] == "expr") {
      easy.decomposition.push_back(detail::parse_expr(l));
    } else if (l.tokens[0] == "envelope") {
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        easy.envelope.push_back(parse_word(l.tokens[i], l.number));
      }
      have_envelope = true;
    } else {
      throw ParseError(l.number, "unknown directive '" + l.tokens[0] + "'");
    }
  }
  if (!have_envelope) throw ParseError(0, "missing 'envelope' line");
  return easy;
}

}  // namespace rrkit
