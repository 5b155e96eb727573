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

// Covering transducers for hard filters.
//
// From a hardness witness (access p, cycles u and v, exit s) the surjection
// reads p silently, then a stream of code blocks U = uv (bit 0) and V = vu
// (bit 1), and finally the exit code S = uus. Every L bits decode to one
// target letter. U, V and S are pairwise prefix-incomparable, so a trie over
// them dispatches deterministically.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "rrkit/automaton.hpp"
#include "rrkit/classify.hpp"
#include "rrkit/core.hpp"
#include "rrkit/operations.hpp"
#include "rrkit/transducer.hpp"

namespace rrkit {

struct CoverPlan {
  HardnessWitness witness;
  Word zero_code;  // U
  Word one_code;   // V
  Word exit_code;  // S
  Alphabet target;
  std::size_t code_length = 1;

  // Letter emitted for an L-bit block value; values past the end of the
  // target alphabet fall back to its last letter.
  char decode(std::size_t value) const {
    return target[std::min(value, target.size() - 1)];
  }

  // L-bit code of the i-th target letter, most significant bit first.
  std::vector<bool> encode(std::size_t letter) const {
    std::vector<bool> bits(code_length);
    for (std::size_t k = 0; k < code_length; ++k) {
      bits[k] = (letter >> (code_length - 1 - k)) & 1u;
    }
    return bits;
  }
};

inline CoverPlan plan_cover(const HardnessWitness& w, const Alphabet& target) {
  CoverPlan plan;
  plan.witness = w;
  std::tie(plan.zero_code, plan.one_code) = normalize_witness(w.first_cycle, w.second_cycle);
  plan.exit_code = w.first_cycle + w.first_cycle + w.exit;
  plan.target = target;
  std::size_t length = 0;
  while ((std::size_t{1} << length) < target.size()) ++length;
  plan.code_length = std::max<std::size_t>(1, length);
  const Word* codes[] = {&plan.zero_code, &plan.one_code, &plan.exit_code};
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (is_prefix(*codes[i], *codes[j]) || is_prefix(*codes[j], *codes[i])) {
        throw VerificationError("plan_cover: dispatch words are prefix-comparable");
      }
    }
  }
  return plan;
}

/// Input words in the domain of the surjection that encode `target_word`.
inline Word encode_preimage(const CoverPlan& plan, const Word& target_word) {
  Word out = plan.witness.access;
  for (char c : target_word) {
    int letter = plan.target.index(c);
    if (letter < 0) throw AlphabetError(std::string("symbol '") + c + "' not in target alphabet");
    for (bool bit : plan.encode(static_cast<std::size_t>(letter))) {
      out += bit ? plan.one_code : plan.zero_code;
    }
  }
  return out + plan.exit_code;
}

namespace detail {

// Inserts `word` into the trie rooted at `root`; the last symbol jumps to
// `target` emitting `output`, inner symbols emit nothing.
inline void insert_dispatch(Dfst& t, int root, const Word& word, Word output, int target) {
  int cur = root;
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    const DfstArc* a = t.arc(cur, word[i]);
    if (a) {
      cur = a->target;
      continue;
    }
    int fresh = t.add_state();
    t.set(cur, word[i], {}, fresh);
    cur = fresh;
  }
  if (t.arc(cur, word.back())) throw VerificationError("dispatch trie collision");
  t.set(cur, word.back(), std::move(output), target);
}

}  // namespace detail

/// Transducer whose image of L(f) is target*. `w` must be a valid witness for
/// trim(f). The image equivalence is checked before returning.
inline Dfst surjection_to_star(const Dfa& f, const HardnessWitness& w, const Alphabet& target) {
  if (auto check = check_witness(trim(f), w); !check) {
    throw PreconditionError("surjection_to_star: invalid witness: " + check.reason);
  }
  const CoverPlan plan = plan_cover(w, target);
  const std::size_t bits = plan.code_length;

  Dfst t(f.alphabet, target, 1);
  t.initial = 0;
  int cur = 0;
  for (char c : w.access) {
    int next = t.add_state();
    t.set(cur, c, {}, next);
    cur = next;
  }
  // One trie root per partial code (bit prefix of length 0..L-1), indexed
  // heap-style: prefix value v of length k lives at (1 << k) - 1 + v.
  const std::size_t nodes = (std::size_t{1} << bits) - 1;
  std::vector<int> node_state(nodes);
  node_state[0] = cur;
  for (std::size_t k = 1; k < nodes; ++k) node_state[k] = t.add_state();
  const int accept = t.add_state(true);

  for (std::size_t depth = 0; depth < bits; ++depth) {
    for (std::size_t value = 0; value < (std::size_t{1} << depth); ++value) {
      const int root = node_state[(std::size_t{1} << depth) - 1 + value];
      if (!target.empty()) {
        for (std::size_t bit = 0; bit < 2; ++bit) {
          const Word& code = bit ? plan.one_code : plan.zero_code;
          const std::size_t child = value * 2 + bit;
          if (depth + 1 == bits) {
            detail::insert_dispatch(t, root, code, Word(1, plan.decode(child)), node_state[0]);
          } else {
            detail::insert_dispatch(t, root, code, {},
                                    node_state[(std::size_t{1} << (depth + 1)) - 1 + child]);
          }
        }
      }
      if (depth == 0) detail::insert_dispatch(t, root, plan.exit_code, {}, accept);
    }
  }
  t = canonicalize(t);

  auto same = equivalent(image_nfa(t, f), to_nfa(universal_dfa(target)));
  if (!same) {
    throw VerificationError("surjection_to_star: image differs from target* on '" +
                            format_word(*same.separator) + "'");
  }
  return t;
}

struct CoverVerdict {
  bool verified = true;
  std::optional<Word> separator;
  // True when the separator is in the image but not the target.
  bool in_image = false;

  explicit operator bool() const noexcept { return verified; }
};

/// Checks t(L(f)) = L(r).
inline CoverVerdict verify_cover(const Dfst& t, const Dfa& f, const Dfa& r) {
  auto same = equivalent(image_nfa(t, f), to_nfa(r));
  if (same) return {};
  return {false, same.separator, same.accepted_by == 0};
}

/// Covering transducer mapping L(f) onto L(r): the surjection onto r's
/// alphabet composed with the identity on L(r). Throws ClassificationError
/// for easy filters.
inline Dfst cover(const Dfa& f, const Dfa& r) {
  auto c = classify(f);
  const auto* hard = std::get_if<HardFilter>(&c);
  if (!hard) throw ClassificationError("cover: filter is easy");
  Dfst onto = surjection_to_star(f, hard->witness, r.alphabet);
  Dfst result = canonicalize(compose_dfst(onto, identity_transducer(r)));
  if (auto verdict = verify_cover(result, f, r); !verdict) {
    throw VerificationError("cover: image differs from target on '" +
                            format_word(*verdict.separator) + "'");
  }
  return result;
}

}  // namespace rrkit
