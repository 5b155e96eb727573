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

#include <gtest/gtest.h>

#include "support.hpp"

namespace rrkit {
namespace {

using testing::regex_dfa;
using testing::Rng;

const Alphabet kAB("ab");
const HardnessWitness kSigmaWitness{0, "", "a", "b", ""};

TEST(Plan, UniversalFilter) {
  CoverPlan plan = plan_cover(kSigmaWitness, kAB);
  EXPECT_EQ(plan.zero_code, "ab");
  EXPECT_EQ(plan.one_code, "ba");
  EXPECT_EQ(plan.exit_code, "aa");
  EXPECT_EQ(plan.code_length, 1u);
  EXPECT_EQ(plan_cover(kSigmaWitness, Alphabet("abcde")).code_length, 3u);
  EXPECT_EQ(plan_cover(kSigmaWitness, Alphabet("a")).code_length, 1u);
}

TEST(Plan, DispatchWordsAreSeparable) {
  auto words = testing::words_up_to(kAB, 3);
  for (const auto& u : words) {
    for (const auto& v : words) {
      // Witness cycles are nonempty and prefix-incomparable.
      if (u.empty() || v.empty() || is_prefix(u, v) || is_prefix(v, u)) continue;
      for (const auto& s : {Word(""), Word("b")}) {
        CoverPlan p = plan_cover({0, "", u, v, s}, kAB);
        const Word* codes[] = {&p.zero_code, &p.one_code, &p.exit_code};
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) {
            if (i != j) {
              ASSERT_FALSE(is_prefix(*codes[i], *codes[j])) << u << ' ' << v;
            }
          }
        }
      }
    }
  }
}

TEST(Surjection, UniversalFilter) {
  Dfa sigma = universal_dfa(kAB);
  Dfst t = surjection_to_star(sigma, kSigmaWitness, kAB);
  // ab and ba each carry one code bit; aa ends the word.
  EXPECT_EQ(apply(t, "abaa").output, "a");
  EXPECT_EQ(apply(t, "abbaaa").output, "ab");
  EXPECT_EQ(apply(t, "aa"), (TransductionResult{true, ""}));
  EXPECT_FALSE(apply(t, "ab").defined);
  EXPECT_TRUE(equivalent(image_nfa(t, sigma), regex_to_nfa("(a|b)*")));
  EXPECT_TRUE(verify_cover(t, sigma, universal_dfa(kAB)));
}

TEST(Surjection, LargerAndUnaryTargets) {
  Dfa sigma = universal_dfa(kAB);
  for (auto symbols : {"x", "xyz", "pqrstuvw", "abcde"}) {
    Alphabet gamma(symbols);
    Dfst t = surjection_to_star(sigma, kSigmaWitness, gamma);
    EXPECT_TRUE(verify_cover(t, sigma, universal_dfa(gamma))) << symbols;
    CoverPlan plan = plan_cover(kSigmaWitness, gamma);
    for (const auto& y : testing::words_up_to(gamma, 2)) {
      EXPECT_EQ(apply(t, encode_preimage(plan, y)).output, y);
    }
  }
}

TEST(Surjection, EmptyTargetAlphabet) {
  Dfa sigma = universal_dfa(kAB);
  Dfst t = surjection_to_star(sigma, kSigmaWitness, Alphabet());
  EXPECT_TRUE(equivalent(image_nfa(t, sigma), word_nfa("", Alphabet())));
}

TEST(Surjection, InvalidWitness) {
  Dfa ab = minimize(regex_dfa("(ab)*", kAB));
  EXPECT_THROW(surjection_to_star(ab, {0, "", "ab", "ba", ""}, kAB), PreconditionError);
}

TEST(Surjection, DomainInsideFilter) {
  Rng rng(41);
  int hard = 0;
  while (hard < 15) {
    Dfa f = testing::random_dfa(rng, kAB, 4);
    auto c = classify(f);
    if (!is_hard(c)) continue;
    ++hard;
    const auto& w = std::get<HardFilter>(c).witness;
    Alphabet gamma("xyz");
    Dfst t = surjection_to_star(f, w, gamma);
    CoverPlan plan = plan_cover(w, gamma);
    for (const auto& y : testing::words_up_to(gamma, 3)) {
      Word x = encode_preimage(plan, y);
      ASSERT_TRUE(run(f, x)) << to_text(f) << x;
      ASSERT_EQ(apply(t, x).output, y);
    }
  }
}

TEST(Cover, Examples) {
  Dfa sigma = universal_dfa(kAB);
  Dfa abstar = regex_dfa("(ab)*", kAB);
  Dfst t = cover(sigma, abstar);
  EXPECT_TRUE(equivalent(image_nfa(t, sigma), abstar));

  Dfst none = cover(sigma, empty_dfa(kAB));
  EXPECT_FALSE(shortest_word(image_nfa(none, sigma)));

  Dfst self = cover(sigma, sigma);
  EXPECT_TRUE(equivalent(image_nfa(self, sigma), sigma));

  EXPECT_THROW(cover(regex_dfa("a*", kAB), abstar), ClassificationError);
}

TEST(Cover, SurvivesTextRoundTrip) {
  Dfa f = minimize(regex_dfa("b(ab|ba)*a", kAB));
  Dfa r = regex_dfa("c(ab)*|b", Alphabet("abc"));
  Dfst t = cover(f, r);
  EXPECT_TRUE(verify_cover(parse_dfst(to_text(t)), f, r));
}

TEST(VerifyCover, Examples) {
  Dfa astar = regex_dfa("a*", kAB);
  auto v = verify_cover(identity_transducer(astar), astar, regex_dfa("b*", kAB));
  EXPECT_FALSE(v);
  EXPECT_EQ(v.separator, Word("a"));
  EXPECT_TRUE(v.in_image);

  Rng rng(42);
  Dfst any = testing::random_dfst(rng, kAB, kAB, 3);
  EXPECT_TRUE(verify_cover(any, empty_dfa(kAB), empty_dfa(kAB)));
}

}  // namespace
}  // namespace rrkit
