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
using testing::words_up_to;

const Alphabet kAB("ab");

// One-state transducer on `from`* writing `to` for each `from`.
Dfst rewriter(char from, const Word& to, const Alphabet& out) {
  Dfst t(Alphabet(std::string(1, from)), out, 1);
  t.accepting[0] = true;
  t.set(0, from, to, 0);
  return t;
}

TEST(Apply, Examples) {
  Dfst id = identity_transducer(regex_dfa("a*", Alphabet("a")));
  EXPECT_EQ(apply(id, "aa"), (TransductionResult{true, "aa"}));

  Dfst ab = rewriter('a', "b", Alphabet("b"));
  EXPECT_EQ(apply(ab, "aaa").output, "bbb");

  Dfst partial(kAB, kAB, 1);
  partial.accepting[0] = true;
  partial.set(0, 'a', "a", 0);
  EXPECT_FALSE(apply(partial, "ab").defined);
  EXPECT_THROW(apply(partial, "c"), AlphabetError);
}

TEST(Apply, FinalOutputAndAcceptance) {
  Dfst t(Alphabet("a"), Alphabet("xy"), 2);
  t.accepting[1] = true;
  t.final_output[1] = "y";
  t.set(0, 'a', "x", 1);
  t.set(1, 'a', "", 0);
  EXPECT_EQ(apply(t, "a"), (TransductionResult{true, "xy"}));
  EXPECT_FALSE(apply(t, "aa").defined);
  EXPECT_FALSE(apply(t, "").defined);
}

TEST(Compose, Examples) {
  Dfa astar = regex_dfa("a*", Alphabet("a"));
  Dfst id2 = compose_dfst(identity_transducer(astar), identity_transducer(astar));
  for (const auto& w : words_up_to(Alphabet("a"), 4)) {
    EXPECT_EQ(apply(id2, w).output, w);
  }

  Dfst ab = rewriter('a', "b", Alphabet("b"));
  Dfst bc = rewriter('b', "c", Alphabet("c"));
  EXPECT_EQ(apply(compose_dfst(ab, bc), "aa").output, "cc");

  // t2 only accepts even-length inputs.
  Dfst even(Alphabet("b"), Alphabet("b"), 2);
  even.accepting[0] = true;
  even.set(0, 'b', "b", 1);
  even.set(1, 'b', "b", 0);
  Dfst c = compose_dfst(ab, even);
  EXPECT_FALSE(apply(c, "a").defined);
  EXPECT_TRUE(apply(c, "aa").defined);
}

TEST(Compose, AlphabetMismatch) {
  EXPECT_THROW(compose_dfst(rewriter('a', "b", Alphabet("b")), rewriter('a', "a", Alphabet("a"))),
               AlphabetError);
}

TEST(Compose, ChainsFinalOutputs) {
  Dfst t1(Alphabet("a"), Alphabet("b"), 1);
  t1.accepting[0] = true;
  t1.final_output[0] = "b";
  t1.set(0, 'a', "", 0);
  Dfst t2(Alphabet("b"), Alphabet("c"), 1);
  t2.accepting[0] = true;
  t2.final_output[0] = "cc";
  t2.set(0, 'b', "c", 0);
  EXPECT_EQ(apply(compose_dfst(t1, t2), "aaa").output, "ccc");
}

TEST(Compose, Property) {
  Rng rng(21);
  for (int i = 0; i < 80; ++i) {
    Dfst t1 = testing::random_dfst(rng, kAB, kAB, 1 + i % 3);
    Dfst t2 = testing::random_dfst(rng, kAB, kAB, 1 + (i / 3) % 3);
    Dfst c = compose_dfst(t1, t2);
    for (const auto& x : words_up_to(kAB, 5)) {
      auto mid = testing::transduce(t1, x);
      std::optional<Word> want = mid ? testing::transduce(t2, *mid) : std::nullopt;
      auto got = apply(c, x);
      ASSERT_EQ(got.defined, want.has_value()) << to_text(t1) << to_text(t2) << x;
      if (want) {
        ASSERT_EQ(got.output, *want);
      }
    }
  }
}

TEST(Preimage, Examples) {
  Dfa abstar = regex_dfa("(ab)*", kAB);
  Dfst id = identity_transducer(universal_dfa(kAB));
  EXPECT_TRUE(equivalent(preimage_automaton(id, abstar), abstar));

  Dfst a_ab = rewriter('a', "ab", kAB);
  EXPECT_TRUE(equivalent(preimage_automaton(a_ab, abstar), regex_to_nfa("a*")));

  EXPECT_FALSE(shortest_word(preimage_automaton(a_ab, empty_dfa(kAB))));
  EXPECT_THROW(preimage_automaton(a_ab, regex_dfa("a*", Alphabet("a"))), AlphabetError);
}

TEST(Preimage, Property) {
  Rng rng(22);
  for (int i = 0; i < 80; ++i) {
    Dfst t = testing::random_dfst(rng, kAB, kAB, 1 + i % 3);
    Dfa a = testing::random_dfa(rng, kAB, 1 + i % 4);
    Nfa pre = preimage_automaton(t, a);
    for (const auto& x : words_up_to(kAB, 5)) {
      auto y = testing::transduce(t, x);
      ASSERT_EQ(testing::nfa_accepts(pre, x), y && testing::dfa_accepts(a, *y));
    }
  }
}

TEST(Image, Examples) {
  Dfa abstar = regex_dfa("(ab)*", kAB);
  EXPECT_TRUE(equivalent(image_nfa(identity_transducer(universal_dfa(kAB)), abstar), abstar));

  Dfst ab = rewriter('a', "b", Alphabet("b"));
  EXPECT_TRUE(equivalent(image_nfa(ab, regex_dfa("a*", Alphabet("a"))), regex_to_nfa("b*")));

  EXPECT_FALSE(shortest_word(image_nfa(ab, empty_dfa(Alphabet("a")))));
  EXPECT_THROW(image_nfa(ab, abstar), AlphabetError);
}

TEST(Image, FinalOutputsAreEmitted) {
  Dfst t(Alphabet("a"), Alphabet("b"), 1);
  t.accepting[0] = true;
  t.final_output[0] = "bb";
  t.set(0, 'a', "", 0);
  Nfa img = image_nfa(t, regex_dfa("a*", Alphabet("a")));
  EXPECT_TRUE(equivalent(img, word_nfa("bb", Alphabet("b"))));
}

TEST(Image, Property) {
  Rng rng(23);
  for (int i = 0; i < 60; ++i) {
    Dfst t = testing::random_dfst(rng, kAB, kAB, 1 + i % 3);
    Dfa a = testing::random_dfa(rng, kAB, 1 + i % 4);
    Nfa img = image_nfa(t, a);
    for (const auto& x : words_up_to(kAB, 5)) {
      if (!testing::dfa_accepts(a, x)) continue;
      if (auto y = testing::transduce(t, x)) {
        ASSERT_TRUE(testing::nfa_accepts(img, *y));
      }
    }
    for (const auto& y : words_up_to(kAB, 5)) {
      auto x = testing::preimage_in(t, a, y);
      ASSERT_EQ(testing::nfa_accepts(img, y), x.has_value()) << to_text(t) << to_text(a) << y;
      if (x) {
        ASSERT_TRUE(testing::dfa_accepts(a, *x));
        ASSERT_EQ(testing::transduce(t, *x), y);
      }
    }
  }
}

TEST(Identity, Examples) {
  Dfa abstar = regex_dfa("(ab)*", kAB);
  Dfst id = identity_transducer(abstar);
  EXPECT_EQ(apply(id, "ab").output, "ab");
  EXPECT_FALSE(apply(id, "a").defined);
}

TEST(Identity, ImageOverUniversal) {
  Rng rng(24);
  for (int i = 0; i < 40; ++i) {
    Dfa a = testing::random_dfa(rng, kAB, 1 + i % 4);
    EXPECT_TRUE(equivalent(image_nfa(identity_transducer(a), universal_dfa(kAB)), a));
  }
}

TEST(Identity, IdempotentUnderComposition) {
  Rng rng(25);
  for (int i = 0; i < 30; ++i) {
    Dfst id = identity_transducer(testing::random_dfa(rng, kAB, 3));
    Dfst twice = compose_dfst(id, id);
    for (const auto& x : words_up_to(kAB, 5)) {
      ASSERT_EQ(apply(twice, x), apply(id, x));
    }
  }
}

TEST(Text, RoundTrip) {
  constexpr const char* kText = R"(dfst
in_alphabet a b
out_alphabet x
states 0 1
initial 0
accept 1
trans 0 a x 1
trans 1 b - 0
final 1 xx
)";
  Dfst t = parse_dfst(kText);
  EXPECT_EQ(apply(t, "a").output, "xxx");
  EXPECT_EQ(apply(t, "aba").output, "xxxx");
  Dfst back = parse_dfst(to_text(t));
  EXPECT_EQ(to_text(back), to_text(t));

  Rng rng(26);
  for (int i = 0; i < 30; ++i) {
    Dfst r = testing::random_dfst(rng, kAB, kAB, 3);
    Dfst rb = parse_dfst(to_text(r));
    for (const auto& x : words_up_to(kAB, 4)) {
      ASSERT_EQ(apply(rb, x), apply(r, x));
    }
  }
}

TEST(Text, Errors) {
  EXPECT_THROW(parse_dfst("dfst\nin_alphabet a\nout_alphabet a\nstates 0\ninitial 0\naccept\n"
                          "trans 0 a a 0\ntrans 0 a - 0\n"),
               ParseError);
  EXPECT_THROW(parse_dfst("dfst\nin_alphabet a\nout_alphabet a\nstates 0\ninitial 0\naccept\n"
                          "final 0 a\n"),
               ParseError);
  EXPECT_THROW(parse_dfst("dfst\nin_alphabet a\nout_alphabet a\nstates 0\ninitial 0\naccept 0\n"
                          "trans 0 a b 0\n"),
               ParseError);
}

}  // namespace
}  // namespace rrkit
