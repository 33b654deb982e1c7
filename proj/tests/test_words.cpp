#include <doctest.h>

#include "bowditch/farey.hpp"
#include "bowditch/numeric.hpp"
#include "bowditch/words.hpp"

using namespace bowditch;

namespace {

Word random_word(SplitMix64& rng, int len) {
  static const char letters[] = {'a', 'b', 'A', 'B'};
  std::string s;
  for (int i = 0; i < len; ++i) s.push_back(letters[rng.next() % 4]);
  return Word(s);
}

}  // namespace

TEST_SUITE("words") {
  TEST_CASE("free reduction") {
    CHECK(Word("aAb").letters() == "b");
    CHECK(Word("").letters() == "");
    CHECK(Word("abA").letters() == "abA");
    CHECK(Word("aBbA").identity());
  }

  TEST_CASE("reduction is idempotent") {
    SplitMix64 rng(11);
    for (int i = 0; i < 200; ++i) {
      Word w = random_word(rng, static_cast<int>(rng.uniform_int(0, 20)));
      CHECK(Word(w.letters()) == w);
    }
  }

  TEST_CASE("cyclic reduction") {
    CHECK(cyclic_reduce(Word("abA")).letters() == "b");
    CHECK(cyclic_reduce(Word("ab")).letters() == "ab");
    CHECK(cyclic_reduce(Word("Baab")).letters() == "aa");
    CHECK(cyclic_reduce(cyclic_reduce(Word("Baab"))) == cyclic_reduce(Word("Baab")));
  }

  TEST_CASE("cyclic length") {
    CHECK(cyclic_length(Word("abA")) == 1);
    CHECK(cyclic_length(Word("aab")) == 3);
    CHECK(cyclic_length(Word()) == 0);
  }

  TEST_CASE("cyclic length is a conjugacy and inversion invariant") {
    SplitMix64 rng(12);
    for (int i = 0; i < 200; ++i) {
      Word w = random_word(rng, static_cast<int>(rng.uniform_int(1, 12)));
      Word g = random_word(rng, static_cast<int>(rng.uniform_int(0, 8)));
      Word conj = concat(concat(g, w), inverse(g));
      CHECK(cyclic_length(conj) == cyclic_length(w));
      CHECK(cyclic_length(inverse(w)) == cyclic_length(w));
    }
  }

  TEST_CASE("slope of generators and W0") {
    CHECK(*slope(Word("a")) == slope_infinity());
    CHECK(*slope(Word("b")) == slope_zero());
    CHECK(*slope(Word("aB")) == Slope{-1, 1});
    CHECK(!slope(Word("abAB")).has_value());   // both exponent sums vanish
    CHECK(!slope(Word("abab")).has_value());   // gcd 2
  }

  TEST_CASE("exponent sums add under concatenation") {
    SplitMix64 rng(13);
    for (int i = 0; i < 100; ++i) {
      Word u = random_word(rng, static_cast<int>(rng.uniform_int(0, 10)));
      Word v = random_word(rng, static_cast<int>(rng.uniform_int(0, 10)));
      auto [ua, ub] = exponent_sums(u);
      auto [va, vb] = exponent_sums(v);
      auto [ca, cb] = exponent_sums(concat(u, v));
      CHECK(ca == ua + va);
      CHECK(cb == ub + vb);
    }
  }

  TEST_CASE("canonical class of conjugates and non-primitives") {
    // b a b^-1 is conjugate to a.
    auto cls = canonical_class(Word("baB"));
    REQUIRE(cls.has_value());
    CHECK(cls->slope_value == slope_infinity());
    CHECK(!canonical_class(Word("abab")).has_value());
    auto cls2 = canonical_class(Word("aab"));
    REQUIRE(cls2.has_value());
    CHECK(cls2->slope_value == Slope{2, 1});
    CHECK_THROWS_AS(canonical_class(Word()), std::invalid_argument);
  }

  TEST_CASE("canonical class recovers the slope of Farey words up to depth 8") {
    for_each_region_to_depth(8, [](const Slope& s) {
      auto cls = canonical_class(primitive_word(s));
      REQUIRE(cls.has_value());
      CHECK(cls->slope_value == s);
    });
  }

  TEST_CASE("apply_endomorphism") {
    std::pair<Word, Word> id{Word("a"), Word("b")};
    CHECK(apply_endomorphism(id, Word("ab")) == Word("ab"));
    std::pair<Word, Word> shear{Word("a"), Word("ab")};
    CHECK(apply_endomorphism(shear, Word("b")) == Word("ab"));
    std::pair<Word, Word> collapse{Word("a"), Word()};
    CHECK(apply_endomorphism(collapse, Word("ab")) == Word("a"));
  }

  TEST_CASE("canonical form ignores rotation and inversion") {
    SplitMix64 rng(14);
    for (int i = 0; i < 100; ++i) {
      Word w = random_word(rng, static_cast<int>(rng.uniform_int(1, 10)));
      Word g = random_word(rng, static_cast<int>(rng.uniform_int(0, 6)));
      CHECK(canonical_cyclic(w) == canonical_cyclic(inverse(w)));
      CHECK(canonical_cyclic(w) == canonical_cyclic(concat(concat(g, w), inverse(g))));
    }
  }
}
