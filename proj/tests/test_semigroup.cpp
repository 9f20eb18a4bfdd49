#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "tannakit/semigroup.hpp"

using namespace tannakit;

namespace {

Word random_word(std::mt19937& rng, const AbelianPresentation& p, long long max_exp = 3) {
  std::vector<long long> e;
  std::uniform_int_distribution<long long> d(0, max_exp);
  for (int i = 0; i < p.generator_count(); ++i) e.push_back(d(rng));
  return word_from_exponents(p, std::move(e));
}

}  // namespace

TEST_CASE("normalize_word") {
  AbelianPresentation n2{2, {}};
  CHECK(normalize_word(n2, {}) == identity_word(n2));
  CHECK(normalize_word(n2, {1, 2, 1}).exps == std::vector<long long>{2, 1});
  AbelianPresentation z3{0, {3}};
  CHECK(normalize_word(z3, {1, 1, 1, 1}).exps == std::vector<long long>{1});
  CHECK_THROWS(normalize_word(n2, {3}));
}

TEST_CASE("multiply") {
  AbelianPresentation n2{2, {}};
  Word a = word_from_exponents(n2, {1, 0}), b = word_from_exponents(n2, {0, 1});
  CHECK(multiply(n2, a, b).exps == std::vector<long long>{1, 1});
  AbelianPresentation z3{0, {3}};
  Word t = word_from_exponents(z3, {2});
  CHECK(multiply(z3, t, t).exps == std::vector<long long>{1});
  CHECK(multiply(n2, a, identity_word(n2)) == a);

  std::mt19937 rng(7);
  AbelianPresentation p{2, {2, 3}};
  for (int t2 = 0; t2 < 500; ++t2) {
    Word f = random_word(rng, p), g = random_word(rng, p), h = random_word(rng, p);
    CHECK(multiply(p, multiply(p, f, g), h) == multiply(p, f, multiply(p, g, h)));
    CHECK(multiply(p, f, g) == multiply(p, g, f));
  }
}

TEST_CASE("word_length") {
  AbelianPresentation n2{2, {}};
  CHECK(word_length(word_from_exponents(n2, {2, 1})) == 3);
  CHECK(word_length(identity_word(n2)) == 0);

  // brute force: every generator string of length <= 4 equal to a^2 in Z/3
  // has length 2, 2+3k — so the normal form is shortest
  AbelianPresentation z3{0, {3}};
  Word target = word_from_exponents(z3, {2});
  long long shortest = 100;
  for (int len = 0; len <= 4; ++len) {
    std::vector<int> raw(static_cast<size_t>(len), 1);
    if (normalize_word(z3, raw) == target) shortest = std::min<long long>(shortest, len);
  }
  CHECK(shortest == word_length(target));

  std::mt19937 rng(8);
  AbelianPresentation p{1, {2}};
  for (int t = 0; t < 200; ++t) {
    Word f = random_word(rng, p), g = random_word(rng, p);
    CHECK(word_length(multiply(p, f, g)) <= word_length(f) + word_length(g));
  }
}

TEST_CASE("exchange schedule") {
  AbelianPresentation n2{2, {}};
  Word a1 = word_from_exponents(n2, {1, 0}), a2 = word_from_exponents(n2, {0, 1});

  SUBCASE("single adjacent transposition") {
    auto steps = exchange_schedule(n2, a2, a1);
    REQUIRE(steps.size() == 1);
    CHECK(steps[0].kind == ExchangeStep::Kind::Swap);
    CHECK(steps[0].i == 2);
    CHECK(steps[0].j == 1);
  }
  SUBCASE("identity left factor") {
    CHECK(exchange_schedule(n2, identity_word(n2), a1).empty());
  }
  SUBCASE("inversion count") {
    Word w = word_from_exponents(n2, {1, 1});
    auto steps = exchange_schedule(n2, w, w);
    long long swaps = 0;
    for (const auto& s : steps)
      if (s.kind == ExchangeStep::Kind::Swap) ++swaps;
    CHECK(swaps == 1);
  }
  SUBCASE("replay sorts the concatenation") {
    std::mt19937 rng(9);
    for (const auto& p : {AbelianPresentation{2, {}}, AbelianPresentation{1, {2}},
                          AbelianPresentation{2, {2, 3}}, AbelianPresentation{0, {4}}}) {
      for (int t = 0; t < 200; ++t) {
        Word f = random_word(rng, p), g = random_word(rng, p);
        auto letters = word_letters(f);
        auto tail = word_letters(g);
        letters.insert(letters.end(), tail.begin(), tail.end());
        auto sorted = replay_schedule(p, letters, exchange_schedule(p, f, g));
        CHECK(sorted == word_letters(multiply(p, f, g)));
      }
    }
  }
}

TEST_CASE("free products") {
  AbelianPresentation n1{1, {}};
  AbelianPresentation z2{0, {2}};
  FreeProductRegistry reg{{n1, z2}};
  Word u = word_from_exponents(n1, {2}), v = word_from_exponents(n1, {1});
  Word t = word_from_exponents(z2, {1});

  SUBCASE("drop identity blocks") {
    auto w = fp_normalize(reg, {{0, identity_word(n1)}, {1, t}});
    REQUIRE(w.blocks.size() == 1);
    CHECK(w.blocks[0] == std::pair{1, t});
  }
  SUBCASE("merge adjacent same-factor blocks") {
    auto w = fp_normalize(reg, {{0, u}, {0, v}});
    REQUIRE(w.blocks.size() == 1);
    CHECK(w.blocks[0].second == word_from_exponents(n1, {3}));
  }
  SUBCASE("alternating normal form") {
    auto w = fp_normalize(reg, {{0, u}, {1, t}, {1, t}, {0, identity_word(n1)}});
    // t*t = e in Z/2, which exposes nothing further; [0:u] remains
    REQUIRE(w.blocks.size() == 1);
    CHECK(w.blocks[0] == std::pair{0, u});
  }
  SUBCASE("cascading cancellation") {
    auto w = fp_normalize(reg, {{0, u}, {1, t}, {1, t}, {0, v}});
    REQUIRE(w.blocks.size() == 1);
    CHECK(w.blocks[0].second == word_from_exponents(n1, {3}));
  }
  SUBCASE("idempotent and associative") {
    std::mt19937 rng(10);
    std::uniform_int_distribution<int> coin(0, 1), len(0, 2);
    auto random_fp = [&] {
      std::vector<std::pair<int, Word>> blocks;
      int n = len(rng);
      for (int i = 0; i < n; ++i) {
        int fid = coin(rng);
        blocks.push_back({fid, random_word(rng, reg.factors[static_cast<size_t>(fid)], 2)});
      }
      return fp_normalize(reg, blocks);
    };
    for (int it = 0; it < 300; ++it) {
      FreeProductWord f = random_fp(), g = random_fp(), h = random_fp();
      CHECK(fp_normalize(reg, f.blocks) == f);
      CHECK(fp_multiply(reg, fp_multiply(reg, f, g), h) ==
            fp_multiply(reg, f, fp_multiply(reg, g, h)));
    }
  }
}

TEST_CASE("words_up_to_length") {
  AbelianPresentation p{1, {2}};
  auto ws = words_up_to_length(p, 2);
  // exponents (a, t), t reduced mod 2: (0,0),(0,1),(1,0),(1,1),(2,0)
  CHECK(ws.size() == 5);
  for (const auto& w : ws) CHECK(word_length(w) <= 2);
}
