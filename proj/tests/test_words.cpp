#include <doctest.h>

#include <optional>
#include <random>
#include <string>

#include "lss/errors.hpp"
#include "lss/words.hpp"

using namespace lss;

namespace {

Word W(const std::string& s) { return Word::parse(s); }

// brute-force decomposition oracle, independent of classify's search order
bool white_oracle(const Word& w, const Word& pi, std::size_t M) {
  const std::size_t n = pi.size();
  for (std::size_t la = 0; la + 0 <= std::min(n - 1, w.size()); ++la) {
    if (la > w.size()) break;
    for (std::size_t lb = 0; lb <= M && la + lb <= w.size(); ++lb) {
      const std::size_t mid = w.size() - la - lb;
      if (mid % n) continue;
      const Word probe = w.subword(0, la).concat(pi.repeated(mid / n)).concat(
          w.subword(w.size() - lb, lb));
      if (probe == w) return true;
    }
  }
  return false;
}

Word random_word(std::mt19937& rng, std::size_t len, int alphabet = 2) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.letters.push_back(static_cast<Letter>(rng() % alphabet));
  return w;
}

// the partition postcondition checks, written from the statement and kept
// independent from the construction in words.cpp
void check_partition(const Word& w, const Word& pi, std::size_t M, const Partition& part) {
  REQUIRE(part.reassembled() == w);
  const std::size_t n = pi.size();
  REQUIRE(part.n == n);
  REQUIRE(part.l * n > 2 * n + M);
  REQUIRE((part.l - 1) * n <= 2 * n + M);
  REQUIRE(part.N == (part.l + 1) * n + M);
  const auto& segs = part.segments;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const auto& s = segs[i];
    REQUIRE(!s.word.empty());
    if (s.color == SegmentColor::White) {
      // (b) white segments are powers of pi...
      REQUIRE(s.word.size() % n == 0);
      REQUIRE(s.word == pi.repeated(s.word.size() / n));
      // ...and never adjacent
      if (i + 1 < segs.size()) REQUIRE(segs[i + 1].color == SegmentColor::Black);
    } else {
      // (c) black lengths within [n+M, 2N] except the first segment and a
      // trailing finite-word remainder
      REQUIRE(s.word.size() <= 2 * part.N);
      const bool exempt = i == 0 || s.origin == SegmentOrigin::Trailing;
      if (!exempt) REQUIRE(s.word.size() >= n + M);
      // padded segments replicate the contradiction argument: they must be
      // genuinely black
      if (s.origin == SegmentOrigin::Padded) REQUIRE(!classify(s.word, pi, M).has_value());
    }
  }
  // (a) the first segment is short unless it is a white power
  if (!segs.empty() && segs.front().color == SegmentColor::Black)
    REQUIRE(segs.front().word.size() <= 2 * part.N);
}

}  // namespace

TEST_CASE("simplicity") {
  CHECK(is_simple(W("01")));
  CHECK_FALSE(is_simple(W("0101")));
  CHECK(is_simple(W("0")));
  CHECK(is_simple(W("0110")));
  CHECK_FALSE(is_simple(W("000")));
  CHECK_THROWS_AS(is_simple(Word{}), invalid_input);
}

TEST_CASE("cyclic equality") {
  CHECK(cyclically_equal(W("011"), W("110")));
  CHECK(cyclically_equal(W("011"), W("011")));
  CHECK_FALSE(cyclically_equal(W("01"), W("00")));
  CHECK_FALSE(cyclically_equal(W("01"), W("011")));
  CHECK(cyclically_equal(Word{}, Word{}));
}

TEST_CASE("canonical rotation and primitive root") {
  CHECK(canonical_rotation(W("110")) == W("011"));
  CHECK(primitive_root(W("0101")) == W("01"));
  CHECK(primitive_root(W("011")) == W("011"));
}

TEST_CASE("classification fixtures") {
  const auto w1 = classify(W("001"), W("01"), 1);
  REQUIRE(w1.has_value());
  CHECK(w1->a == W("0"));
  CHECK(w1->k == 1);
  CHECK(w1->b.empty());

  CHECK_FALSE(classify(W("10"), W("01"), 0).has_value());

  // any word shorter than |pi| + M is white
  CHECK(classify(W("0"), W("01"), 1).has_value());
  CHECK(classify(W("1"), W("01"), 1).has_value());

  CHECK_THROWS_AS(classify(W("01"), W("0101"), 1), invalid_input);
}

TEST_CASE("classification agrees with the brute-force oracle") {
  std::mt19937 rng(2024);
  const Word pis[] = {W("01"), W("0"), W("011"), W("0011")};
  for (int trial = 0; trial < 4000; ++trial) {
    const Word& pi = pis[rng() % 4];
    const std::size_t M = rng() % 4;
    const Word w = random_word(rng, 1 + rng() % 30);
    const auto got = classify(w, pi, M);
    CHECK(got.has_value() == white_oracle(w, pi, M));
    if (got.has_value()) {
      CHECK(got->a.size() <= pi.size() - 1);
      CHECK(got->b.size() <= M);
      CHECK(got->a.concat(pi.repeated(got->k)).concat(got->b) == w);
    }
  }
}

TEST_CASE("partition of a pure power is a single white segment") {
  const auto part = partition(W("01").repeated(20), W("01"), 0);
  REQUIRE(part.segments.size() == 1);
  CHECK(part.segments.front().color == SegmentColor::White);
  CHECK(part.segments.front().word == W("01").repeated(20));
}

TEST_CASE("partition of a prefixed power") {
  const auto part = partition(W("1").concat(W("01").repeated(10)), W("01"), 0);
  REQUIRE(part.segments.size() == 2);
  CHECK(part.segments[0].color == SegmentColor::Black);
  CHECK(part.segments[0].word.size() <= 2 * part.N);
  CHECK(part.segments[1].color == SegmentColor::White);
  check_partition(W("1").concat(W("01").repeated(10)), W("01"), 0, part);
}

TEST_CASE("partition satisfies the length and color conditions on random words") {
  std::mt19937 rng(555);
  for (int trial = 0; trial < 60; ++trial) {
    const Word w = random_word(rng, 10000);
    for (std::size_t M : {std::size_t{0}, std::size_t{2}}) {
      const auto part = partition(w, W("01"), M);
      check_partition(w, W("01"), M, part);
    }
  }
}

TEST_CASE("partition stress over random reference words") {
  std::mt19937 rng(31337);
  const Word pis[] = {W("01"), W("1"), W("011"), W("0010"), W("00101"), W("010011")};
  for (int trial = 0; trial < 3000; ++trial) {
    const Word& pi = pis[rng() % 6];
    if (!is_simple(pi)) continue;
    const std::size_t M = rng() % 9;
    const Word w = random_word(rng, rng() % 900);
    if (w.empty()) {
      CHECK(partition(w, pi, M).segments.empty());
      continue;
    }
    check_partition(w, pi, M, partition(w, pi, M));
  }
  // words biased toward long powers of pi exercise the lending bookkeeping
  for (int trial = 0; trial < 1500; ++trial) {
    const Word& pi = pis[rng() % 6];
    const std::size_t M = rng() % 5;
    Word w;
    while (w.size() < 300) {
      if (rng() & 1u)
        w = w.concat(pi.repeated(1 + rng() % 12));
      else
        w = w.concat(random_word(rng, 1 + rng() % 6));
      if (rng() % 7 == 0) break;
    }
    if (w.empty()) continue;
    check_partition(w, pi, M, partition(w, pi, M));
  }
}

TEST_CASE("word digit serialization round-trips") {
  std::mt19937 rng(8);
  for (int i = 0; i < 100; ++i) {
    const Word w = random_word(rng, rng() % 40, 4);
    CHECK(Word::parse(w.str()) == w);
  }
  CHECK_THROWS_AS(Word::parse("01a"), invalid_input);
}
