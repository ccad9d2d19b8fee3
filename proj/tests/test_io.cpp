#include <doctest.h>

#include <random>

#include "lss/errors.hpp"
#include "lss/io.hpp"

using namespace lss;

TEST_CASE("family files round-trip entry-exactly") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 1 + static_cast<int>(rng() % 4);
    std::vector<Matrix> ms;
    for (int i = 0; i < 2; ++i) {
      Matrix m(d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = u(rng) / 3.0;  // non-representable decimals
      ms.push_back(std::move(m));
    }
    FamilyFile ff;
    ff.family = MatrixFamily(std::move(ms), {"X", "Y"});
    ff.alpha = u(rng);
    const auto text = family_file_json(ff);
    const auto back = parse_family_json(text);
    REQUIRE(back.family.size() == ff.family.size());
    for (std::size_t i = 0; i < ff.family.size(); ++i) CHECK(back.family[i] == ff.family[i]);
    CHECK(back.alpha == ff.alpha);
    CHECK(back.family.labels == ff.family.labels);
  }
}

TEST_CASE("block families round-trip") {
  FamilyFile ff;
  ff.blocks = example1_blocks();
  ff.family = assemble(*ff.blocks);
  const auto back = parse_family_json(family_file_json(ff));
  REQUIRE(back.blocks.has_value());
  CHECK(back.blocks->d1() == 1);
  CHECK(back.blocks->d2() == 1);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(back.blocks->block1[i] == ff.blocks->block1[i]);
    CHECK(back.blocks->block2[i] == ff.blocks->block2[i]);
    CHECK(back.blocks->couplings[i] == ff.blocks->couplings[i]);
  }
}

TEST_CASE("malformed family files are rejected") {
  CHECK_THROWS_AS(parse_family_json("not json"), invalid_input);
  CHECK_THROWS_AS(parse_family_json(R"({"dim": 2, "matrices": []})"), invalid_input);
  // ragged rows
  CHECK_THROWS_AS(parse_family_json(R"({"dim": 2, "matrices": [{"entries": [1, 2, 3]}]})"),
                  invalid_input);
  // block structure on a matrix with a nonzero lower-left corner
  CHECK_THROWS_AS(parse_family_json(R"({
    "dim": 2,
    "matrices": [{"entries": [1, 0, 1, 1]}],
    "blocks": {"d1": 1, "d2": 1}
  })"),
                  invalid_input);
  // couplings that contradict the matrices
  CHECK_THROWS_AS(parse_family_json(R"({
    "dim": 2,
    "matrices": [{"entries": [1, 5, 0, 1]}],
    "blocks": {"d1": 1, "d2": 1, "couplings": [[4]]}
  })"),
                  invalid_input);
}

TEST_CASE("alpha tokens resolve to full-precision doubles") {
  CHECK(parse_alpha_token("pi*sqrt2") == 4.4428829381583661);
  CHECK(parse_alpha_token("pi*phi") == 5.0832036923152595);
  CHECK(parse_alpha_token("2.5") == 2.5);
  CHECK_THROWS_AS(parse_alpha_token("two"), invalid_input);
  CHECK_THROWS_AS(parse_alpha_token("1.5x"), invalid_input);
}
