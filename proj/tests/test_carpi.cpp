#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "dejean/carpi.hpp"
#include "dejean/constructions.hpp"
#include "dejean/pansiot.hpp"
#include "oracles.hpp"

using namespace dejean;

namespace {

Word w4(const std::string& s) { return Word::parse(s, 4); }

std::string repeat_bits(const std::string& unit, std::size_t length) {
  std::string out;
  while (out.size() < length) out += unit;
  out.resize(length);
  return out;
}

// A table that passes the Carpi shape checks for n = 27 (images are not f_27).
std::string shaped_table_json(std::uint32_t n) {
  const auto p = carpi_params(n);
  std::string j = "{\"n\": " + std::to_string(n) + ", \"m\": " + std::to_string(p.m) + ", \"images\": {";
  for (std::uint32_t a = 1; a <= p.m; ++a) {
    if (a > 1) j += ", ";
    j += "\"" + std::to_string(a) + "\": \"" + repeat_bits(a % 2 ? "0" : "10", p.image_length) + "\"";
  }
  return j + "}}";
}

}  // namespace

TEST_CASE("parameters") {
  auto p27 = carpi_params(27);
  CHECK(p27.m == 4);
  CHECK(p27.ell == 13);
  CHECK(p27.image_length == 364);
  CHECK_FALSE(p27.below_theorem_range);
  auto p33 = carpi_params(33);
  CHECK(p33.m == 5);
  CHECK(p33.ell == 16);
  CHECK(p33.image_length == 544);
  auto p26 = carpi_params(26);
  CHECK(p26.m == 3);
  CHECK(p26.ell == 13);
  CHECK(p26.below_theorem_range);
  CHECK_THROWS_AS(carpi_params(8), Error);
  for (std::uint32_t n = 9; n <= 80; ++n) {
    auto p = carpi_params(n);
    CHECK((p.m >= 4) == (n >= 27));
    CHECK(p.image_length == (n - 1) * (n / 2 + 1));
  }
}

TEST_CASE("psi kernel by counts") {
  CHECK(in_psi_kernel(w4("11112222")));
  CHECK_FALSE(in_psi_kernel(w4("112")));
  CHECK(in_psi_kernel(w4("")));
}

TEST_CASE("kernel periods") {
  CHECK(kernel_periods(w4("1111")) == std::vector<std::size_t>{4});
  CHECK(kernel_periods(w4("11121112")).empty());
  CHECK(kernel_periods(w4("")).empty());
  CHECK(kernel_periods(w4("11111111")) == std::vector<std::size_t>{4, 8});
}

TEST_CASE("psi kernel repetitions") {
  auto r = find_psi_kernel_repetition(27, w4("1111"));
  REQUIRE(r);
  CHECK(r->period == 4);
  CHECK(r->length == 4);
  CHECK(r->start == 1);
  CHECK(r->kind == RepetitionKind::psi_kernel);
  CHECK_FALSE(find_psi_kernel_repetition(27, w4("1234")));
  CHECK_FALSE(find_psi_kernel_repetition(27, w4("")));
  // the word's alphabet must fit inside A_m
  CHECK_THROWS_AS(find_psi_kernel_repetition(27, Word::parse("15", 5)), Error);
}

TEST_CASE("prefix-only kernel test matches an all-factors search") {
  std::mt19937_64 rng(3);
  for (std::uint32_t n : {27u, 30u, 33u}) {
    for (std::size_t len = 1; len <= 7; ++len)
      for (const auto& s : oracle::all_words(4, len)) {
        auto got = find_psi_kernel_repetition(n, Word(s, 4));
        auto want = oracle::psi_repetition(n, s);
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
          REQUIRE(got->start == want->start);
          REQUIRE(got->length == want->length);
          REQUIRE(got->period == want->period);
        }
      }
    for (int t = 0; t < 4000; ++t) {
      const std::size_t len = 8 + rng() % 5;
      oracle::Seq s(len);
      // low-entropy words so that repetitions actually occur
      for (auto& a : s) a = 1 + (rng() % 3 == 0 ? rng() % 4 : 0);
      auto got = find_psi_kernel_repetition(n, Word(s, 4));
      auto want = oracle::psi_repetition(n, s);
      REQUIRE(got.has_value() == want.has_value());
      if (got) {
        REQUIRE(got->start == want->start);
        REQUIRE(got->length == want->length);
        REQUIRE(got->period == want->period);
      }
    }
  }
}

TEST_CASE("psi kernel closure under concatenation and rotation") {
  std::vector<oracle::Seq> kernel;
  for (std::size_t len = 0; len <= 8; len += 4)
    for (const auto& s : len ? oracle::all_words(4, len) : std::vector<oracle::Seq>{{}})
      if (oracle::counts_div4(s, 0, s.size())) kernel.push_back(s);
  REQUIRE(kernel.size() > 4);
  for (const auto& a : kernel)
    for (const auto& c : kernel) {
      oracle::Seq ac = a;
      ac.insert(ac.end(), c.begin(), c.end());
      REQUIRE(in_psi_kernel(Word(ac, 4)));
    }
  for (std::size_t len = 1; len <= 8; ++len)
    for (const auto& s : oracle::all_words(4, len)) {
      const bool in = in_psi_kernel(Word(s, 4));
      for (std::size_t r = 1; r < len; ++r) {
        oracle::Seq t(s.begin() + r, s.end());
        t.insert(t.end(), s.begin(), s.begin() + r);
        REQUIRE(in_psi_kernel(Word(t, 4)) == in);
      }
    }
}

TEST_CASE("toy morphism tables") {
  auto t = MorphismTable::make(3, {Word::parse_binary("01"), Word::parse_binary("10")});
  CHECK(t.order() == 3);
  CHECK(t.source_alphabet() == 2);
  CHECK(t.image_length() == 2);
  CHECK(apply_morphism(t, Word::parse("12", 2)).to_binary_string() == "0110");
  CHECK(apply_morphism(t, Word::parse("", 2)).empty());
  CHECK_THROWS_AS(apply_morphism(t, Word::parse("13", 3)), Error);
  CHECK_THROWS_AS(MorphismTable::make(3, {Word::parse_binary("01"), Word::parse_binary("1")}), Error);
  CHECK_THROWS_AS(MorphismTable::make(3, {Word::parse("123", 3)}), Error);

  auto zeros = MorphismTable::make(3, {Word::parse_binary("00")});
  auto r = check_carpi_short(zeros, Word::parse("1", 1));
  REQUIRE(r);
  CHECK(r->kind == RepetitionKind::stabilizing);
  CHECK(r->length == 2);
  CHECK_FALSE(check_carpi_short(zeros, Word::parse("", 1)));
}

TEST_CASE("table documents") {
  const std::string json = shaped_table_json(27);
  auto t = MorphismTable::parse_json(json);
  CHECK(t.order() == 27);
  CHECK(t.source_alphabet() == 4);
  CHECK(t.image_length() == 364);
  CHECK(apply_morphism(t, w4("1")) == t.image(1));
  CHECK(MorphismTable::parse_json(t.to_json()).to_json() == t.to_json());

  CHECK_THROWS_AS(MorphismTable::parse_json("{"), Error);
  CHECK_THROWS_AS(MorphismTable::parse_json("{\"n\": 27, \"m\": 4}"), Error);
  // wrong m for n
  std::string bad_m = json;
  bad_m.replace(bad_m.find("\"m\": 4"), 6, "\"m\": 5");
  CHECK_THROWS_AS(MorphismTable::parse_json(bad_m), Error);
  // short image
  std::string bad_len = json;
  bad_len.replace(bad_len.find("\"1\": \"") + 6, 2, "");
  CHECK_THROWS_AS(MorphismTable::parse_json(bad_len), Error);
  // non-binary character
  std::string bad_bit = json;
  bad_bit[bad_bit.find("\"2\": \"") + 6] = '2';
  CHECK_THROWS_AS(MorphismTable::parse_json(bad_bit), Error);

  const auto path = std::filesystem::temp_directory_path() / "dejean_table_test.json";
  {
    std::ofstream out(path);
    out << json;
  }
  CHECK(MorphismTable::load(path).image_length() == 364);
  std::filesystem::remove(path);
  try {
    MorphismTable::load(path);
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
}

TEST_CASE("pipeline wiring") {
  auto t = MorphismTable::parse_json(shaped_table_json(27));
  const Word z = w4("1213");
  const Word out = threshold_pipeline(t, z, false);
  CHECK(out.size() == 364 * z.size());
  CHECK(out.alphabet_size() == 27);
  CHECK(out == gamma(27, apply_morphism(t, z)));
  CHECK(threshold_pipeline(t, w4(""), true).empty());

  // letter 1 maps to a run of zeros, so the output is periodic and verification fails
  try {
    threshold_pipeline(t, w4("1"), true);
    FAIL("expected a verification failure");
  } catch (const VerificationError& e) {
    CHECK(e.code() == ErrorCode::verification);
    CHECK(e.report().exponent > RationalExponent(27, 26));
  }
  // an input holding a psi-kernel repetition is rejected before mapping
  try {
    threshold_pipeline(t, w4("1111"), true);
    FAIL("expected a verification failure");
  } catch (const VerificationError& e) {
    CHECK(e.report().kind == RepetitionKind::psi_kernel);
  }

  auto zeros = MorphismTable::make(3, {Word::parse_binary("0000")});
  CHECK_THROWS_AS(threshold_pipeline(zeros, Word::parse("1", 1), true), VerificationError);
}
