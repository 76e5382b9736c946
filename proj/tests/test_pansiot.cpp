#include "doctest.h"

#include <set>

#include "dejean/error.hpp"
#include "dejean/pansiot.hpp"
#include "oracles.hpp"

using namespace dejean;

namespace {

Word b(const std::string& bits) { return Word::parse_binary(bits); }

std::vector<std::uint32_t> images(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

std::vector<std::string> binary_words(std::size_t len) {
  std::vector<std::string> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << len); ++mask) {
    std::string s;
    for (std::size_t i = 0; i < len; ++i) s += (mask >> (len - 1 - i)) & 1 ? '1' : '0';
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("permutations") {
  auto p = Permutation::from_images({2, 3, 1});
  CHECK(p.apply(1) == 2);
  CHECK(p.then(p.inverse()).is_identity());
  CHECK(p.then(p).then(p).is_identity());
  CHECK(Permutation::identity(4).fixed_prefix() == 4);
  CHECK(Permutation::from_images({1, 2, 4, 3}).fixed_prefix() == 2);
  CHECK_THROWS_AS(Permutation::from_images({1, 1, 2}), Error);
  CHECK_THROWS_AS(Permutation::from_images({1, 4, 2}), Error);
  // right action: a.(p then q) = (a.p).q
  auto q = Permutation::from_images({1, 3, 2});
  CHECK(p.then(q).apply(1) == q.apply(p.apply(1)));
}

TEST_CASE("phi examples") {
  CHECK(images(phi(4, b("0"))) == std::vector<std::uint32_t>{2, 3, 1, 4});
  CHECK(phi(3, b("")).is_identity());
  CHECK(images(phi(3, b("11"))) == std::vector<std::uint32_t>{3, 1, 2});
  CHECK_THROWS_AS(phi(3, Word::parse("123", 3)), Error);
}

TEST_CASE("phi agrees with point tracking and is a morphism") {
  for (std::uint32_t n : {3u, 4u, 5u}) {
    for (std::size_t lu = 0; lu <= 5; ++lu)
      for (const auto& u : binary_words(lu)) {
        REQUIRE(images(phi(n, b(u))) == oracle::phi(n, oracle::bits(u)));
        for (std::size_t lv = 0; lv <= 4; ++lv)
          for (const auto& v : binary_words(lv)) REQUIRE(phi(n, b(u + v)) == phi(n, b(u)).then(phi(n, b(v))));
      }
  }
  for (std::uint32_t n = 2; n <= 12; ++n) {
    CHECK(phi(n, b(std::string(n - 1, '0'))).is_identity());
    CHECK(phi(n, b(std::string(n, '1'))).is_identity());
  }
}

TEST_CASE("gamma examples") {
  CHECK(gamma(3, b("1")).to_string() == "3");
  CHECK(gamma(3, b("11")).to_string() == "32");
  CHECK(gamma(5, b("")).empty());
  CHECK(gamma(5, b("")).alphabet_size() == 5);
}

TEST_CASE("gamma agrees with per-prefix recomputation") {
  for (std::uint32_t n : {3u, 4u, 6u, 27u})
    for (std::size_t len = 0; len <= 9; ++len)
      for (const auto& u : binary_words(len)) {
        const Word out = gamma(n, b(u));
        const auto want = oracle::gamma(n, oracle::bits(u));
        REQUIRE(std::vector<Letter>(out.letters().begin(), out.letters().end()) == want);
        for (auto a : out.letters()) REQUIRE((a >= 1 && a <= n));
      }
}

TEST_CASE("gamma is injective on words of equal length") {
  for (std::uint32_t n : {3u, 5u})
    for (std::size_t len = 1; len <= 10; ++len) {
      std::set<std::string> seen;
      for (const auto& u : binary_words(len)) REQUIRE(seen.insert(gamma(n, b(u)).to_string()).second);
    }
}

TEST_CASE("stabilizing words") {
  CHECK(is_k_stabilizing(3, b("00"), 2));
  CHECK_FALSE(is_k_stabilizing(3, b("0"), 1));
  CHECK(is_k_stabilizing(27, b(std::string(27, '1')), 26));
  CHECK_THROWS_AS(is_k_stabilizing(3, b("00"), 3), Error);
  CHECK_THROWS_AS(is_k_stabilizing(3, b("00"), 0), Error);
  CHECK_THROWS_AS(is_k_stabilizing(3, b(""), 1), Error);
}

TEST_CASE("scan examples") {
  auto r = scan_prop32(3, b("00"));
  REQUIRE(r);
  CHECK(r->kind == RepetitionKind::stabilizing);
  CHECK(r->start == 1);
  CHECK(r->length == 2);
  CHECK(r->order == 2);

  CHECK_FALSE(scan_prop32(3, b("1")));

  // Condition (i) is searched first, so "000000" reports its leading "00".
  auto s = scan_prop32(3, b("000000"));
  REQUIRE(s);
  CHECK(s->kind == RepetitionKind::stabilizing);
  CHECK(s->length == 2);

  // The kernel repetition on its own: p = 2, "00" in the kernel.
  auto k = find_kernel_repetition(3, b("000000"));
  REQUIRE(k);
  CHECK(k->kind == RepetitionKind::kernel);
  CHECK(k->period == 2);
  CHECK(k->start == 1);
  CHECK(k->length == 2);
  CHECK(k->exponent == RationalExponent(1, 1));
}

TEST_CASE("scan agrees with brute force on all binary words up to length 14") {
  for (std::uint32_t n : {3u, 4u, 5u})
    for (std::size_t len = 1; len <= 14; ++len)
      for (const auto& u : binary_words(len)) {
        const auto got = scan_prop32(n, b(u));
        const auto want = oracle::prop32(n, oracle::bits(u));
        REQUIRE(got.has_value() == want.has_value());
        if (!got) continue;
        INFO("n=" << n << " u=" << u);
        REQUIRE((got->kind == RepetitionKind::stabilizing) == want->stabilizing);
        REQUIRE(got->start == want->start);
        REQUIRE(got->length == want->length);
        if (want->stabilizing) {
          REQUIRE(got->order == want->k);
        } else {
          REQUIRE(got->period == want->period);
        }
      }
}

TEST_CASE("kernel scanner alone agrees with brute force") {
  // Words avoiding short stabilizing factors are rare at small n; test the
  // kernel search directly with the condition (i) pass removed.
  for (std::uint32_t n : {3u, 4u, 5u, 7u})
    for (std::size_t len = 1; len <= 12; ++len)
      for (const auto& u : binary_words(len)) {
        const auto s = oracle::bits(u);
        std::optional<oracle::Hit> want;
        const std::int64_t nn = n;
        for (std::size_t st = 0; st < s.size() && !want; ++st)
          for (std::size_t l = 1; st + l <= s.size() && !want; ++l)
            for (std::size_t p = 1; p <= l && !want; ++p) {
              if (!oracle::is_period(s, st, l, p)) continue;
              if ((nn - 1) * static_cast<std::int64_t>(l) <= nn * static_cast<std::int64_t>(p) - (nn - 1) * (nn - 1))
                continue;
              for (std::size_t c = st; c + p <= st + l && !want; ++c)
                if (oracle::identity(oracle::phi(n, s, c, p))) want = oracle::Hit{st + 1, l, p};
            }
        const auto got = find_kernel_repetition(n, b(u));
        REQUIRE(got.has_value() == want.has_value());
        if (got) {
          REQUIRE(got->start == want->start);
          REQUIRE(got->length == want->length);
          REQUIRE(got->period == want->period);
        }
      }
}

TEST_CASE("shortest stabilizing factor") {
  // 1 0^3 already fixes 1, 2 and 3 at n = 5
  auto r = find_shortest_stabilizing(5, b("100001"), 2);
  REQUIRE(r);
  CHECK(r->start == 1);
  CHECK(r->length == 4);
  CHECK_FALSE(find_shortest_stabilizing(5, b("1"), 1));
  CHECK(find_short_stabilizing(5, b("0000"), 2));
  CHECK_FALSE(find_short_stabilizing(5, b("0000"), 1));
}
