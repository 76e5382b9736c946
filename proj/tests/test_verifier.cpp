#include "doctest.h"

#include <array>
#include <map>
#include <random>

#include "dejean/carpi.hpp"
#include "dejean/constructions.hpp"
#include "dejean/error.hpp"
#include "dejean/verifier.hpp"
#include "oracles.hpp"

using namespace dejean;

namespace {

const std::vector<MaximalKernelRepetition>& default_W() {
  static const auto W = compute_W();
  return W;
}

// Longest factor of x with period q whose length-q prefix has all counts
// divisible by 4.
std::size_t longest_kernel_factor(const oracle::Seq& x, std::size_t q) {
  std::vector<std::array<std::size_t, 5>> pre(x.size() + 1, std::array<std::size_t, 5>{});
  for (std::size_t i = 0; i < x.size(); ++i) {
    pre[i + 1] = pre[i];
    ++pre[i + 1][x[i]];
  }
  std::size_t best = 0;
  for (std::size_t b = 0; b + q <= x.size(); ++b) {
    bool kernel = true;
    for (std::uint32_t a = 1; a <= 4; ++a) kernel = kernel && (pre[b + q][a] - pre[b][a]) % 4 == 0;
    if (!kernel) continue;
    std::size_t len = q;
    while (b + len < x.size() && x[b + len] == x[b + len - q]) ++len;
    best = std::max(best, len);
  }
  return best;
}

}  // namespace

TEST_CASE("short elimination") {
  auto small = verify_short_elimination(27, 32, 4);
  CHECK(small.passed());
  CHECK(small.factors_scanned > 0);

  auto injected = verify_short_elimination(27, 32, 4, {Word::parse("1111", 4)});
  REQUIRE(injected.violations.size() == 1);
  CHECK(injected.violations[0].injected);
  CHECK(injected.violations[0].word.to_string() == "1111");
  CHECK(injected.violations[0].kernel_period == 4);
  CHECK(injected.violations[0].orders == std::vector<std::uint32_t>{27, 28, 29, 30, 31, 32});

  CHECK(verify_short_elimination(27, 32, 40).passed());
}

TEST_CASE("W reproduces the 160/36/4 breakdown") {
  const auto& W = default_W();
  REQUIRE(W.size() == 200);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> breakdown;
  for (const auto& w : W) ++breakdown[{w.kernel_period, w.word.size()}];
  CHECK(breakdown[{76, 77}] == 160);
  CHECK(breakdown[{92, 93}] == 36);
  CHECK(breakdown[{112, 114}] == 4);
  CHECK(breakdown.size() == 3);
  for (const auto& w : W) {
    CHECK(w.kernel_period % 4 == 0);
    CHECK(w.tail_length() <= 3);
  }
}

TEST_CASE("W entries survive independent revalidation") {
  // Membership and maximality rechecked through desubstitution rather than
  // the enumerated factor set.
  for (const auto& w : default_W()) {
    const auto s = w.word.letters();
    const std::size_t p = w.kernel_period;
    REQUIRE(z4_is_factor(s));
    const auto kp = kernel_periods(w.word);
    REQUIRE(std::find(kp.begin(), kp.end(), p) != kp.end());
    for (Letter c = 1; c <= 4; ++c) {
      std::vector<Letter> left{c}, right(s.begin(), s.end());
      left.insert(left.end(), s.begin(), s.end());
      right.push_back(c);
      REQUIRE_FALSE((z4_is_factor(left) && has_period(left, p)));
      REQUIRE_FALSE((z4_is_factor(right) && has_period(right, p)));
    }
  }
}

TEST_CASE("W ordering and predicate variants") {
  const auto& W = default_W();
  for (std::size_t i = 1; i < W.size(); ++i) {
    const bool ordered = ShortLex{}(W[i - 1].word, W[i].word) ||
                         (W[i - 1].word == W[i].word && W[i - 1].kernel_period < W[i].kernel_period);
    REQUIRE(ordered);
  }
  WSearchOptions loose;
  loose.bound_filter = false;
  CHECK(compute_W(loose).size() > W.size());
  WSearchOptions left;
  left.maximality = Maximality::left_only;
  CHECK(compute_W(left).size() >= W.size());
}

TEST_CASE("E_w inequality") {
  const auto& W = default_W();
  auto report = verify_Ew(W);
  REQUIRE(report.entries.size() == 200);
  CHECK(report.passed());
  for (const auto& e : report.entries) {
    const std::int64_t p = static_cast<std::int64_t>(e.w.kernel_period);
    CHECK(e.margin == 3 * p - 31 * (static_cast<std::int64_t>(e.q) - 3 * p + 2));
    CHECK(e.holds());
    CHECK(e.contexts > 0);
    CHECK(e.inflation_holds());
    if (e.q) {
      REQUIRE(e.witness);
      CHECK(e.witness->size() == e.q);
      CHECK(e.q >= 3 * e.w.kernel_period);
    }
  }
  CHECK(verify_Ew({}).passed());
}

TEST_CASE("E_w values agree with a direct recomputation") {
  const auto& W = default_W();
  auto report = verify_Ew(W);
  for (std::size_t i : {std::size_t{0}, std::size_t{163}, std::size_t{199}}) {
    const auto& entry = report.entries[i];
    const oracle::Seq v(entry.w.word.letters().begin(), entry.w.word.letters().end());
    std::size_t q = 0, contexts = 0;
    for (std::uint32_t a = 1; a <= 4; ++a)
      for (std::uint32_t c = 1; c <= 4; ++c) {
        oracle::Seq awb{a};
        awb.insert(awb.end(), v.begin(), v.end());
        awb.push_back(c);
        if (!z4_is_factor(awb)) continue;
        ++contexts;
        for (const auto& x : oracle::g_apply(awb)) q = std::max(q, longest_kernel_factor(x, 3 * entry.w.kernel_period));
      }
    CHECK(entry.q == q);
    CHECK(entry.contexts == contexts);
  }
}

TEST_CASE("longest kernel-period factor") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 500; ++t) {
    oracle::Seq x(5 + rng() % 40);
    for (auto& a : x) a = 1 + (rng() % 4 == 0 ? rng() % 4 : 0);
    const std::size_t q = 4 * (1 + rng() % 3);
    std::size_t start = 0;
    const std::size_t got = longest_kernel_period_factor(x, q, &start);
    REQUIRE(got == longest_kernel_factor(x, q));
    if (got) {
      REQUIRE(oracle::counts_div4(x, start, q));
      REQUIRE(oracle::is_period(x, start, got, q));
    }
  }
  CHECK(longest_kernel_period_factor(std::vector<Letter>{1, 1, 1}, 4) == 0);
}

TEST_CASE("binary avoidance at n = 26") {
  auto r = binary_avoidance_search(26);
  CHECK(r.max_length == 15);
  CHECK(binary_avoidance_max_length(26) == 15);
  REQUIRE(r.longest.size() == 15);
  CHECK_FALSE(find_psi_kernel_repetition(26, r.longest));
  for (std::size_t mask = 0; mask < (1u << 16); ++mask) {
    std::vector<Letter> s(16);
    for (std::size_t i = 0; i < 16; ++i) s[i] = 1 + ((mask >> i) & 1);
    REQUIRE(find_psi_kernel_repetition(26, Word(s, 2)));
  }
}

TEST_CASE("binary avoidance responds to the inequality constant") {
  // Requiring (n-1)(|v|+1) >= nq - 2 forbids fewer factors than nq - 3.
  const auto base = binary_avoidance_search(26, 64, 3).max_length;
  const auto weaker = binary_avoidance_search(26, 64, 2).max_length;
  CHECK(weaker >= base);
  CHECK_THROWS_AS(binary_avoidance_search(26, 40, -1000), Error);
  try {
    binary_avoidance_search(26, 40, -1000);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::limit);
  }
}

TEST_CASE("stabilizing scan on f(a3)") {
  try {
    n26_stabilizing_check(nullptr);
    FAIL("expected unavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::unavailable);
  }
  // n = 3 analogue: letter 1 plants "00" (2-stabilizing, 2 < 4), letter 2 does not.
  auto t = MorphismTable::make(3, {Word::parse_binary("1001"), Word::parse_binary("1010"),
                                    Word::parse_binary("1010")});
  auto report = n26_stabilizing_check(&t, 2, 3);
  REQUIRE(report.witnesses.size() == 3);
  REQUIRE(report.witnesses[0].shortest);
  CHECK(report.witnesses[0].shortest->length == 2);
  CHECK(report.witnesses[0].shortest->start == 2);
  CHECK(report.witnesses[0].input.to_string() == "13");
  CHECK_FALSE(report.all_found());
  CHECK_THROWS_AS(n26_stabilizing_check(&t, 3, 3), Error);
  CHECK_THROWS_AS(n26_stabilizing_check(&t, 2, 4), Error);
}

TEST_CASE("kernel factor lengths in Z_m are divisible by 4^(m-1)") {
  const auto samples = zm_samples(5, 2048, 3, 1);
  for (const auto& z : samples) {
    auto r = check_lemma6(5, z, true);
    CHECK(r.passed());
    CHECK(r.divisor == 256);
    CHECK(r.kernel_factors > 0);
    for (auto len : r.kernel_lengths) CHECK(len % 256 == 0);
  }
  auto vacuous = check_lemma6(5, Word::parse("1123", 5), true);
  CHECK(vacuous.passed());
  CHECK(vacuous.kernel_factors == 0);
  CHECK(check_lemma6(5, Word::parse("", 5), false).passed());
  CHECK_THROWS_AS(check_lemma6(5, Word::parse("1111", 5), false), Error);
  CHECK_THROWS_AS(check_lemma6(4, Word::parse("1", 4), false), Error);
}

TEST_CASE("kernel factor counts in Z_m agree with brute force") {
  std::mt19937_64 rng(4);
  for (std::uint32_t m : {5u, 6u}) {
    const Word z = zm_sample(m, 600, rng);
    const oracle::Seq s(z.letters().begin(), z.letters().end());
    std::uint64_t kernel = 0;
    std::set<std::size_t> lengths;
    for (std::size_t b = 0; b < s.size(); ++b) {
      std::vector<std::size_t> c(m + 1, 0);
      for (std::size_t e = b; e < s.size(); ++e) {
        ++c[s[e]];
        bool all = true;
        for (std::uint32_t a = 1; a <= m; ++a) all = all && c[a] % 4 == 0;
        if (all) {
          ++kernel;
          lengths.insert(e - b + 1);
        }
      }
    }
    auto r = check_lemma6(m, z, true);
    CHECK(r.kernel_factors == kernel);
    CHECK(r.kernel_lengths == lengths);
  }
}

TEST_CASE("Z_m desk check") {
  auto r = check_prop7_desk(5, 33, 1024, 50, 0);
  CHECK(r.passed());
  CHECK(r.samples == 50);
  CHECK(r.seed == 0);
  CHECK(check_prop7_desk(5, 33, 4, 1, 99).passed());
  CHECK_THROWS_AS(check_prop7_words(5, 33, {Word::parse("1111", 5)}), Error);
  CHECK_THROWS_AS(check_prop7_desk(5, 30, 16, 1, 0), Error);

  // samples are reproducible from the seed
  CHECK(zm_samples(5, 64, 5, 42) == zm_samples(5, 64, 5, 42));
  CHECK(zm_samples(5, 64, 5, 42) != zm_samples(5, 64, 5, 43));
}

TEST_CASE("Z_m desk check agrees with brute force on short samples") {
  const auto words = zm_samples(5, 40, 20, 8);
  for (const auto& z : words) {
    const oracle::Seq s(z.letters().begin(), z.letters().end());
    CHECK_FALSE(oracle::psi_repetition(33, s));
  }
  CHECK(check_prop7_words(5, 33, words).passed());
}
