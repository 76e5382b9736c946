#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "dejean/carpi.hpp"
#include "dejean/constructions.hpp"
#include "dejean/word.hpp"

namespace dejean {

// Z4: short repetitions ----------------------------------------------------

struct EliminationViolation {
  Word word;
  std::size_t kernel_period = 0;
  std::vector<std::uint32_t> orders;  // every n for which the inequality holds
  bool injected = false;
};

struct EliminationReport {
  std::uint32_t n_lo = 27;
  std::uint32_t n_hi = 32;
  std::size_t max_length = 130;
  std::size_t factors_scanned = 0;
  std::vector<EliminationViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// Looks for Z4 factors v of length <= max_length with a kernel period
/// p >= |v| - 3 and (n-1)(|v|+1) >= np - 3 for some n in [n_lo, n_hi].
/// `injected` words are scanned as well, without a membership test.
EliminationReport verify_short_elimination(std::uint32_t n_lo = 27, std::uint32_t n_hi = 32,
                                           std::size_t max_length = 130,
                                           const std::vector<Word>& injected = {}, unsigned jobs = 0);

// Z4: the set W ------------------------------------------------------------

enum class Maximality { two_sided, left_only, right_only };

struct WSearchOptions {
  std::size_t max_length = 155;
  std::size_t period_cap = 152;
  std::size_t max_tail = 3;
  /// Keeps only p <= 31(|v| - p + 2).
  bool bound_filter = true;
  Maximality maximality = Maximality::two_sided;
};

struct MaximalKernelRepetition {
  Word word;
  std::size_t kernel_period = 0;

  std::size_t tail_length() const { return word.size() - kernel_period; }
  friend bool operator==(const MaximalKernelRepetition&, const MaximalKernelRepetition&) = default;
};

/// True iff no one-letter extension of v (on the sides selected by `mode`)
/// is a Z4 factor that keeps period p.
bool is_maximal_for_period(std::span<const Letter> v, std::size_t p, Maximality mode,
                           const Z4Language& language);

/// Sorted length-then-lex, then by period.
std::vector<MaximalKernelRepetition> compute_W(const WSearchOptions& options = {}, unsigned jobs = 0);

struct EwEntry {
  MaximalKernelRepetition w;
  std::size_t q = 0;             // longest factor of E_w with kernel period 3p
  std::int64_t margin = 0;       // 3p - 31(q - 3p + 2)
  std::size_t contexts = 0;      // pairs (a, b) with awb in Z4
  std::optional<Word> witness;   // a factor of length q realising it

  bool holds() const { return margin > 0; }
  /// |y0| <= 3|y1| + 4 for the witness read as x0 y0 over w = x1 y1.
  bool inflation_holds() const {
    return q == 0 || q - 3 * w.kernel_period <= 3 * w.tail_length() + 4;
  }
};

struct EwReport {
  std::vector<EwEntry> entries;
  bool passed() const;
};

EwReport verify_Ew(const std::vector<MaximalKernelRepetition>& W, unsigned jobs = 0);

/// Longest factor with kernel period `period` inside `x` (0 if none).
std::size_t longest_kernel_period_factor(std::span<const Letter> x, std::size_t period,
                                         std::size_t* start = nullptr);

// n = 26 --------------------------------------------------------------------

struct BinaryAvoidanceResult {
  std::size_t max_length = 0;
  Word longest;   // first longest word in DFS order (1 before 2)
  std::uint64_t nodes = 0;
};

/// Exhausts {1,2}* for words with no ψ_n-kernel repetition. Raises a limit
/// error if some word reaches `depth_cap` letters (the language may then be
/// infinite). `slack` is the constant in (n-1)(|v|+1) >= nq - slack.
BinaryAvoidanceResult binary_avoidance_search(std::uint32_t n = 26, std::size_t depth_cap = 64,
                                              std::int64_t slack = kPsiSlack);
std::size_t binary_avoidance_max_length(std::uint32_t n = 26, std::size_t depth_cap = 64);

struct StabilizingWitness {
  Letter letter = 0;
  Word input;
  std::optional<RepetitionReport> shortest;
};

struct StabilizingReport {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  Letter suffix = 0;
  std::vector<StabilizingWitness> witnesses;

  bool all_found() const;
};

/// For each letter a of the table's alphabet, the shortest k-stabilizing
/// factor of f_n(a·suffix) shorter than k(n-1). A null table raises an
/// `unavailable` error.
StabilizingReport n26_stabilizing_check(const MorphismTable* table, std::uint32_t k = 15, Letter suffix = 3);

// Z_m samples ---------------------------------------------------------------

/// `count` members of Z_m of the given length, free slots drawn in order
/// from one mt19937_64 seeded with `seed`.
std::vector<Word> zm_samples(std::uint32_t m, std::size_t length, std::size_t count, std::uint64_t seed);

struct Lemma6Report {
  std::uint32_t m = 0;
  std::size_t length = 0;
  std::uint64_t divisor = 0;  // 4^(m-1)
  std::uint64_t kernel_factors = 0;  // nonempty factors in the ψ-kernel
  std::set<std::size_t> kernel_lengths;  // filled when exhaustive
  std::vector<std::pair<std::size_t, std::size_t>> violations;  // (1-based start, length)

  bool passed() const { return violations.empty(); }
};

/// Every ψ-kernel factor of z ∈ Z_m must have length divisible by 4^(m-1).
Lemma6Report check_lemma6(std::uint32_t m, const Word& z, bool exhaustive_factors);

struct Prop7Finding {
  std::size_t sample = 0;
  RepetitionReport report;
};

struct Prop7Report {
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::size_t length = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<Prop7Finding> findings;

  bool passed() const { return findings.empty(); }
};

Prop7Report check_prop7_words(std::uint32_t m, std::uint32_t n, const std::vector<Word>& words,
                              unsigned jobs = 0);
Prop7Report check_prop7_desk(std::uint32_t m, std::uint32_t n, std::size_t length, std::size_t samples,
                             std::uint64_t seed, unsigned jobs = 0);

}  // namespace dejean
