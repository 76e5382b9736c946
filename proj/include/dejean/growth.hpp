#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dejean/constructions.hpp"
#include "dejean/word.hpp"

namespace dejean {

/// counts[k - 1] = C_L(k). When `truncated` is set, the counts stop at the
/// last length that finished within the node budget and `truncated_at` is the
/// first length that did not.
struct GrowthTable {
  std::string language;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<BigInt> counts;
  bool truncated = false;
  std::size_t truncated_at = 0;
};

struct CountOptions {
  std::uint64_t node_budget = 0;  // 0 = unlimited
  unsigned jobs = 0;
  std::size_t split_depth = 4;
  /// Count words up to renaming of letters and scale by n!/(n-d)!.
  bool symmetry = false;
  /// Replaces RT(n) in count_threshold_words.
  std::optional<RationalExponent> threshold;
};

GrowthTable count_threshold_words(std::uint32_t n, std::size_t max_length, const CountOptions& options = {});

enum class Closure { undeclared, prefix_closed, general };

struct LanguageSpec {
  std::string name;
  std::function<bool(std::span<const Letter>)> contains;
  Closure closure = Closure::undeclared;
};

/// Pruned DFS for prefix-closed languages, level-by-level filtering of all
/// words otherwise.
GrowthTable count_language(const LanguageSpec& language, std::uint32_t alphabet, std::size_t max_length,
                           const CountOptions& options = {});

/// floor(x * 10^digits) rendered with `digits` decimals.
std::string kth_root_decimal(const BigInt& value, std::size_t k, int digits = 6);
std::string ratio_decimal(const BigInt& numerator, const BigInt& denominator, int digits = 6);

struct GrowthSummary {
  std::vector<std::string> ratios;  // C(k+1)/C(k)
  std::vector<std::string> roots;   // C(k)^(1/k)
  std::string last_ratio;
  std::string last_root;
  bool ratios_nonincreasing = true;
  bool roots_nonincreasing = true;
  std::vector<std::pair<std::size_t, std::size_t>> fekete_violations;  // (j, k) with C(j+k) > C(j)C(k)
};

GrowthSummary growth_estimate(const GrowthTable& table);

struct LowerBound {
  std::uint32_t n = 0;
  std::uint32_t base = 0;
  std::uint64_t divisor = 0;
  std::string expression;  // e.g. "2^(k/2176)"
  std::string value;       // decimal value at the requested k
};

LowerBound theorem2_lower_bound(std::uint32_t n, std::uint64_t k);

std::string to_csv(const GrowthTable& table);

}  // namespace dejean
