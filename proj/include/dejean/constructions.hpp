#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <set>
#include <span>
#include <vector>

#include "dejean/word.hpp"

namespace dejean {

using BigInt = boost::multiprecision::cpp_int;

// Z_m words ----------------------------------------------------------------

/// b_i for i >= 1: 1 if i = 1 (mod 3), 2 if i = 2 (mod 3), b_{i/3} otherwise.
Letter beta_letter(std::uint64_t i);
Word beta_prefix(std::size_t k);

/// a_i over A_m: max{a : 4^(a-2) | i} for even i, b_{(i+1)/2} for odd i.
Letter alpha_letter(std::uint32_t m, std::uint64_t i);
Word alpha_prefix(std::uint32_t m, std::size_t k);

inline constexpr std::size_t kDefaultFreeSlotLimit = 24;

bool zm_is_member(std::uint32_t m, const Word& z);
std::vector<Word> zm_enumerate(std::uint32_t m, std::size_t k,
                               std::size_t free_slot_limit = kDefaultFreeSlotLimit);
/// 2^floor((k+2)/4), the number of members of length k for every m >= 5.
BigInt zm_count(std::size_t k);
/// Member of length k whose free slots are drawn from `rng`.
Word zm_sample(std::uint32_t m, std::size_t k, std::mt19937_64& rng);

// Z4 words -----------------------------------------------------------------

/// Letter-to-set-of-words substitution, extended to words by choosing one
/// image per letter.
struct SubstitutionRule {
  std::uint32_t alphabet_size = 0;
  std::vector<std::vector<Word>> images;  // images[a - 1]

  const std::vector<Word>& of(Letter a) const { return images.at(a - 1); }
};

/// g: 1 -> {112}, 2 -> {114}, 3 -> {113}, 4 -> {123, 213}.
const SubstitutionRule& substitution_g();

/// Calls `sink` once per element of g(w) (with multiplicity over choices;
/// the images of g are distinct so no duplicates arise). The span is only
/// valid during the call.
void for_each_g_image(std::span<const Letter> w, const std::function<void(std::span<const Letter>)>& sink);

std::set<Word> g_apply(const Word& w);
std::set<Word> g_apply(const std::set<Word>& words);
std::set<Word> substitute(const SubstitutionRule& rule, const std::set<Word>& words);

/// Factors of length exactly `length` of the Z4 language, sorted
/// lexicographically.
std::vector<Word> z4_factors_of_length(std::size_t length);

/// The Z4 factor language truncated at `max_length`. Stores only the
/// longest factors; shorter ones are their distinct prefixes (every factor
/// extends to the right).
class Z4Language {
 public:
  explicit Z4Language(std::size_t max_length);

  std::size_t max_length() const noexcept { return max_length_; }
  bool contains(std::span<const Letter> v) const;
  std::size_t count(std::size_t length) const;
  void for_each_factor(std::size_t length, const std::function<void(std::span<const Letter>)>& fn) const;
  std::vector<Word> factors(std::size_t length) const;

 private:
  std::size_t max_length_;
  std::vector<Word> top_;
};

/// Shared, lazily built language of at least the requested length.
std::shared_ptr<const Z4Language> z4_language(std::size_t max_length);

/// All factors of length <= L, length-then-lex sorted. Materializes every
/// word; prefer Z4Language::for_each_factor for large L.
std::vector<Word> z4_factors(std::size_t max_length);

/// Membership by desubstitution: v is a Z4 factor iff it sits inside g(u)
/// for some shorter Z4 factor u. Independent of the enumeration.
bool z4_is_factor(std::span<const Letter> v);
inline bool z4_is_factor(const Word& v) { return z4_is_factor(v.letters()); }

}  // namespace dejean
