#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dejean {

using Letter = std::uint32_t;

/// A finite word over the alphabet {1..alphabet_size}.
///
/// Letters are 1-based. Binary words (alphabet 2) are written with the
/// characters 0 and 1 at I/O boundaries only: letter 1 prints as '0' and
/// letter 2 as '1'.
class Word {
 public:
  Word() = default;
  Word(std::vector<Letter> letters, std::uint32_t alphabet_size);

  static Word parse(std::string_view text, std::uint32_t alphabet_size);
  static Word parse_binary(std::string_view bits);

  std::string to_string() const;
  std::string to_binary_string() const;

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  std::uint32_t alphabet_size() const noexcept { return alphabet_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }

  Word factor(std::size_t start, std::size_t length) const;
  Word concat(const Word& other) const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
    return a.letters_ <=> b.letters_;
  }

 private:
  std::vector<Letter> letters_;
  std::uint32_t alphabet_ = 1;
};

/// Length first, then lexicographic.
struct ShortLex {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

std::string format_letters(std::span<const Letter> letters, std::uint32_t alphabet_size);

/// Exact positive rational kept in lowest terms.
class RationalExponent {
 public:
  RationalExponent(std::int64_t numerator, std::int64_t denominator);

  static RationalExponent parse(std::string_view text);

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  std::string to_string() const;

  friend bool operator==(const RationalExponent&, const RationalExponent&) = default;
  friend std::strong_ordering operator<=>(const RationalExponent& a, const RationalExponent& b);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

enum class RepetitionKind { plain, kernel, psi_kernel, stabilizing };

std::string_view kind_name(RepetitionKind kind);

/// Certificate for a forbidden factor. `start` is 1-based; `order` holds the
/// stabilized prefix size k for stabilizing reports and 0 otherwise.
struct RepetitionReport {
  std::size_t start = 1;
  std::size_t length = 0;
  std::size_t period = 1;
  RationalExponent exponent{1, 1};
  RepetitionKind kind = RepetitionKind::plain;
  std::uint32_t order = 0;

  friend bool operator==(const RepetitionReport&, const RepetitionReport&) = default;
};

RepetitionReport make_report(std::size_t start0, std::size_t length, std::size_t period,
                             RepetitionKind kind, std::uint32_t order = 0);

bool has_period(std::span<const Letter> w, std::size_t p);
std::vector<std::size_t> periods(const Word& w);
std::size_t minimal_period(std::span<const Letter> w);
RationalExponent max_exponent(const Word& w);

/// Leftmost, then shortest, factor of exponent >= r (strict = false) or
/// > r (strict = true).
std::optional<RepetitionReport> find_forbidden_factor(const Word& w, const RationalExponent& r,
                                                      bool strict);

/// Same test restricted to factors ending at the last letter. Used by the
/// incremental depth-first searches: a word is free iff no prefix has a
/// violating suffix.
bool has_forbidden_suffix(std::span<const Letter> w, const RationalExponent& r, bool strict);

RationalExponent repetition_threshold(std::uint32_t n);

/// counts[a - 1] = |w|_a for a in {1..alphabet_size}.
std::vector<std::size_t> letter_counts(const Word& w);

}  // namespace dejean
