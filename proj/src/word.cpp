#include "dejean/word.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "dejean/error.hpp"

namespace dejean {

Word::Word(std::vector<Letter> letters, std::uint32_t alphabet_size)
    : letters_(std::move(letters)), alphabet_(alphabet_size) {
  if (alphabet_ < 1) throw Error(ErrorCode::invalid_argument, "alphabet size must be at least 1");
  for (Letter a : letters_) {
    if (a < 1 || a > alphabet_) {
      throw Error(ErrorCode::invalid_argument,
                  "letter " + std::to_string(a) + " outside alphabet {1.." +
                      std::to_string(alphabet_) + "}");
    }
  }
}

Word Word::parse(std::string_view text, std::uint32_t alphabet_size) {
  std::vector<Letter> letters;
  if (alphabet_size <= 9) {
    letters.reserve(text.size());
    for (char c : text) {
      if (c < '1' || c > '9') {
        throw Error(ErrorCode::parse, std::string("invalid letter character '") + c + "'");
      }
      letters.push_back(static_cast<Letter>(c - '0'));
    }
  } else if (!text.empty()) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t comma = text.find(',', pos);
      if (comma == std::string_view::npos) comma = text.size();
      std::string_view token = text.substr(pos, comma - pos);
      Letter value = 0;
      auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
      if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
        throw Error(ErrorCode::parse, "invalid letter token '" + std::string(token) + "'");
      }
      letters.push_back(value);
      pos = comma + 1;
    }
  }
  try {
    return Word(std::move(letters), alphabet_size);
  } catch (const Error& e) {
    throw Error(ErrorCode::parse, e.what());
  }
}

Word Word::parse_binary(std::string_view bits) {
  std::vector<Letter> letters;
  letters.reserve(bits.size());
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw Error(ErrorCode::parse, std::string("invalid binary character '") + c + "'");
    }
    letters.push_back(c == '0' ? 1 : 2);
  }
  return Word(std::move(letters), 2);
}

std::string format_letters(std::span<const Letter> letters, std::uint32_t alphabet_size) {
  std::string out;
  if (alphabet_size <= 9) {
    out.reserve(letters.size());
    for (Letter a : letters) out.push_back(static_cast<char>('0' + a));
    return out;
  }
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(letters[i]);
  }
  return out;
}

std::string Word::to_string() const { return format_letters(letters_, alphabet_); }

std::string Word::to_binary_string() const {
  if (alphabet_ != 2) throw Error(ErrorCode::invalid_argument, "word is not binary");
  std::string out;
  out.reserve(letters_.size());
  for (Letter a : letters_) out.push_back(a == 1 ? '0' : '1');
  return out;
}

Word Word::factor(std::size_t start, std::size_t length) const {
  if (start + length > letters_.size()) throw Error(ErrorCode::invalid_argument, "factor out of range");
  Word w;
  w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(start),
                    letters_.begin() + static_cast<std::ptrdiff_t>(start + length));
  w.alphabet_ = alphabet_;
  return w;
}

Word Word::concat(const Word& other) const {
  Word w = *this;
  w.alphabet_ = std::max(alphabet_, other.alphabet_);
  w.letters_.insert(w.letters_.end(), other.letters_.begin(), other.letters_.end());
  return w;
}

RationalExponent::RationalExponent(std::int64_t numerator, std::int64_t denominator) {
  if (numerator <= 0 || denominator <= 0) {
    throw Error(ErrorCode::invalid_argument, "exponent must be a positive fraction");
  }
  std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

RationalExponent RationalExponent::parse(std::string_view text) {
  std::size_t slash = text.find('/');
  std::string_view a = text.substr(0, slash);
  std::string_view b = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  std::int64_t num = 0;
  std::int64_t den = 0;
  auto r1 = std::from_chars(a.data(), a.data() + a.size(), num);
  auto r2 = std::from_chars(b.data(), b.data() + b.size(), den);
  if (a.empty() || b.empty() || r1.ec != std::errc() || r2.ec != std::errc() ||
      r1.ptr != a.data() + a.size() || r2.ptr != b.data() + b.size() || num <= 0 || den <= 0) {
    throw Error(ErrorCode::parse, "invalid rational '" + std::string(text) + "', expected num/den");
  }
  return {num, den};
}

std::string RationalExponent::to_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering operator<=>(const RationalExponent& a, const RationalExponent& b) {
  return a.num_ * b.den_ <=> b.num_ * a.den_;
}

std::string_view kind_name(RepetitionKind kind) {
  switch (kind) {
    case RepetitionKind::plain: return "plain";
    case RepetitionKind::kernel: return "kernel";
    case RepetitionKind::psi_kernel: return "psi_kernel";
    case RepetitionKind::stabilizing: return "stabilizing";
  }
  return "plain";
}

RepetitionReport make_report(std::size_t start0, std::size_t length, std::size_t period,
                             RepetitionKind kind, std::uint32_t order) {
  return RepetitionReport{start0 + 1, length, period,
                          RationalExponent(static_cast<std::int64_t>(length),
                                           static_cast<std::int64_t>(period)),
                          kind, order};
}

bool has_period(std::span<const Letter> w, std::size_t p) {
  if (p == 0) return false;
  for (std::size_t i = 0; i + p < w.size(); ++i) {
    if (w[i] != w[i + p]) return false;
  }
  return true;
}

std::vector<std::size_t> periods(const Word& w) {
  std::vector<std::size_t> out;
  for (std::size_t p = 1; p <= w.size(); ++p) {
    if (has_period(w.letters(), p)) out.push_back(p);
  }
  return out;
}

std::size_t minimal_period(std::span<const Letter> w) {
  for (std::size_t p = 1; p < w.size(); ++p) {
    if (has_period(w, p)) return p;
  }
  return w.size();
}

RationalExponent max_exponent(const Word& w) {
  if (w.empty()) throw Error(ErrorCode::domain, "undefined exponent");
  auto p = minimal_period(w.letters());
  return {static_cast<std::int64_t>(w.size()), static_cast<std::int64_t>(p)};
}

namespace {

// Does length/period violate the bound?
bool violates(std::int64_t length, std::int64_t period, const RationalExponent& r, bool strict) {
  std::int64_t lhs = length * r.denominator();
  std::int64_t rhs = r.numerator() * period;
  return strict ? lhs > rhs : lhs >= rhs;
}

// Shortest length >= period whose ratio to period violates the bound.
std::int64_t shortest_violating_length(std::int64_t period, const RationalExponent& r, bool strict) {
  std::int64_t scaled = r.numerator() * period;
  std::int64_t len = strict ? scaled / r.denominator() + 1
                            : (scaled + r.denominator() - 1) / r.denominator();
  return std::max(len, period);
}

}  // namespace

std::optional<RepetitionReport> find_forbidden_factor(const Word& w, const RationalExponent& r,
                                                      bool strict) {
  auto s = w.letters();
  const std::size_t n = s.size();
  for (std::size_t start = 0; start < n; ++start) {
    const std::int64_t room = static_cast<std::int64_t>(n - start);
    std::int64_t best = 0;
    for (std::int64_t p = 1; p <= room; ++p) {
      if (best && best <= p) break;
      if (!violates(room, p, r, strict)) break;
      std::int64_t need = shortest_violating_length(p, r, strict);
      if (need > room || (best && need >= best)) continue;
      // Factor s[start, start+need) must have period p.
      std::int64_t i = 0;
      while (i + p < need && s[start + i] == s[start + i + p]) ++i;
      if (i + p >= need) best = need;
    }
    if (best) {
      auto len = static_cast<std::size_t>(best);
      auto p = minimal_period(s.subspan(start, len));
      return make_report(start, len, p, RepetitionKind::plain);
    }
  }
  return std::nullopt;
}

bool has_forbidden_suffix(std::span<const Letter> w, const RationalExponent& r, bool strict) {
  const std::size_t n = w.size();
  for (std::size_t p = 1; p <= n; ++p) {
    if (!violates(static_cast<std::int64_t>(n), static_cast<std::int64_t>(p), r, strict)) break;
    std::size_t k = 0;
    while (k + p < n && w[n - 1 - k] == w[n - 1 - k - p]) ++k;
    if (violates(static_cast<std::int64_t>(p + k), static_cast<std::int64_t>(p), r, strict)) return true;
  }
  return false;
}

RationalExponent repetition_threshold(std::uint32_t n) {
  if (n < 2) throw Error(ErrorCode::domain, "repetition threshold needs n >= 2");
  if (n == 2) return {2, 1};
  if (n == 3) return {7, 4};
  if (n == 4) return {7, 5};
  return {n, n - 1};
}

std::vector<std::size_t> letter_counts(const Word& w) {
  std::vector<std::size_t> counts(w.alphabet_size(), 0);
  for (Letter a : w.letters()) ++counts[a - 1];
  return counts;
}

}  // namespace dejean
