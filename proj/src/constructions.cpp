#include "dejean/constructions.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <unordered_set>

#include "dejean/error.hpp"

namespace dejean {

Letter beta_letter(std::uint64_t i) {
  if (i == 0) throw Error(ErrorCode::domain, "beta is indexed from 1");
  while (i % 3 == 0) i /= 3;
  return i % 3 == 1 ? 1 : 2;
}

Word beta_prefix(std::size_t k) {
  std::vector<Letter> out(k);
  for (std::size_t i = 1; i <= k; ++i) out[i - 1] = beta_letter(i);
  return Word(std::move(out), 2);
}

Letter alpha_letter(std::uint32_t m, std::uint64_t i) {
  if (i == 0) throw Error(ErrorCode::domain, "alpha is indexed from 1");
  if (i % 2 == 1) return beta_letter((i + 1) / 2);
  std::uint32_t a = 2;
  while (a < m && i % 4 == 0) {
    i /= 4;
    ++a;
  }
  return a;
}

Word alpha_prefix(std::uint32_t m, std::size_t k) {
  if (m < 4) throw Error(ErrorCode::domain, "alpha needs m >= 4");
  std::vector<Letter> out(k);
  for (std::size_t i = 1; i <= k; ++i) out[i - 1] = alpha_letter(m, i);
  return Word(std::move(out), m);
}

namespace {

void require_case_one(std::uint32_t m) {
  if (m < 5) throw Error(ErrorCode::domain, "Z_m is defined here for m >= 5; m = 4 uses Z4");
}

}  // namespace

bool zm_is_member(std::uint32_t m, const Word& z) {
  require_case_one(m);
  for (std::size_t i = 1; i <= z.size(); ++i) {
    const Letter c = z[i - 1];
    if (i % 4 == 2) {
      if (c != 1 && c != 2) return false;
    } else if (c != alpha_letter(m, i)) {
      return false;
    }
  }
  return true;
}

std::vector<Word> zm_enumerate(std::uint32_t m, std::size_t k, std::size_t free_slot_limit) {
  require_case_one(m);
  const std::size_t slots = (k + 2) / 4;
  if (slots > free_slot_limit) {
    throw Error(ErrorCode::limit, "Z_m enumeration at length " + std::to_string(k) + " needs 2^" +
                                      std::to_string(slots) + " words (limit 2^" +
                                      std::to_string(free_slot_limit) + ")");
  }
  const Word base = alpha_prefix(m, k);
  std::vector<Word> out;
  out.reserve(std::size_t{1} << slots);
  std::vector<Letter> letters(base.letters().begin(), base.letters().end());
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots); ++mask) {
    // The first free slot is the most significant bit, so counting up
    // walks the words in lexicographic order.
    for (std::size_t s = 0; s < slots; ++s) {
      const bool two = (mask >> (slots - 1 - s)) & 1u;
      letters[4 * s + 1] = two ? 2 : 1;
    }
    out.emplace_back(letters, m);
  }
  return out;
}

BigInt zm_count(std::size_t k) {
  BigInt one = 1;
  return one << ((k + 2) / 4);
}

Word zm_sample(std::uint32_t m, std::size_t k, std::mt19937_64& rng) {
  require_case_one(m);
  Word base = alpha_prefix(m, k);
  std::vector<Letter> letters(base.letters().begin(), base.letters().end());
  std::uint64_t bits = 0;
  int left = 0;
  for (std::size_t i = 1; i < letters.size(); i += 4) {
    if (left == 0) {
      bits = rng();
      left = 64;
    }
    letters[i] = (bits & 1u) ? 2 : 1;
    bits >>= 1;
    --left;
  }
  return Word(std::move(letters), m);
}

// -------------------------------------------------------------------------

const SubstitutionRule& substitution_g() {
  static const SubstitutionRule rule = [] {
    SubstitutionRule r;
    r.alphabet_size = 4;
    r.images = {{Word::parse("112", 4)},
                {Word::parse("114", 4)},
                {Word::parse("113", 4)},
                {Word::parse("123", 4), Word::parse("213", 4)}};
    return r;
  }();
  return rule;
}

namespace {

// Internal Z4 words are byte strings holding letter values 1..4.
using Bytes = std::string;

constexpr const char* kImages[4][2] = {{"\1\1\2", nullptr},
                                       {"\1\1\4", nullptr},
                                       {"\1\1\3", nullptr},
                                       {"\1\2\3", "\2\1\3"}};

template <typename Seq, typename Fn>
void expand_images(const Seq& w, Bytes& buf, std::size_t i, Fn& fn) {
  if (i == w.size()) {
    fn(buf);
    return;
  }
  const auto a = static_cast<std::size_t>(w[i]);
  for (const char* img : kImages[a - 1]) {
    if (!img) continue;
    buf.append(img, 3);
    expand_images(w, buf, i + 1, fn);
    buf.resize(buf.size() - 3);
  }
}

template <typename Seq, typename Fn>
void each_image(const Seq& w, Fn&& fn) {
  for (auto a : w) {
    if (a < 1 || a > 4) throw Error(ErrorCode::invalid_argument, "g is defined on A_4 only");
  }
  Bytes buf;
  buf.reserve(3 * w.size());
  expand_images(w, buf, 0, fn);
}

using ByteSet = std::unordered_set<Bytes>;

void add_windows(const Bytes& x, std::size_t length, ByteSet& out) {
  for (std::size_t i = 0; i + length <= x.size(); ++i) out.insert(x.substr(i, length));
}

// Length-`length` factors when ceil((length+2)/3) == length, i.e. length <= 2:
// close the windows of g^3(1) under g.
ByteSet base_factors(std::size_t length) {
  ByteSet seed{Bytes("\1")};
  for (int round = 0; round < 3; ++round) {
    ByteSet next;
    for (const auto& w : seed) each_image(w, [&](const Bytes& x) { next.insert(x); });
    seed = std::move(next);
  }
  ByteSet s;
  for (const auto& w : seed) add_windows(w, length, s);
  for (;;) {
    ByteSet grown = s;
    for (const auto& u : s) each_image(u, [&](const Bytes& x) { add_windows(x, length, grown); });
    if (grown.size() == s.size()) return s;
    s = std::move(grown);
  }
}

std::mutex g_cache_mutex;
std::map<std::size_t, std::shared_ptr<const std::vector<Bytes>>> g_length_cache;

std::shared_ptr<const std::vector<Bytes>> factors_bytes(std::size_t length) {
  {
    std::lock_guard lock(g_cache_mutex);
    if (auto it = g_length_cache.find(length); it != g_length_cache.end()) return it->second;
  }
  ByteSet set;
  if (length == 0) {
    set.insert(Bytes());
  } else if (length <= 2) {
    set = base_factors(length);
  } else {
    // A window of `length` letters meets at most ceil((length+2)/3) blocks.
    auto cover = factors_bytes((length + 4) / 3);
    for (const auto& u : *cover) each_image(u, [&](const Bytes& x) { add_windows(x, length, set); });
  }
  auto sorted = std::make_shared<std::vector<Bytes>>(set.begin(), set.end());
  std::sort(sorted->begin(), sorted->end());
  std::lock_guard lock(g_cache_mutex);
  return g_length_cache.emplace(length, std::move(sorted)).first->second;
}

Word to_word(std::string_view bytes) {
  std::vector<Letter> letters(bytes.begin(), bytes.end());
  return Word(std::move(letters), 4);
}

}  // namespace

void for_each_g_image(std::span<const Letter> w, const std::function<void(std::span<const Letter>)>& sink) {
  std::vector<Letter> buf;
  each_image(w, [&](const Bytes& x) {
    buf.assign(x.begin(), x.end());
    sink(buf);
  });
}

std::set<Word> substitute(const SubstitutionRule& rule, const std::set<Word>& words) {
  std::set<Word> out;
  for (const auto& w : words) {
    std::vector<std::vector<Letter>> partial{{}};
    for (Letter a : w.letters()) {
      if (a < 1 || a > rule.alphabet_size) throw Error(ErrorCode::invalid_argument, "letter outside substitution alphabet");
      std::vector<std::vector<Letter>> next;
      for (const auto& p : partial) {
        for (const auto& img : rule.of(a)) {
          auto q = p;
          q.insert(q.end(), img.letters().begin(), img.letters().end());
          next.push_back(std::move(q));
        }
      }
      partial = std::move(next);
    }
    for (auto& p : partial) out.emplace(std::move(p), rule.alphabet_size);
  }
  return out;
}

std::set<Word> g_apply(const std::set<Word>& words) { return substitute(substitution_g(), words); }

std::set<Word> g_apply(const Word& w) { return g_apply(std::set<Word>{w}); }

std::vector<Word> z4_factors_of_length(std::size_t length) {
  auto bytes = factors_bytes(length);
  std::vector<Word> out;
  out.reserve(bytes->size());
  for (const auto& b : *bytes) out.push_back(to_word(b));
  return out;
}

Z4Language::Z4Language(std::size_t max_length) : max_length_(max_length), top_(z4_factors_of_length(max_length)) {}

namespace {

// Compare the first |v| letters of w against v.
int compare_prefix(const Word& w, std::span<const Letter> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (w[i] != v[i]) return w[i] < v[i] ? -1 : 1;
  }
  return 0;
}

}  // namespace

bool Z4Language::contains(std::span<const Letter> v) const {
  if (v.size() > max_length_) throw Error(ErrorCode::limit, "word longer than the enumerated Z4 language");
  auto it = std::lower_bound(top_.begin(), top_.end(), v,
                             [](const Word& w, std::span<const Letter> key) { return compare_prefix(w, key) < 0; });
  return it != top_.end() && compare_prefix(*it, v) == 0;
}

void Z4Language::for_each_factor(std::size_t length,
                                 const std::function<void(std::span<const Letter>)>& fn) const {
  if (length > max_length_) throw Error(ErrorCode::limit, "length beyond the enumerated Z4 language");
  const Word* prev = nullptr;
  for (const auto& w : top_) {
    if (prev && std::equal(w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(length),
                           prev->letters().begin())) {
      continue;
    }
    fn(w.letters().first(length));
    prev = &w;
  }
}

std::size_t Z4Language::count(std::size_t length) const {
  std::size_t c = 0;
  for_each_factor(length, [&](std::span<const Letter>) { ++c; });
  return c;
}

std::vector<Word> Z4Language::factors(std::size_t length) const {
  std::vector<Word> out;
  for_each_factor(length, [&](std::span<const Letter> v) { out.emplace_back(std::vector<Letter>(v.begin(), v.end()), 4); });
  return out;
}

std::shared_ptr<const Z4Language> z4_language(std::size_t max_length) {
  static std::mutex mutex;
  static std::shared_ptr<const Z4Language> cached;
  {
    std::lock_guard lock(mutex);
    if (cached && cached->max_length() >= max_length) return cached;
  }
  auto built = std::make_shared<const Z4Language>(max_length);
  std::lock_guard lock(mutex);
  if (!cached || cached->max_length() < max_length) cached = built;
  return cached;
}

std::vector<Word> z4_factors(std::size_t max_length) {
  auto lang = z4_language(max_length);
  std::vector<Word> out;
  for (std::size_t l = 1; l <= max_length; ++l) {
    auto f = lang->factors(l);
    out.insert(out.end(), std::make_move_iterator(f.begin()), std::make_move_iterator(f.end()));
  }
  return out;
}

namespace {

bool desubstitute_member(std::span<const Letter> v) {
  if (v.size() <= 2) {
    if (v.empty()) return true;
    static const ByteSet small[2] = {base_factors(1), base_factors(2)};
    return small[v.size() - 1].contains(Bytes(v.begin(), v.end()));
  }
  for (std::size_t phase = 0; phase < 3; ++phase) {
    const std::size_t blocks = (phase + v.size() + 2) / 3;
    std::vector<std::vector<Letter>> options(blocks);
    bool ok = true;
    for (std::size_t b = 0; b < blocks && ok; ++b) {
      for (Letter a = 1; a <= 4; ++a) {
        for (const char* img : kImages[a - 1]) {
          if (!img) continue;
          bool match = true;
          for (std::size_t j = 0; j < 3 && match; ++j) {
            const std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(3 * b + j) - static_cast<std::ptrdiff_t>(phase);
            if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(v.size())) continue;
            match = static_cast<Letter>(img[j]) == v[static_cast<std::size_t>(pos)];
          }
          if (match && (options[b].empty() || options[b].back() != a)) options[b].push_back(a);
        }
      }
      ok = !options[b].empty();
    }
    if (!ok) continue;
    std::vector<Letter> u(blocks);
    std::vector<std::size_t> pick(blocks, 0);
    for (;;) {
      for (std::size_t b = 0; b < blocks; ++b) u[b] = options[b][pick[b]];
      if (desubstitute_member(u)) return true;
      std::size_t b = 0;
      while (b < blocks && ++pick[b] == options[b].size()) pick[b++] = 0;
      if (b == blocks) break;
    }
  }
  return false;
}

}  // namespace

bool z4_is_factor(std::span<const Letter> v) {
  for (Letter a : v) {
    if (a < 1 || a > 4) return false;
  }
  return desubstitute_member(v);
}

}  // namespace dejean
