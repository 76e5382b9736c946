#include "dejean/carpi.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dejean/pansiot.hpp"

namespace dejean {

CarpiParams carpi_params(std::uint32_t n) {
  if (n < 9) throw Error(ErrorCode::domain, "Carpi parameters need n >= 9");
  CarpiParams p;
  p.n = n;
  p.m = (n - 3) / 6;
  p.ell = n / 2;
  p.image_length = static_cast<std::size_t>(n - 1) * (p.ell + 1);
  p.below_theorem_range = n < 27;
  return p;
}

bool in_psi_kernel(std::span<const Letter> v) {
  std::vector<std::uint8_t> residues;
  for (Letter a : v) {
    if (a > residues.size()) residues.resize(a, 0);
    residues[a - 1] = static_cast<std::uint8_t>((residues[a - 1] + 1) & 3u);
  }
  for (auto r : residues) {
    if (r) return false;
  }
  return true;
}

std::vector<std::size_t> kernel_periods(const Word& v) {
  std::vector<std::size_t> out;
  auto s = v.letters();
  for (std::size_t p = 1; p <= s.size(); ++p) {
    if (in_psi_kernel(s.first(p)) && has_period(s, p)) out.push_back(p);
  }
  return out;
}

namespace {

// Per-prefix letter counts mod 4, packed two bits per letter. A factor
// [i, j) lies in the kernel iff the codes at i and j coincide.
class PrefixCodes {
 public:
  PrefixCodes(std::span<const Letter> w, std::uint32_t alphabet)
      : stride_((alphabet + 31) / 32), codes_((w.size() + 1) * stride_, 0) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::copy_n(codes_.begin() + static_cast<std::ptrdiff_t>(i * stride_), stride_,
                  codes_.begin() + static_cast<std::ptrdiff_t>((i + 1) * stride_));
      const std::uint32_t a = w[i] - 1;
      auto& word = codes_[(i + 1) * stride_ + a / 32];
      const unsigned shift = 2 * (a % 32);
      const std::uint64_t r = ((word >> shift) + 1) & 3u;
      word = (word & ~(std::uint64_t{3} << shift)) | (r << shift);
    }
  }

  bool same(std::size_t i, std::size_t j) const {
    for (std::size_t k = 0; k < stride_; ++k) {
      if (codes_[i * stride_ + k] != codes_[j * stride_ + k]) return false;
    }
    return true;
  }

 private:
  std::size_t stride_;
  std::vector<std::uint64_t> codes_;
};

// Smallest |v| >= q with (n-1)(|v|+1) >= nq - slack.
std::size_t shortest_psi_length(std::int64_t n, std::size_t q, std::int64_t slack) {
  const std::int64_t rhs = n * static_cast<std::int64_t>(q) - slack;
  if (rhs <= 0) return q;
  const std::int64_t len = (rhs + (n - 1) - 1) / (n - 1) - 1;
  return std::max<std::size_t>(q, static_cast<std::size_t>(std::max<std::int64_t>(len, 0)));
}

void check_psi_alphabet(std::uint32_t n, std::uint32_t alphabet) {
  auto params = carpi_params(n);
  if (alphabet > params.m) {
    throw Error(ErrorCode::domain, "word alphabet exceeds A_m for n = " + std::to_string(n));
  }
}

}  // namespace

std::optional<RepetitionReport> find_psi_kernel_repetition(std::uint32_t n, const Word& w,
                                                           std::int64_t slack) {
  check_psi_alphabet(n, w.alphabet_size());
  auto s = w.letters();
  PrefixCodes codes(s, w.alphabet_size());
  for (std::size_t start = 0; start < s.size(); ++start) {
    const std::size_t room = s.size() - start;
    std::size_t best = 0;
    std::size_t best_q = 0;
    for (std::size_t q = 1; q <= room; ++q) {
      if (best && best <= q) break;
      if (!codes.same(start, start + q)) continue;
      const std::size_t need = shortest_psi_length(n, q, slack);
      if (need > room || (best && need >= best)) continue;
      if (has_period(s.subspan(start, need), q)) {
        best = need;
        best_q = q;
      }
    }
    if (best) return make_report(start, best, best_q, RepetitionKind::psi_kernel);
  }
  return std::nullopt;
}

bool has_psi_kernel_suffix(std::uint32_t n, std::span<const Letter> w, std::uint32_t alphabet,
                           std::int64_t slack) {
  const std::size_t len = w.size();
  std::vector<std::uint8_t> residues(alphabet, 0);
  std::size_t nonzero = 0;
  for (std::size_t q = 1; q <= len; ++q) {
    auto& r = residues[w[len - q] - 1];
    if (r == 0) ++nonzero;
    r = static_cast<std::uint8_t>((r + 1) & 3u);
    if (r == 0) --nonzero;
    if (nonzero) continue;
    std::size_t k = 0;
    while (k + q < len && w[len - 1 - k] == w[len - 1 - k - q]) ++k;
    if (shortest_psi_length(n, q, slack) <= q + k) return true;
  }
  return false;
}

MorphismTable::MorphismTable(std::uint32_t n, std::vector<Word> images) : n_(n), images_(std::move(images)) {
  if (n_ < 2) throw Error(ErrorCode::invalid_argument, "table order must be at least 2");
  if (images_.empty()) throw Error(ErrorCode::invalid_argument, "table has no images");
  image_length_ = images_.front().size();
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i].alphabet_size() != 2) {
      throw Error(ErrorCode::invalid_argument, "image of letter " + std::to_string(i + 1) + " is not binary");
    }
    if (images_[i].size() != image_length_) {
      throw Error(ErrorCode::invalid_argument, "table is not uniform: image of letter " +
                                                   std::to_string(i + 1) + " has length " +
                                                   std::to_string(images_[i].size()));
    }
  }
}

MorphismTable MorphismTable::make(std::uint32_t n, std::vector<Word> images) {
  return MorphismTable(n, std::move(images));
}

MorphismTable MorphismTable::carpi(std::uint32_t n, std::vector<Word> images) {
  auto params = carpi_params(n);
  if (images.size() != params.m) {
    throw Error(ErrorCode::invalid_argument, "table must have exactly m = " + std::to_string(params.m) +
                                                 " images, got " + std::to_string(images.size()));
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].size() != params.image_length) {
      throw Error(ErrorCode::invalid_argument,
                  "image of letter " + std::to_string(i + 1) + " must have length " +
                      std::to_string(params.image_length));
    }
  }
  return MorphismTable(n, std::move(images));
}

MorphismTable MorphismTable::parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("morphism table: ") + e.what());
  }
  try {
    const auto n = doc.at("n").get<std::uint32_t>();
    const auto m = doc.at("m").get<std::uint32_t>();
    const auto params = carpi_params(n);
    if (m != params.m) {
      throw Error(ErrorCode::invalid_argument,
                  "morphism table: m = " + std::to_string(m) + " but floor((n-3)/6) = " + std::to_string(params.m));
    }
    const auto& images = doc.at("images");
    if (!images.is_object() || images.size() != m) {
      throw Error(ErrorCode::invalid_argument, "morphism table: images must map each of 1..m");
    }
    std::vector<Word> words;
    for (std::uint32_t a = 1; a <= m; ++a) {
      auto it = images.find(std::to_string(a));
      if (it == images.end()) {
        throw Error(ErrorCode::invalid_argument, "morphism table: missing image for letter " + std::to_string(a));
      }
      words.push_back(Word::parse_binary(it->get<std::string>()));
    }
    return carpi(n, std::move(words));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, std::string("morphism table: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::parse || e.code() == ErrorCode::invalid_argument) throw;
    throw Error(ErrorCode::invalid_argument, std::string("morphism table: ") + e.what());
  }
}

MorphismTable MorphismTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open morphism table " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

const Word& MorphismTable::image(Letter a) const {
  if (a < 1 || a > images_.size()) {
    throw Error(ErrorCode::invalid_argument, "letter " + std::to_string(a) + " has no image");
  }
  return images_[a - 1];
}

std::string MorphismTable::to_json() const {
  nlohmann::ordered_json doc;
  doc["n"] = n_;
  doc["m"] = images_.size();
  auto& images = doc["images"];
  images = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < images_.size(); ++i) images[std::to_string(i + 1)] = images_[i].to_binary_string();
  return doc.dump(2);
}

Word apply_morphism(const MorphismTable& table, const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size() * table.image_length());
  for (Letter a : w.letters()) {
    auto img = table.image(a).letters();
    out.insert(out.end(), img.begin(), img.end());
  }
  return Word(std::move(out), 2);
}

std::optional<RepetitionReport> check_carpi_short(const MorphismTable& table, const Word& w) {
  return find_short_stabilizing(table.order(), apply_morphism(table, w));
}

Word threshold_pipeline(const MorphismTable& table, const Word& w, bool verify) {
  const std::uint32_t n = table.order();
  if (verify && n >= 9) {
    if (auto r = find_psi_kernel_repetition(n, w)) {
      throw VerificationError("input contains a psi-kernel repetition", *r);
    }
  }
  Word out = gamma(n, apply_morphism(table, w));
  if (verify) {
    const RationalExponent bound(n, n - 1);
    if (auto r = find_forbidden_factor(out, bound, true)) {
      throw VerificationError("output has a factor of exponent > " + bound.to_string(), *r);
    }
  }
  return out;
}

}  // namespace dejean
