#include "dejean/pansiot.hpp"

#include <algorithm>
#include <numeric>

#include "dejean/error.hpp"

namespace dejean {

namespace {

void require_order(std::uint32_t n) {
  if (n < 2) throw Error(ErrorCode::domain, "order n must be at least 2");
}

void require_binary(const Word& w) {
  if (w.alphabet_size() != 2) throw Error(ErrorCode::invalid_argument, "expected a binary word");
}

// x·σ for the generator of `bit`.
inline std::uint32_t step(std::uint32_t x, Letter bit, std::uint32_t n) {
  const std::uint32_t len = bit == 1 ? n - 1 : n;
  if (x > len) return x;
  return x == len ? 1 : x + 1;
}

// image <- image·σ, in place.
void compose_generator(std::vector<std::uint32_t>& image, Letter bit, std::uint32_t n) {
  for (auto& x : image) x = step(x, bit, n);
}

bool is_identity_image(const std::vector<std::uint32_t>& image) {
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] != i + 1) return false;
  }
  return true;
}

std::uint32_t fixed_prefix_of(const std::vector<std::uint32_t>& image) {
  std::uint32_t k = 0;
  while (k < image.size() && image[k] == k + 1) ++k;
  return k;
}

std::vector<std::uint32_t> identity_image(std::uint32_t n) {
  std::vector<std::uint32_t> image(n);
  std::iota(image.begin(), image.end(), 1u);
  return image;
}

}  // namespace

Permutation Permutation::identity(std::uint32_t n) {
  require_order(n);
  return Permutation(identity_image(n));
}

Permutation Permutation::from_images(std::vector<std::uint32_t> images) {
  std::vector<bool> seen(images.size() + 1, false);
  for (auto x : images) {
    if (x < 1 || x > images.size() || seen[x]) {
      throw Error(ErrorCode::invalid_argument, "images do not form a bijection");
    }
    seen[x] = true;
  }
  return Permutation(std::move(images));
}

Permutation Permutation::then(const Permutation& next) const {
  if (next.degree() != degree()) throw Error(ErrorCode::invalid_argument, "degree mismatch");
  std::vector<std::uint32_t> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[i] = next.apply(image_[i]);
  return Permutation(std::move(out));
}

Permutation Permutation::inverse() const {
  std::vector<std::uint32_t> out(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) out[image_[i] - 1] = static_cast<std::uint32_t>(i + 1);
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const { return is_identity_image(image_); }

std::uint32_t Permutation::fixed_prefix() const { return fixed_prefix_of(image_); }

Permutation phi_generator(std::uint32_t n, Letter bit) {
  require_order(n);
  if (bit != 1 && bit != 2) throw Error(ErrorCode::invalid_argument, "non-binary letter");
  auto image = identity_image(n);
  compose_generator(image, bit, n);
  return Permutation::from_images(std::move(image));
}

Permutation phi(std::uint32_t n, const Word& binary) {
  require_order(n);
  require_binary(binary);
  auto image = identity_image(n);
  for (Letter b : binary.letters()) compose_generator(image, b, n);
  return Permutation::from_images(std::move(image));
}

Word gamma(std::uint32_t n, const Word& binary) {
  require_order(n);
  require_binary(binary);
  // inverse[x - 1] is the point sent to x by the current prefix permutation.
  auto inverse = identity_image(n);
  std::vector<Letter> out;
  out.reserve(binary.size());
  for (Letter b : binary.letters()) {
    const std::uint32_t len = b == 1 ? n - 1 : n;
    std::rotate(inverse.begin(), inverse.begin() + (len - 1), inverse.begin() + len);
    out.push_back(inverse[0]);
  }
  return Word(std::move(out), n);
}

bool is_k_stabilizing(std::uint32_t n, const Word& binary, std::uint32_t k) {
  require_order(n);
  if (k < 1 || k > n - 1) throw Error(ErrorCode::domain, "k must lie in {1..n-1}");
  if (binary.empty()) throw Error(ErrorCode::domain, "stabilizing words are nonempty");
  return phi(n, binary).fixed_prefix() >= k;
}

namespace {

std::optional<RepetitionReport> stabilizing_scan(std::uint32_t n, const Word& binary,
                                                 std::uint32_t k_lo, std::uint32_t k_hi) {
  require_order(n);
  require_binary(binary);
  auto s = binary.letters();
  const std::size_t max_len = static_cast<std::size_t>(k_hi) * (n - 1) - 1;
  std::vector<std::uint32_t> image(n);
  for (std::size_t start = 0; start < s.size(); ++start) {
    std::iota(image.begin(), image.end(), 1u);
    const std::size_t stop = std::min(s.size(), start + max_len);
    for (std::size_t end = start; end < stop; ++end) {
      compose_generator(image, s[end], n);
      const std::size_t len = end - start + 1;
      std::uint32_t k = std::min(fixed_prefix_of(image), k_hi);
      if (k >= k_lo && len < static_cast<std::size_t>(k) * (n - 1)) {
        auto p = minimal_period(s.subspan(start, len));
        return make_report(start, len, p, RepetitionKind::stabilizing, k);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<RepetitionReport> find_short_stabilizing(std::uint32_t n, const Word& binary) {
  require_order(n);
  return stabilizing_scan(n, binary, 1, n - 1);
}

std::optional<RepetitionReport> find_short_stabilizing(std::uint32_t n, const Word& binary,
                                                       std::uint32_t k) {
  require_order(n);
  if (k < 1 || k > n - 1) throw Error(ErrorCode::domain, "k must lie in {1..n-1}");
  return stabilizing_scan(n, binary, k, k);
}

std::optional<RepetitionReport> find_shortest_stabilizing(std::uint32_t n, const Word& binary,
                                                          std::uint32_t k) {
  require_order(n);
  require_binary(binary);
  if (k < 1 || k > n - 1) throw Error(ErrorCode::domain, "k must lie in {1..n-1}");
  auto s = binary.letters();
  std::size_t limit = static_cast<std::size_t>(k) * (n - 1) - 1;
  std::optional<RepetitionReport> best;
  std::vector<std::uint32_t> image(n);
  for (std::size_t start = 0; start < s.size(); ++start) {
    std::iota(image.begin(), image.end(), 1u);
    const std::size_t stop = std::min(s.size(), start + limit);
    for (std::size_t end = start; end < stop; ++end) {
      compose_generator(image, s[end], n);
      if (fixed_prefix_of(image) >= k) {
        const std::size_t len = end - start + 1;
        best = make_report(start, len, minimal_period(s.subspan(start, len)), RepetitionKind::stabilizing, k);
        limit = len - 1;
        break;
      }
    }
  }
  return best;
}

std::optional<RepetitionReport> find_kernel_repetition(std::uint32_t n, const Word& binary) {
  require_order(n);
  require_binary(binary);
  auto s = binary.letters();
  const std::int64_t nn = n;
  const std::int64_t sq = (nn - 1) * (nn - 1);
  std::vector<std::uint32_t> image(n);
  for (std::size_t start = 0; start < s.size(); ++start) {
    std::iota(image.begin(), image.end(), 1u);
    const std::size_t room = s.size() - start;
    std::size_t best = 0;
    for (std::size_t p = 1; p <= room; ++p) {
      if (best && best <= p) break;
      compose_generator(image, s[start + p - 1], n);
      if (!is_identity_image(image)) continue;
      // Smallest |v| >= p with (n-1)|v| > np - (n-1)^2.
      const std::int64_t t = nn * static_cast<std::int64_t>(p) - sq;
      std::size_t need = p;
      if (t >= 0) need = std::max<std::size_t>(p, static_cast<std::size_t>(t / (nn - 1) + 1));
      if (need > room || (best && need >= best)) continue;
      std::size_t i = 0;
      while (i + p < need && s[start + i] == s[start + i + p]) ++i;
      if (i + p >= need) best = need;
    }
    if (best) {
      // Recover the kernel period realising the shortest length.
      std::iota(image.begin(), image.end(), 1u);
      for (std::size_t p = 1; p <= best; ++p) {
        compose_generator(image, s[start + p - 1], n);
        if (!is_identity_image(image)) continue;
        const std::int64_t t = nn * static_cast<std::int64_t>(p) - sq;
        if ((nn - 1) * static_cast<std::int64_t>(best) > t && has_period(s.subspan(start, best), p)) {
          return make_report(start, best, p, RepetitionKind::kernel);
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<RepetitionReport> scan_prop32(std::uint32_t n, const Word& binary) {
  if (auto r = find_short_stabilizing(n, binary)) return r;
  return find_kernel_repetition(n, binary);
}

}  // namespace dejean
