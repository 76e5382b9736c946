#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dejean/word.hpp"

namespace dejean {

/// Bijection of {1..n}, acting on the right: `apply(a)` is a·π, and
/// (π·σ).apply(a) == σ.apply(π.apply(a)).
class Permutation {
 public:
  static Permutation identity(std::uint32_t n);
  static Permutation from_images(std::vector<std::uint32_t> images);

  std::uint32_t degree() const noexcept { return static_cast<std::uint32_t>(image_.size()); }
  std::uint32_t apply(std::uint32_t a) const { return image_[a - 1]; }
  std::span<const std::uint32_t> images() const noexcept { return image_; }

  Permutation then(const Permutation& next) const;
  Permutation inverse() const;
  bool is_identity() const;
  /// Largest k such that 1..k are all fixed (k = degree when identity).
  std::uint32_t fixed_prefix() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {}
  std::vector<std::uint32_t> image_;
};

/// Generators of φ_n: letter 1 (printed '0') is the cycle (1 2 … n-1),
/// letter 2 (printed '1') is the cycle (1 2 … n).
Permutation phi_generator(std::uint32_t n, Letter bit);
Permutation phi(std::uint32_t n, const Word& binary);

Word gamma(std::uint32_t n, const Word& binary);

bool is_k_stabilizing(std::uint32_t n, const Word& binary, std::uint32_t k);

/// Condition (i): leftmost-shortest factor v with v in Stab_n(k) and
/// 0 < |v| < k(n-1) for some k.
std::optional<RepetitionReport> find_short_stabilizing(std::uint32_t n, const Word& binary);

/// Same search restricted to a single k.
std::optional<RepetitionReport> find_short_stabilizing(std::uint32_t n, const Word& binary,
                                                       std::uint32_t k);

/// Globally shortest factor fixing 1..k with length < k(n-1); ties go to
/// the leftmost.
std::optional<RepetitionReport> find_shortest_stabilizing(std::uint32_t n, const Word& binary,
                                                          std::uint32_t k);

/// Condition (ii): leftmost-shortest kernel repetition of order n, i.e. a
/// factor with period p whose length-p factors lie in ker(φ_n) and with
/// (n-1)|v| > np - (n-1)^2.
std::optional<RepetitionReport> find_kernel_repetition(std::uint32_t n, const Word& binary);

/// Condition (i) first, then condition (ii).
std::optional<RepetitionReport> scan_prop32(std::uint32_t n, const Word& binary);

}  // namespace dejean
