#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dejean/error.hpp"
#include "dejean/word.hpp"

namespace dejean {

struct CarpiParams {
  std::uint32_t n = 0;
  std::uint32_t m = 0;    // floor((n-3)/6)
  std::uint32_t ell = 0;  // floor(n/2)
  std::size_t image_length = 0;  // (n-1)(ell+1)
  bool below_theorem_range = false;  // 9 <= n < 27
};

CarpiParams carpi_params(std::uint32_t n);

/// Kernel of ψ_n, by letter counts: every |v|_a divisible by 4.
bool in_psi_kernel(std::span<const Letter> v);
inline bool in_psi_kernel(const Word& v) { return in_psi_kernel(v.letters()); }

/// Periods p of v whose length-p prefix lies in the ψ-kernel.
std::vector<std::size_t> kernel_periods(const Word& v);

/// Default slack 3 encodes (n-1)(|v|+1) >= nq - 3. Other values exist for the
/// search self-tests only.
inline constexpr std::int64_t kPsiSlack = 3;

/// Leftmost-shortest factor of `w` that is a ψ_n-kernel repetition.
std::optional<RepetitionReport> find_psi_kernel_repetition(std::uint32_t n, const Word& w,
                                                           std::int64_t slack = kPsiSlack);

/// True iff some factor ending at the last letter of `w` is a ψ_n-kernel
/// repetition. Letter values must lie in {1..alphabet}.
bool has_psi_kernel_suffix(std::uint32_t n, std::span<const Letter> w, std::uint32_t alphabet,
                           std::int64_t slack = kPsiSlack);

/// Uniform morphism from A_m into binary words.
///
/// `make` checks only that the images are binary and of equal length (toy
/// tables used in tests); `carpi` and the file loaders additionally demand
/// m = floor((n-3)/6) and image length (n-1)(floor(n/2)+1).
class MorphismTable {
 public:
  static MorphismTable make(std::uint32_t n, std::vector<Word> images);
  static MorphismTable carpi(std::uint32_t n, std::vector<Word> images);
  static MorphismTable parse_json(std::string_view text);
  static MorphismTable load(const std::filesystem::path& path);

  std::uint32_t order() const noexcept { return n_; }
  std::uint32_t source_alphabet() const noexcept { return static_cast<std::uint32_t>(images_.size()); }
  std::size_t image_length() const noexcept { return image_length_; }
  const Word& image(Letter a) const;

  std::string to_json() const;

 private:
  MorphismTable(std::uint32_t n, std::vector<Word> images);
  std::uint32_t n_ = 0;
  std::size_t image_length_ = 0;
  std::vector<Word> images_;
};

Word apply_morphism(const MorphismTable& table, const Word& w);

/// Short stabilizing factors (condition (i)) inside f_n(w).
std::optional<RepetitionReport> check_carpi_short(const MorphismTable& table, const Word& w);

/// Raised by the pipeline when a check fails; carries the certificate.
class VerificationError : public Error {
 public:
  VerificationError(const std::string& what, RepetitionReport report)
      : Error(ErrorCode::verification, what), report_(report) {}
  const RepetitionReport& report() const noexcept { return report_; }

 private:
  RepetitionReport report_;
};

/// γ_n(f_n(w)). With `verify`, rejects inputs holding a ψ_n-kernel
/// repetition and asserts the output is n/(n-1)^+-free.
Word threshold_pipeline(const MorphismTable& table, const Word& w, bool verify);

}  // namespace dejean
