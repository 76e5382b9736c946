#include "dejean/verifier.hpp"

#include <array>
#include <algorithm>
#include <map>
#include <random>
#include <unordered_map>

#include "dejean/error.hpp"
#include "dejean/pansiot.hpp"
#include "dejean/parallel.hpp"

namespace dejean {

namespace {

// True iff the first p letters of v have all counts divisible by 4.
bool kernel_prefix(std::span<const Letter> v, std::size_t p) { return in_psi_kernel(v.first(p)); }

}  // namespace

EliminationReport verify_short_elimination(std::uint32_t n_lo, std::uint32_t n_hi, std::size_t max_length,
                                           const std::vector<Word>& injected, unsigned jobs) {
  if (n_lo > n_hi) throw Error(ErrorCode::invalid_argument, "empty range of n");
  carpi_params(n_lo);
  EliminationReport report;
  report.n_lo = n_lo;
  report.n_hi = n_hi;
  report.max_length = max_length;

  auto scan = [&](std::span<const Letter> v, bool is_injected, std::vector<EliminationViolation>& out) {
    const std::size_t len = v.size();
    for (std::size_t p = len > 3 ? len - 3 : 1; p <= len; ++p) {
      if (!kernel_prefix(v, p) || !has_period(v, p)) continue;
      EliminationViolation viol;
      for (std::uint32_t n = n_lo; n <= n_hi; ++n) {
        const std::int64_t lhs = static_cast<std::int64_t>(n - 1) * static_cast<std::int64_t>(len + 1);
        const std::int64_t rhs = static_cast<std::int64_t>(n) * static_cast<std::int64_t>(p) - 3;
        if (lhs >= rhs) viol.orders.push_back(n);
      }
      if (viol.orders.empty()) continue;
      viol.word = Word(std::vector<Letter>(v.begin(), v.end()), std::max<std::uint32_t>(4, *std::max_element(v.begin(), v.end())));
      viol.kernel_period = p;
      viol.injected = is_injected;
      out.push_back(std::move(viol));
    }
  };

  auto lang = z4_language(max_length);
  std::vector<std::vector<EliminationViolation>> per_length(max_length + 1);
  std::vector<std::size_t> scanned(max_length + 1, 0);
  parallel_for(max_length, jobs, [&](std::size_t i) {
    const std::size_t len = i + 1;
    lang->for_each_factor(len, [&](std::span<const Letter> v) {
      ++scanned[len];
      scan(v, false, per_length[len]);
    });
  });
  for (std::size_t len = 1; len <= max_length; ++len) {
    report.factors_scanned += scanned[len];
    for (auto& v : per_length[len]) report.violations.push_back(std::move(v));
  }
  for (const auto& w : injected) {
    if (!w.empty()) scan(w.letters(), true, report.violations);
  }
  return report;
}

bool is_maximal_for_period(std::span<const Letter> v, std::size_t p, Maximality mode, const Z4Language& language) {
  const std::size_t len = v.size();
  std::vector<Letter> ext;
  ext.reserve(len + 1);
  auto left_extends = [&] {
    ext.assign(1, v[p - 1]);
    ext.insert(ext.end(), v.begin(), v.end());
    return language.contains(ext);
  };
  auto right_extends = [&] {
    ext.assign(v.begin(), v.end());
    ext.push_back(v[len - p]);
    return language.contains(ext);
  };
  switch (mode) {
    case Maximality::two_sided: return !left_extends() && !right_extends();
    case Maximality::left_only: return !left_extends();
    case Maximality::right_only: return !right_extends();
  }
  return false;
}

std::vector<MaximalKernelRepetition> compute_W(const WSearchOptions& options, unsigned jobs) {
  auto lang = z4_language(options.max_length + 1);
  std::vector<std::vector<MaximalKernelRepetition>> per_length(options.max_length + 1);
  parallel_for(options.max_length, jobs, [&](std::size_t i) {
    const std::size_t len = i + 1;
    auto& out = per_length[len];
    lang->for_each_factor(len, [&](std::span<const Letter> v) {
      const std::size_t lo = len > options.max_tail ? len - options.max_tail : 1;
      const std::size_t hi = std::min(len, options.period_cap);
      for (std::size_t p = lo; p <= hi; ++p) {
        if (p % 4 != 0) continue;  // a kernel prefix has length divisible by 4
        if (options.bound_filter && p > 31 * (len - p + 2)) continue;
        if (!kernel_prefix(v, p) || !has_period(v, p)) continue;
        if (!is_maximal_for_period(v, p, options.maximality, *lang)) continue;
        out.push_back({Word(std::vector<Letter>(v.begin(), v.end()), 4), p});
      }
    });
  });
  std::vector<MaximalKernelRepetition> all;
  for (auto& bucket : per_length) {
    for (auto& e : bucket) all.push_back(std::move(e));
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.word != b.word) return ShortLex{}(a.word, b.word);
    return a.kernel_period < b.kernel_period;
  });
  return all;
}

std::size_t longest_kernel_period_factor(std::span<const Letter> x, std::size_t period, std::size_t* start) {
  const std::size_t len = x.size();
  if (period == 0 || period > len) return 0;
  // run[i]: number of consecutive j >= i with x[j] == x[j + period].
  std::vector<std::size_t> run(len - period + 1, 0);
  for (std::size_t i = len - period; i-- > 0;) run[i] = x[i] == x[i + period] ? run[i + 1] + 1 : 0;
  std::array<std::uint32_t, 64> counts{};
  Letter max_letter = *std::max_element(x.begin(), x.end());
  if (max_letter > counts.size()) throw Error(ErrorCode::invalid_argument, "alphabet too large for the window scan");
  std::size_t nonzero = 0;
  auto bump = [&](Letter a, int delta) {
    auto& c = counts[a - 1];
    if (c % 4 == 0) ++nonzero;
    c = static_cast<std::uint32_t>(static_cast<int>(c) + delta);
    if (c % 4 == 0) --nonzero;
  };
  for (std::size_t i = 0; i < period; ++i) bump(x[i], +1);
  std::size_t best = 0;
  for (std::size_t s = 0; s + period <= len; ++s) {
    if (s > 0) {
      bump(x[s - 1], -1);
      bump(x[s + period - 1], +1);
    }
    if (nonzero == 0 && period + run[s] > best) {
      best = period + run[s];
      if (start) *start = s;
    }
  }
  return best;
}

bool EwReport::passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const EwEntry& e) { return e.holds(); });
}

EwReport verify_Ew(const std::vector<MaximalKernelRepetition>& W, unsigned jobs) {
  std::size_t longest = 0;
  for (const auto& w : W) longest = std::max(longest, w.word.size());
  auto lang = z4_language(longest + 2);
  EwReport report;
  report.entries.resize(W.size());
  parallel_for(W.size(), jobs, [&](std::size_t i) {
    EwEntry& entry = report.entries[i];
    entry.w = W[i];
    const std::size_t period = 3 * W[i].kernel_period;
    std::vector<Letter> context;
    for (Letter a = 1; a <= 4; ++a) {
      for (Letter b = 1; b <= 4; ++b) {
        context.assign(1, a);
        context.insert(context.end(), W[i].word.letters().begin(), W[i].word.letters().end());
        context.push_back(b);
        if (!lang->contains(context)) continue;
        ++entry.contexts;
        for_each_g_image(context, [&](std::span<const Letter> x) {
          std::size_t at = 0;
          const std::size_t q = longest_kernel_period_factor(x, period, &at);
          if (q > entry.q) {
            entry.q = q;
            entry.witness = Word(std::vector<Letter>(x.begin() + static_cast<std::ptrdiff_t>(at),
                                                     x.begin() + static_cast<std::ptrdiff_t>(at + q)),
                                 4);
          }
        });
      }
    }
    const auto p3 = static_cast<std::int64_t>(period);
    entry.margin = p3 - 31 * (static_cast<std::int64_t>(entry.q) - p3 + 2);
  });
  return report;
}

BinaryAvoidanceResult binary_avoidance_search(std::uint32_t n, std::size_t depth_cap, std::int64_t slack) {
  carpi_params(n);
  BinaryAvoidanceResult result;
  std::vector<Letter> word;
  std::vector<Letter> longest;
  // Iterative DFS: word holds the current path, each level tries 1 then 2.
  std::vector<Letter> next_choice{1};
  while (!next_choice.empty()) {
    Letter& choice = next_choice.back();
    if (choice > 2) {
      next_choice.pop_back();
      if (!word.empty()) word.pop_back();
      continue;
    }
    word.push_back(choice++);
    ++result.nodes;
    if (has_psi_kernel_suffix(n, word, 2, slack)) {
      word.pop_back();
      continue;
    }
    if (word.size() > longest.size()) longest = word;
    if (word.size() >= depth_cap) {
      throw Error(ErrorCode::limit, "search reached the depth cap of " + std::to_string(depth_cap) +
                                        " letters; the avoiding language may be infinite");
    }
    next_choice.push_back(1);
  }
  result.max_length = longest.size();
  result.longest = Word(std::move(longest), 2);
  return result;
}

std::size_t binary_avoidance_max_length(std::uint32_t n, std::size_t depth_cap) {
  return binary_avoidance_search(n, depth_cap).max_length;
}

bool StabilizingReport::all_found() const {
  return !witnesses.empty() &&
         std::all_of(witnesses.begin(), witnesses.end(), [](const auto& w) { return w.shortest.has_value(); });
}

StabilizingReport n26_stabilizing_check(const MorphismTable* table, std::uint32_t k, Letter suffix) {
  if (!table) throw Error(ErrorCode::unavailable, "no morphism table supplied; the check needs f_n");
  const std::uint32_t n = table->order();
  if (k < 1 || k > n - 1) throw Error(ErrorCode::domain, "k must lie in {1..n-1}");
  const std::uint32_t m = table->source_alphabet();
  if (suffix < 1 || suffix > m) throw Error(ErrorCode::domain, "suffix letter outside the table alphabet");
  StabilizingReport report;
  report.n = n;
  report.k = k;
  report.suffix = suffix;
  for (Letter a = 1; a <= m; ++a) {
    StabilizingWitness w;
    w.letter = a;
    w.input = Word({a, suffix}, m);
    w.shortest = find_shortest_stabilizing(n, apply_morphism(*table, w.input), k);
    report.witnesses.push_back(std::move(w));
  }
  return report;
}

std::vector<Word> zm_samples(std::uint32_t m, std::size_t length, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Word> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(zm_sample(m, length, rng));
  return out;
}

Lemma6Report check_lemma6(std::uint32_t m, const Word& z, bool exhaustive_factors) {
  if (m < 5 || m > 32) throw Error(ErrorCode::domain, "kernel length check supports 5 <= m <= 32");
  if (!zm_is_member(m, z)) throw Error(ErrorCode::domain, "word is not a member of Z_m");
  Lemma6Report report;
  report.m = m;
  report.length = z.size();
  report.divisor = std::uint64_t{1} << (2 * (m - 1));
  // Prefix count residues, two bits per letter.
  std::vector<std::uint64_t> codes(z.size() + 1, 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const unsigned shift = 2 * (z[i] - 1);
    const std::uint64_t r = ((codes[i] >> shift) + 1) & 3u;
    codes[i + 1] = (codes[i] & ~(std::uint64_t{3} << shift)) | (r << shift);
  }
  if (exhaustive_factors) {
    for (std::size_t i = 0; i < codes.size(); ++i) {
      for (std::size_t j = i + 1; j < codes.size(); ++j) {
        if (codes[i] != codes[j]) continue;
        ++report.kernel_factors;
        report.kernel_lengths.insert(j - i);
        if ((j - i) % report.divisor != 0) report.violations.emplace_back(i + 1, j - i);
      }
    }
    return report;
  }
  std::map<std::uint64_t, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < codes.size(); ++i) groups[codes[i]].push_back(i);
  for (const auto& [code, positions] : groups) {
    report.kernel_factors += positions.size() * (positions.size() - 1) / 2;
    for (std::size_t t = 1; t < positions.size(); ++t) {
      const std::size_t len = positions[t] - positions[t - 1];
      if (len % report.divisor != 0) report.violations.emplace_back(positions[t - 1] + 1, len);
    }
  }
  std::sort(report.violations.begin(), report.violations.end());
  return report;
}

Prop7Report check_prop7_words(std::uint32_t m, std::uint32_t n, const std::vector<Word>& words, unsigned jobs) {
  const auto params = carpi_params(n);
  if (n < 33 || params.m < m) {
    throw Error(ErrorCode::domain, "Z_m check needs n >= 33 with floor((n-3)/6) >= m");
  }
  for (const auto& w : words) {
    if (!zm_is_member(m, w)) throw Error(ErrorCode::domain, "sample " + w.to_string() + " is not a member of Z_m");
  }
  Prop7Report report;
  report.m = m;
  report.n = n;
  report.samples = words.size();
  report.length = words.empty() ? 0 : words.front().size();
  std::vector<std::optional<RepetitionReport>> found(words.size());
  parallel_for(words.size(), jobs, [&](std::size_t i) { found[i] = find_psi_kernel_repetition(n, words[i]); });
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (found[i]) report.findings.push_back({i, *found[i]});
  }
  return report;
}

Prop7Report check_prop7_desk(std::uint32_t m, std::uint32_t n, std::size_t length, std::size_t samples,
                             std::uint64_t seed, unsigned jobs) {
  auto report = check_prop7_words(m, n, zm_samples(m, length, samples, seed), jobs);
  report.length = length;
  report.seed = seed;
  return report;
}

}  // namespace dejean
