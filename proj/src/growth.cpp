#include "dejean/growth.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dejean/carpi.hpp"
#include "dejean/error.hpp"
#include "dejean/parallel.hpp"

namespace dejean {

namespace {

// A prefix tree walk. `accept` is asked about a word only when its parent
// prefix was accepted.
struct TreeWalk {
  std::uint32_t alphabet = 0;
  std::function<bool(std::span<const Letter>)> accept;
  bool canonical_only = false;  // first occurrences appear as 1, 2, 3, ...
};

struct WalkResult {
  // by_distinct[k - 1][d]: accepted words of length k using d letters.
  std::vector<std::vector<std::uint64_t>> by_distinct;
  bool exhausted = false;
};

class Walker {
 public:
  Walker(const TreeWalk& walk, std::size_t depth, std::uint64_t budget, std::atomic<std::uint64_t>& nodes,
         std::atomic<bool>& abort)
      : walk_(walk), depth_(depth), budget_(budget), nodes_(nodes), abort_(abort),
        counts_(depth, std::vector<std::uint64_t>(walk.alphabet + 1, 0)) {}

  // Walks below `prefix` (already accepted and counted). Returns false when
  // the budget ran out.
  bool run(std::vector<Letter>& prefix, Letter max_used) {
    if (prefix.size() >= depth_) return true;
    const Letter limit = walk_.canonical_only ? std::min<Letter>(walk_.alphabet, max_used + 1) : walk_.alphabet;
    for (Letter c = 1; c <= limit; ++c) {
      if (abort_.load(std::memory_order_relaxed)) return false;
      if (budget_ && nodes_.fetch_add(1, std::memory_order_relaxed) + 1 > budget_) {
        abort_.store(true);
        return false;
      }
      prefix.push_back(c);
      if (walk_.accept(prefix)) {
        const Letter used = std::max(max_used, c);
        ++counts_[prefix.size() - 1][walk_.canonical_only ? used : 0];
        if (!run(prefix, used)) {
          prefix.pop_back();
          return false;
        }
      }
      prefix.pop_back();
    }
    return true;
  }

  std::vector<std::vector<std::uint64_t>>& counts() { return counts_; }

 private:
  const TreeWalk& walk_;
  std::size_t depth_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t>& nodes_;
  std::atomic<bool>& abort_;
  std::vector<std::vector<std::uint64_t>> counts_;
};

void collect_frontier(const TreeWalk& walk, std::vector<Letter>& prefix, Letter max_used, std::size_t depth,
                      std::vector<std::pair<std::vector<Letter>, Letter>>& frontier,
                      std::vector<std::vector<std::uint64_t>>& counts) {
  if (prefix.size() == depth) {
    frontier.emplace_back(prefix, max_used);
    return;
  }
  const Letter limit = walk.canonical_only ? std::min<Letter>(walk.alphabet, max_used + 1) : walk.alphabet;
  for (Letter c = 1; c <= limit; ++c) {
    prefix.push_back(c);
    if (walk.accept(prefix)) {
      const Letter used = std::max(max_used, c);
      ++counts[prefix.size() - 1][walk.canonical_only ? used : 0];
      collect_frontier(walk, prefix, used, depth, frontier, counts);
    }
    prefix.pop_back();
  }
}

WalkResult walk_tree(const TreeWalk& walk, std::size_t depth, const CountOptions& options) {
  WalkResult result;
  result.by_distinct.assign(depth, std::vector<std::uint64_t>(walk.alphabet + 1, 0));
  if (depth == 0) return result;
  const std::size_t split = std::min(options.split_depth, depth);
  std::vector<std::pair<std::vector<Letter>, Letter>> frontier;
  std::vector<Letter> prefix;
  collect_frontier(walk, prefix, 0, split, frontier, result.by_distinct);

  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> abort{false};
  std::vector<std::vector<std::vector<std::uint64_t>>> partial(frontier.size());
  parallel_for(frontier.size(), options.jobs, [&](std::size_t i) {
    Walker walker(walk, depth, options.node_budget, nodes, abort);
    auto start = frontier[i].first;
    walker.run(start, frontier[i].second);
    partial[i] = std::move(walker.counts());
  });
  if (abort.load()) {
    result.exhausted = true;
    return result;
  }
  for (const auto& p : partial) {
    for (std::size_t k = 0; k < depth; ++k) {
      for (std::size_t d = 0; d <= walk.alphabet; ++d) result.by_distinct[k][d] += p[k][d];
    }
  }
  return result;
}

BigInt falling_factorial(std::uint32_t n, std::uint32_t d) {
  BigInt r = 1;
  for (std::uint32_t i = 0; i < d; ++i) r *= n - i;
  return r;
}

std::vector<BigInt> combine(const TreeWalk& walk, const WalkResult& result) {
  std::vector<BigInt> counts;
  for (const auto& level : result.by_distinct) {
    BigInt c = 0;
    for (std::uint32_t d = 0; d < level.size(); ++d) {
      if (!level[d]) continue;
      c += walk.canonical_only ? BigInt(level[d]) * falling_factorial(walk.alphabet, d) : BigInt(level[d]);
    }
    counts.push_back(c);
  }
  return counts;
}

// Full-depth walk; if the budget runs out, deepen one length at a time to
// find the longest fully counted prefix of the table.
void fill_counts(GrowthTable& table, const TreeWalk& walk, std::size_t max_length, const CountOptions& options) {
  auto full = walk_tree(walk, max_length, options);
  if (!full.exhausted) {
    table.counts = combine(walk, full);
    return;
  }
  table.truncated = true;
  table.truncated_at = max_length;
  for (std::size_t k = 1; k < max_length; ++k) {
    auto attempt = walk_tree(walk, k, options);
    if (attempt.exhausted) {
      table.truncated_at = k;
      return;
    }
    table.counts = combine(walk, attempt);
  }
}

}  // namespace

GrowthTable count_threshold_words(std::uint32_t n, std::size_t max_length, const CountOptions& options) {
  const RationalExponent bound = options.threshold ? *options.threshold : repetition_threshold(n);
  GrowthTable table;
  table.language = "threshold";
  table.parameters = {{"n", std::to_string(n)}, {"threshold", bound.to_string()}, {"strict", "true"}};
  TreeWalk walk;
  walk.alphabet = n;
  walk.canonical_only = options.symmetry;
  walk.accept = [bound](std::span<const Letter> w) { return !has_forbidden_suffix(w, bound, true); };
  fill_counts(table, walk, max_length, options);
  return table;
}

GrowthTable count_language(const LanguageSpec& language, std::uint32_t alphabet, std::size_t max_length,
                           const CountOptions& options) {
  if (language.closure == Closure::undeclared) {
    throw Error(ErrorCode::invalid_argument, "language closure must be declared before counting");
  }
  if (!language.contains) throw Error(ErrorCode::invalid_argument, "language has no membership predicate");
  if (alphabet < 1) throw Error(ErrorCode::invalid_argument, "alphabet must be nonempty");
  GrowthTable table;
  table.language = language.name;
  table.parameters = {{"alphabet", std::to_string(alphabet)},
                      {"closure", language.closure == Closure::prefix_closed ? "prefix_closed" : "general"}};
  if (language.closure == Closure::prefix_closed) {
    TreeWalk walk;
    walk.alphabet = alphabet;
    walk.accept = language.contains;
    fill_counts(table, walk, max_length, options);
    return table;
  }
  std::uint64_t tested = 0;
  for (std::size_t k = 1; k <= max_length; ++k) {
    std::vector<Letter> w(k, 1);
    BigInt count = 0;
    for (;;) {
      if (options.node_budget && ++tested > options.node_budget) {
        table.truncated = true;
        table.truncated_at = k;
        return table;
      }
      if (language.contains(w)) ++count;
      std::size_t i = k;
      while (i > 0 && w[i - 1] == alphabet) w[--i] = 1;
      if (i == 0) break;
      ++w[i - 1];
    }
    table.counts.push_back(count);
  }
  return table;
}

namespace {

BigInt pow10(int digits) {
  BigInt r = 1;
  for (int i = 0; i < digits; ++i) r *= 10;
  return r;
}

std::string render_scaled(const BigInt& scaled, int digits) {
  const BigInt unit = pow10(digits);
  std::string frac = BigInt(scaled % unit).str();
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  return BigInt(scaled / unit).str() + "." + frac;
}

// floor(value^(1/k) * 10^digits), by bisection on integers.
BigInt scaled_root(const BigInt& value, std::size_t k, int digits) {
  const BigInt target = value * boost::multiprecision::pow(pow10(digits), static_cast<unsigned>(k));
  BigInt lo = 0;
  BigInt hi = 1;
  while (boost::multiprecision::pow(hi, static_cast<unsigned>(k)) <= target) hi *= 2;
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, static_cast<unsigned>(k)) <= target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace

std::string kth_root_decimal(const BigInt& value, std::size_t k, int digits) {
  if (k == 0) throw Error(ErrorCode::domain, "root index must be positive");
  return render_scaled(scaled_root(value, k, digits), digits);
}

std::string ratio_decimal(const BigInt& numerator, const BigInt& denominator, int digits) {
  if (denominator == 0) return "undefined";
  return render_scaled(numerator * pow10(digits) / denominator, digits);
}

GrowthSummary growth_estimate(const GrowthTable& table) {
  if (table.counts.empty()) throw Error(ErrorCode::domain, "growth estimate needs a nonempty table");
  constexpr int digits = 6;
  const auto& c = table.counts;
  GrowthSummary s;
  std::optional<BigInt> prev_root;
  std::optional<BigInt> prev_ratio;
  for (std::size_t k = 1; k <= c.size(); ++k) {
    BigInt root = scaled_root(c[k - 1], k, digits);
    s.roots.push_back(render_scaled(root, digits));
    if (prev_root && root > *prev_root) s.roots_nonincreasing = false;
    prev_root = root;
    if (k >= 2) {
      if (c[k - 2] == 0) {
        s.ratios.push_back("undefined");
        continue;
      }
      BigInt ratio = c[k - 1] * pow10(digits) / c[k - 2];
      s.ratios.push_back(render_scaled(ratio, digits));
      if (prev_ratio && ratio > *prev_ratio) s.ratios_nonincreasing = false;
      prev_ratio = ratio;
    }
  }
  s.last_root = s.roots.back();
  s.last_ratio = s.ratios.empty() ? "undefined" : s.ratios.back();
  for (std::size_t j = 1; j <= c.size(); ++j) {
    for (std::size_t k = j; j + k <= c.size(); ++k) {
      if (c[j + k - 1] > c[j - 1] * c[k - 1]) s.fekete_violations.emplace_back(j, k);
    }
  }
  return s;
}

LowerBound theorem2_lower_bound(std::uint32_t n, std::uint64_t k) {
  if (n < 27) throw Error(ErrorCode::domain, "the exponential lower bound is stated for n >= 27");
  const auto params = carpi_params(n);
  LowerBound b;
  b.n = n;
  const std::uint64_t block = static_cast<std::uint64_t>(params.image_length);
  if (n >= 33) {
    b.base = 2;
    b.divisor = 4 * block;
  } else {
    b.base = 4;
    b.divisor = 81 * block;
  }
  b.expression = std::to_string(b.base) + "^(k/" + std::to_string(b.divisor) + ")";
  const long double v = std::pow(static_cast<long double>(b.base),
                                 static_cast<long double>(k) / static_cast<long double>(b.divisor));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6Lf", v);
  b.value = buf;
  return b;
}

std::string to_csv(const GrowthTable& table) {
  std::ostringstream out;
  out << "k,count,ratio,kth_root\n";
  for (std::size_t k = 1; k <= table.counts.size(); ++k) {
    out << k << ',' << table.counts[k - 1].str() << ',';
    if (k >= 2) out << ratio_decimal(table.counts[k - 1], table.counts[k - 2]);
    out << ',' << kth_root_decimal(table.counts[k - 1], k) << '\n';
  }
  if (table.truncated) out << "# truncated at k=" << table.truncated_at << '\n';
  return out.str();
}

}  // namespace dejean
