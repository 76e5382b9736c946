// Acceptance runner: one PASS/FAIL/SKIP line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "dejean/carpi.hpp"
#include "dejean/constructions.hpp"
#include "dejean/growth.hpp"
#include "dejean/verifier.hpp"
#include "oracles.hpp"

using namespace dejean;

namespace {

struct Outcome {
  enum Kind { pass, fail, skip } kind = fail;
  std::string detail;
};

Outcome verdict(bool ok, std::string detail) { return {ok ? Outcome::pass : Outcome::fail, std::move(detail)}; }

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {Outcome::fail, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const char* tag = o.kind == Outcome::pass ? "PASS" : o.kind == Outcome::fail ? "FAIL" : "SKIP";
  if (o.kind == Outcome::fail) ++failures;
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << tag << " criterion " << id << " (" << name << "): " << o.detail << " [" << secs << "s]";
  std::cout << line.str() << std::endl;
}

std::vector<Word> lemma_samples() {
  static const auto s = zm_samples(5, 2048, 50, 1);
  return s;
}

bool brute_threshold_free(const oracle::Seq& s) { return !oracle::forbidden(s, oracle::Q(7, 4), true); }

}  // namespace

int main() {
  std::vector<MaximalKernelRepetition> W;

  criterion(1, "W-set reproduction", [&] {
    W = compute_W();
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> b;
    for (const auto& w : W) ++b[{w.kernel_period, w.word.size()}];
    const bool ok = W.size() == 200 && b.size() == 3 && b[{76, 77}] == 160 && b[{92, 93}] == 36 &&
                    b[{112, 114}] == 4;
    std::ostringstream d;
    d << W.size() << " words;";
    for (const auto& [k, c] : b) d << " " << c << " with p=" << k.first << ",|v|=" << k.second;
    return verdict(ok, d.str());
  });

  criterion(2, "E_w inequality", [&] {
    if (W.empty()) W = compute_W();
    const auto r = verify_Ew(W);
    std::int64_t min_margin = INT64_MAX;
    std::size_t holding = 0;
    for (const auto& e : r.entries) {
      min_margin = std::min(min_margin, e.margin);
      holding += e.holds();
    }
    return verdict(r.passed() && r.entries.size() == 200 && holding == 200,
                   std::to_string(holding) + "/" + std::to_string(r.entries.size()) +
                       " hold, smallest margin " + std::to_string(min_margin));
  });

  criterion(3, "short elimination", [] {
    const auto r = verify_short_elimination(27, 32, 130);
    return verdict(r.passed(), std::to_string(r.violations.size()) + " repetitions among " +
                                   std::to_string(r.factors_scanned) + " factors, n in 27..32");
  });

  criterion(4, "binary search at n = 26", [] {
    const auto len = binary_avoidance_max_length(26);
    return verdict(len == 15, "longest avoiding word has length " + std::to_string(len));
  });

  criterion(5, "kernel factor lengths in Z_5", [] {
    std::size_t violations = 0;
    std::uint64_t kernel = 0;
    for (const auto& z : lemma_samples()) {
      const auto r = check_lemma6(5, z, false);
      violations += r.violations.size();
      kernel += r.kernel_factors;
    }
    return verdict(violations == 0, std::to_string(violations) + " violations of 256 | |v| over " +
                                        std::to_string(kernel) + " kernel factors in 50 samples");
  });

  criterion(6, "Z_5 samples avoid order-33 kernel repetitions", [] {
    const auto r = check_prop7_words(5, 33, lemma_samples());
    return verdict(r.passed(), std::to_string(r.findings.size()) + " findings in 50 samples");
  });

  criterion(7, "Z_5 counting identity", [] {
    for (std::size_t k = 0; k <= 16; ++k) {
      const BigInt listed = zm_enumerate(5, k).size();
      if (listed != zm_count(k) || zm_count(k) != BigInt(1) << ((k + 2) / 4))
        return verdict(false, "mismatch at k=" + std::to_string(k));
    }
    return verdict(true, "zm_count(k) = |enumerate| = 2^floor((k+2)/4) for k <= 16");
  });

  criterion(8, "counts against brute force", [] {
    const auto t3 = count_threshold_words(3, 12);
    const auto t2 = count_threshold_words(2, 12);
    for (std::size_t k = 1; k <= 12; ++k) {
      BigInt c3 = 0, c2 = 0;
      for (const auto& s : oracle::all_words(3, k)) c3 += brute_threshold_free(s) ? 1 : 0;
      for (const auto& s : oracle::all_words(2, k)) c2 += oracle::overlap_free(s) ? 1 : 0;
      if (c3 != t3.counts[k - 1] || c2 != t2.counts[k - 1])
        return verdict(false, "mismatch at k=" + std::to_string(k));
    }
    return verdict(true, "n=3 up to 3^12 words (" + t3.counts.back().str() + " at k=12); n=2 overlap-free (" +
                             t2.counts.back().str() + " at k=12)");
  });

  criterion(9, "kernel lift through g", [] {
    std::uint64_t checked = 0;
    for (std::size_t len = 1; len <= 8; ++len)
      for (const auto& s : oracle::all_words(4, len)) {
        const bool in = oracle::counts_div4(s, 0, s.size());
        bool ok = true;
        for_each_g_image(s, [&](std::span<const Letter> v) {
          ++checked;
          ok = ok && in_psi_kernel(v) == in;
        });
        if (!ok) return verdict(false, "mismatch at " + oracle::str(s));
      }
    return verdict(true, std::to_string(checked) + " images of all A_4 words of length <= 8");
  });

  criterion(10, "pipeline with a supplied table", [] {
    const char* path = std::getenv("DEJEAN_TABLE");
    if (!path || !*path) return Outcome{Outcome::skip, "set DEJEAN_TABLE to a morphism table file to run"};
    const auto table = MorphismTable::load(path);
    const std::uint32_t n = table.order();
    const auto params = carpi_params(n);
    if (n < 27) return verdict(false, "table order " + std::to_string(n) + " is below 27");
    std::mt19937_64 rng(1);
    std::vector<Word> inputs;
    if (params.m == 4) {
      const auto pool = z4_factors(8);
      for (int i = 0; i < 20; ++i) inputs.push_back(pool[rng() % pool.size()]);
    } else {
      for (int i = 0; i < 20; ++i) inputs.push_back(zm_sample(params.m, 1 + i % 8, rng));
    }
    const auto rt = repetition_threshold(n);
    for (const auto& z : inputs) {
      const Word out = threshold_pipeline(table, z, false);
      if (out.size() != params.image_length * z.size()) return verdict(false, "bad length for " + z.to_string());
      if (find_forbidden_factor(out, rt, true)) return verdict(false, "repetition in image of " + z.to_string());
    }
    return verdict(true, "20 inputs, n=" + std::to_string(n) + ", outputs free");
  });

  return failures ? 1 : 0;
}
