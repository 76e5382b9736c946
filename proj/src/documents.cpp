#include "dejean/documents.hpp"

#include <map>

#include "dejean/pansiot.hpp"

namespace dejean {

using json = nlohmann::ordered_json;

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::info: return "info";
    case Verdict::unavailable: return "unavailable";
  }
  return "info";
}

std::string Document::to_json(bool include_witnesses) const {
  json doc;
  doc["schema"] = 1;
  doc["command"] = command;
  doc["status"] = verdict_name(verdict);
  doc["summary"] = summary;
  json body = payload;
  if (!include_witnesses && body.is_object()) body.erase("witnesses");
  doc["payload"] = std::move(body);
  return doc.dump(2);
}

json report_json(const RepetitionReport& r) {
  json j;
  j["start"] = r.start;
  j["length"] = r.length;
  j["period"] = r.period;
  j["exponent"] = r.exponent.to_string();
  j["kind"] = kind_name(r.kind);
  if (r.kind == RepetitionKind::stabilizing) j["k"] = r.order;
  return j;
}

namespace {

std::string prefix_tag(Verdict v) {
  switch (v) {
    case Verdict::pass: return "PASS";
    case Verdict::fail: return "FAIL";
    case Verdict::info: return "INFO";
    case Verdict::unavailable: return "UNAVAILABLE";
  }
  return "INFO";
}

std::string describe(const RepetitionReport& r) {
  return std::string(kind_name(r.kind)) + " factor at " + std::to_string(r.start) + ", length " +
         std::to_string(r.length) + ", period " + std::to_string(r.period) + ", exponent " + r.exponent.to_string();
}

Document make(std::string command, Verdict verdict, const std::string& what) {
  Document d;
  d.command = std::move(command);
  d.verdict = verdict;
  d.summary = prefix_tag(verdict) + " " + d.command + ": " + what;
  return d;
}

json word_list(const std::vector<Word>& words) {
  json list = json::array();
  for (const auto& w : words) list.push_back(w.to_string());
  return list;
}

}  // namespace

Document check_document(const Word& word, const RationalExponent& r, bool strict) {
  auto found = find_forbidden_factor(word, r, strict);
  const std::string bound = (strict ? "no factor of exponent > " : "no factor of exponent >= ") + r.to_string();
  Document d = found ? make("check", Verdict::fail, describe(*found)) : make("check", Verdict::pass, bound);
  d.payload["word"] = word.to_string();
  d.payload["alphabet"] = word.alphabet_size();
  d.payload["r"] = r.to_string();
  d.payload["strict"] = strict;
  d.payload["free"] = !found;
  d.payload["report"] = found ? report_json(*found) : json(nullptr);
  return d;
}

Document gamma_document(std::uint32_t n, const Word& binary) {
  Word out = gamma(n, binary);
  Document d = make("gamma", Verdict::info, out.to_string());
  d.payload["n"] = n;
  d.payload["binary"] = binary.to_binary_string();
  d.payload["word"] = out.to_string();
  return d;
}

Document scan_pansiot_document(std::uint32_t n, const Word& binary) {
  auto found = scan_prop32(n, binary);
  Document d = found ? make("scan-pansiot", Verdict::fail, describe(*found))
                     : make("scan-pansiot", Verdict::pass, "no short stabilizing factor and no kernel repetition");
  d.payload["n"] = n;
  d.payload["binary"] = binary.to_binary_string();
  d.payload["report"] = found ? report_json(*found) : json(nullptr);
  return d;
}

Document pipeline_document(const MorphismTable& table, const Word& word, bool verify) {
  Document d;
  try {
    Word out = threshold_pipeline(table, word, verify);
    d = make("pipeline", verify ? Verdict::pass : Verdict::info,
             "output length " + std::to_string(out.size()) +
                 (verify ? ", " + RationalExponent(table.order(), table.order() - 1).to_string() + "+-free" : ""));
    d.payload["word"] = out.to_string();
    d.payload["report"] = nullptr;
  } catch (const VerificationError& e) {
    d = make("pipeline", Verdict::fail, std::string(e.what()) + ": " + describe(e.report()));
    d.payload["word"] = nullptr;
    d.payload["report"] = report_json(e.report());
  }
  d.payload["n"] = table.order();
  d.payload["input"] = word.to_string();
  d.payload["verify"] = verify;
  return d;
}

Document beta_document(std::size_t length) {
  Word w = beta_prefix(length);
  Document d = make("gen beta", Verdict::info, "prefix of length " + std::to_string(length));
  d.payload["length"] = length;
  d.payload["words"] = json::array({w.to_string()});
  return d;
}

Document alpha_document(std::uint32_t m, std::size_t length) {
  Word w = alpha_prefix(m, length);
  Document d = make("gen alpha", Verdict::info, "prefix of length " + std::to_string(length) + " over A_" + std::to_string(m));
  d.payload["m"] = m;
  d.payload["length"] = length;
  d.payload["words"] = json::array({w.to_string()});
  return d;
}

Document zm_document(std::uint32_t m, std::size_t length, std::size_t free_slot_limit) {
  auto words = zm_enumerate(m, length, free_slot_limit);
  Document d = make("gen zm", Verdict::info, std::to_string(words.size()) + " words of length " + std::to_string(length));
  d.payload["m"] = m;
  d.payload["length"] = length;
  d.payload["count"] = words.size();
  d.payload["words"] = word_list(words);
  return d;
}

Document z4_document(std::size_t max_length) {
  auto words = z4_factors(max_length);
  Document d = make("gen z4", Verdict::info,
                    std::to_string(words.size()) + " factors of length <= " + std::to_string(max_length));
  d.payload["max_length"] = max_length;
  d.payload["count"] = words.size();
  d.payload["words"] = word_list(words);
  return d;
}

Document growth_document(const GrowthTable& table) {
  std::string what = table.language + ", " + std::to_string(table.counts.size()) + " lengths";
  if (table.truncated) what += " (truncated at k=" + std::to_string(table.truncated_at) + ")";
  Document d = make("count " + table.language, Verdict::info, what);
  json params = json::object();
  for (const auto& [k, v] : table.parameters) params[k] = v;
  d.payload["language"] = table.language;
  d.payload["parameters"] = params;
  json rows = json::array();
  for (std::size_t k = 1; k <= table.counts.size(); ++k) {
    json row;
    row["k"] = k;
    row["count"] = table.counts[k - 1].str();
    row["ratio"] = k >= 2 ? json(ratio_decimal(table.counts[k - 1], table.counts[k - 2])) : json(nullptr);
    row["kth_root"] = kth_root_decimal(table.counts[k - 1], k);
    rows.push_back(std::move(row));
  }
  d.payload["rows"] = std::move(rows);
  d.payload["truncated"] = table.truncated;
  if (table.truncated) d.payload["truncated_at"] = table.truncated_at;
  if (!table.counts.empty()) {
    auto s = growth_estimate(table);
    json est;
    est["last_ratio"] = s.last_ratio;
    est["last_kth_root"] = s.last_root;
    est["ratios_nonincreasing"] = s.ratios_nonincreasing;
    est["roots_nonincreasing"] = s.roots_nonincreasing;
    est["fekete_violations"] = s.fekete_violations.size();
    d.payload["estimate"] = std::move(est);
  }
  d.csv = to_csv(table);
  return d;
}

Document lower_bound_document(std::uint32_t n, std::uint64_t k) {
  auto b = theorem2_lower_bound(n, k);
  Document d = make("count bound", Verdict::info, b.expression + " = " + b.value + " at k=" + std::to_string(k));
  d.payload["n"] = n;
  d.payload["k"] = k;
  d.payload["base"] = b.base;
  d.payload["divisor"] = b.divisor;
  d.payload["expression"] = b.expression;
  d.payload["value"] = b.value;
  return d;
}

Document elimination_document(const EliminationReport& report) {
  const std::string what = std::to_string(report.violations.size()) + " violations among " +
                           std::to_string(report.factors_scanned) + " factors of length <= " +
                           std::to_string(report.max_length) + ", n in " + std::to_string(report.n_lo) + ".." +
                           std::to_string(report.n_hi);
  Document d = make("verify elimination", report.passed() ? Verdict::pass : Verdict::fail, what);
  d.payload["n_range"] = json::array({report.n_lo, report.n_hi});
  d.payload["max_length"] = report.max_length;
  d.payload["factors_scanned"] = report.factors_scanned;
  d.payload["violations"] = report.violations.size();
  json list = json::array();
  for (const auto& v : report.violations) {
    json j;
    j["word"] = v.word.to_string();
    j["kernel_period"] = v.kernel_period;
    j["orders"] = v.orders;
    j["injected"] = v.injected;
    list.push_back(std::move(j));
  }
  d.payload["witnesses"] = std::move(list);
  return d;
}

Document w_set_document(const std::vector<MaximalKernelRepetition>& W, const WSearchOptions& options) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> breakdown;
  for (const auto& w : W) ++breakdown[{w.kernel_period, w.word.size()}];
  const std::map<std::pair<std::size_t, std::size_t>, std::size_t> expected{
      {{76, 77}, 160}, {{92, 93}, 36}, {{112, 114}, 4}};
  std::string parts;
  for (const auto& [key, count] : breakdown) {
    if (!parts.empty()) parts += ", ";
    parts += std::to_string(key.first) + "/" + std::to_string(key.second) + ": " + std::to_string(count);
  }
  Document d = make("verify w-set", breakdown == expected ? Verdict::pass : Verdict::fail,
                    std::to_string(W.size()) + " words (" + parts + ")");
  d.payload["count"] = W.size();
  json rows = json::array();
  for (const auto& [key, count] : breakdown) {
    json row;
    row["kernel_period"] = key.first;
    row["length"] = key.second;
    row["count"] = count;
    rows.push_back(std::move(row));
  }
  d.payload["breakdown"] = std::move(rows);
  json opts;
  opts["max_length"] = options.max_length;
  opts["period_cap"] = options.period_cap;
  opts["max_tail"] = options.max_tail;
  opts["bound_filter"] = options.bound_filter;
  opts["maximality"] = options.maximality == Maximality::two_sided   ? "two_sided"
                       : options.maximality == Maximality::left_only ? "left_only"
                                                                     : "right_only";
  d.payload["options"] = std::move(opts);
  json list = json::array();
  for (const auto& w : W) {
    json j;
    j["word"] = w.word.to_string();
    j["kernel_period"] = w.kernel_period;
    list.push_back(std::move(j));
  }
  d.payload["witnesses"] = std::move(list);
  return d;
}

Document ew_document(const EwReport& report) {
  std::size_t holding = 0;
  std::int64_t min_margin = 0;
  for (std::size_t i = 0; i < report.entries.size(); ++i) {
    const auto& e = report.entries[i];
    if (e.holds()) ++holding;
    if (i == 0 || e.margin < min_margin) min_margin = e.margin;
  }
  std::string what = std::to_string(holding) + "/" + std::to_string(report.entries.size()) +
                     " entries satisfy 3p > 31(q - 3p + 2)";
  if (!report.entries.empty()) what += ", smallest margin " + std::to_string(min_margin);
  Document d = make("verify ew", report.passed() ? Verdict::pass : Verdict::fail, what);
  d.payload["entries"] = report.entries.size();
  d.payload["holding"] = holding;
  if (!report.entries.empty()) d.payload["min_margin"] = min_margin;
  json list = json::array();
  for (const auto& e : report.entries) {
    json j;
    j["word"] = e.w.word.to_string();
    j["p"] = e.w.kernel_period;
    j["q"] = e.q;
    j["margin"] = e.margin;
    j["holds"] = e.holds();
    j["contexts"] = e.contexts;
    j["witness"] = e.witness ? json(e.witness->to_string()) : json(nullptr);
    list.push_back(std::move(j));
  }
  d.payload["witnesses"] = std::move(list);
  return d;
}

Document binary_avoidance_document(std::uint32_t n, const BinaryAvoidanceResult& result, std::int64_t slack) {
  const bool reference = n == 26 && slack == kPsiSlack;
  Verdict v = Verdict::info;
  if (reference) v = result.max_length == 15 ? Verdict::pass : Verdict::fail;
  Document d = make("verify binary26", v,
                    "longest {1,2}-word avoiding psi_" + std::to_string(n) + "-kernel repetitions has length " +
                        std::to_string(result.max_length));
  d.payload["n"] = n;
  d.payload["slack"] = slack;
  d.payload["max_length"] = result.max_length;
  d.payload["nodes"] = result.nodes;
  if (reference) d.payload["expected"] = 15;
  d.payload["witnesses"] = json::array({result.longest.to_string()});
  return d;
}

Document lemma6_document(std::uint32_t m, std::size_t length, std::uint64_t seed,
                         const std::vector<Lemma6Report>& reports) {
  std::size_t violations = 0;
  std::uint64_t kernel_factors = 0;
  std::set<std::size_t> lengths;
  for (const auto& r : reports) {
    violations += r.violations.size();
    kernel_factors += r.kernel_factors;
    lengths.insert(r.kernel_lengths.begin(), r.kernel_lengths.end());
  }
  const std::uint64_t divisor = std::uint64_t{1} << (2 * (m - 1));
  Document d = make("verify lemma6", violations == 0 ? Verdict::pass : Verdict::fail,
                    std::to_string(violations) + " violations over " + std::to_string(reports.size()) +
                        " samples; " + std::to_string(kernel_factors) + " kernel factors, all lengths divisible by " +
                        std::to_string(divisor) + (violations ? " (FAILED)" : ""));
  d.payload["m"] = m;
  d.payload["length"] = length;
  d.payload["samples"] = reports.size();
  d.payload["seed"] = seed;
  d.payload["divisor"] = divisor;
  d.payload["kernel_factors"] = kernel_factors;
  d.payload["kernel_lengths"] = lengths;
  d.payload["violations"] = violations;
  json list = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    for (const auto& [start, len] : reports[i].violations) {
      json j;
      j["sample"] = i;
      j["start"] = start;
      j["length"] = len;
      list.push_back(std::move(j));
    }
  }
  d.payload["witnesses"] = std::move(list);
  return d;
}

Document prop7_document(const Prop7Report& report) {
  Document d = make("verify prop7-desk", report.passed() ? Verdict::pass : Verdict::fail,
                    std::to_string(report.findings.size()) + " psi_" + std::to_string(report.n) +
                        "-kernel repetitions in " + std::to_string(report.samples) + " samples of length " +
                        std::to_string(report.length));
  d.payload["m"] = report.m;
  d.payload["n"] = report.n;
  d.payload["length"] = report.length;
  d.payload["samples"] = report.samples;
  d.payload["seed"] = report.seed;
  d.payload["findings"] = report.findings.size();
  json list = json::array();
  for (const auto& f : report.findings) {
    json j = report_json(f.report);
    j["sample"] = f.sample;
    list.push_back(std::move(j));
  }
  d.payload["witnesses"] = std::move(list);
  return d;
}

Document stabilizing_document(const StabilizingReport* report) {
  if (!report) {
    Document d = make("verify n26-stab", Verdict::unavailable, "no morphism table supplied (use --table FILE)");
    d.payload["available"] = false;
    return d;
  }
  std::string lengths;
  for (const auto& w : report->witnesses) {
    if (!lengths.empty()) lengths += ", ";
    lengths += std::to_string(w.letter) + ": " + (w.shortest ? std::to_string(w.shortest->length) : "none");
  }
  Document d = make("verify n26-stab", report->all_found() ? Verdict::pass : Verdict::fail,
                    "shortest " + std::to_string(report->k) + "-stabilizing factor of f(a" +
                        std::to_string(report->suffix) + ") below " + std::to_string(report->k * (report->n - 1)) +
                        " per letter a: " + lengths);
  d.payload["available"] = true;
  d.payload["n"] = report->n;
  d.payload["k"] = report->k;
  d.payload["suffix"] = report->suffix;
  d.payload["bound"] = report->k * (report->n - 1);
  json list = json::array();
  for (const auto& w : report->witnesses) {
    json j;
    j["letter"] = w.letter;
    j["input"] = w.input.to_string();
    j["shortest"] = w.shortest ? report_json(*w.shortest) : json(nullptr);
    list.push_back(std::move(j));
  }
  d.payload["witnesses"] = std::move(list);
  return d;
}

}  // namespace dejean
