// dejean: command-line front end over the C API.
//
// Exit codes: 0 pass/info, 1 fail/unavailable, 2 usage or input errors,
// 3 resource limits and other runtime failures.

#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dejean/dejean.h"
#include "json.hpp"

namespace {

struct Failure {
  dj_status status;
  std::string message;
};

void check(dj_status s) {
  if (s != DJ_OK) throw Failure{s, dj_last_error()};
}

struct WordDeleter {
  void operator()(dj_word* w) const { dj_word_free(w); }
};
struct TableDeleter {
  void operator()(dj_table* t) const { dj_table_free(t); }
};
struct DocDeleter {
  void operator()(dj_doc* d) const { dj_doc_free(d); }
};
using WordPtr = std::unique_ptr<dj_word, WordDeleter>;
using TablePtr = std::unique_ptr<dj_table, TableDeleter>;
using DocPtr = std::unique_ptr<dj_doc, DocDeleter>;

WordPtr parse_word(const std::string& text, uint32_t alphabet) {
  dj_word* w = nullptr;
  check(dj_word_parse(text.c_str(), alphabet, &w));
  return WordPtr(w);
}

WordPtr parse_binary(const std::string& bits) {
  dj_word* w = nullptr;
  check(dj_word_parse_binary(bits.c_str(), &w));
  return WordPtr(w);
}

TablePtr load_table(const std::string& path) {
  dj_table* t = nullptr;
  check(dj_table_load(path.c_str(), &t));
  return TablePtr(t);
}

struct Output {
  bool json = false;
  bool witnesses = false;
};

enum class TextMode { summary, words, word, csv };

int exit_code(dj_verdict v) { return v == DJ_VERDICT_PASS || v == DJ_VERDICT_INFO ? 0 : 1; }

int render(const Output& out, const std::function<dj_status(dj_doc**)>& make, TextMode mode) {
  dj_doc* raw = nullptr;
  const dj_status status = make(&raw);
  DocPtr doc(raw);
  check(status);
  if (out.json || out.witnesses) {
    std::cout << dj_doc_json(doc.get(), out.witnesses ? 1 : 0) << '\n';
    return exit_code(dj_doc_verdict(doc.get()));
  }
  switch (mode) {
    case TextMode::summary:
      std::cout << dj_doc_summary(doc.get()) << '\n';
      break;
    case TextMode::csv:
      if (const char* csv = dj_doc_csv(doc.get())) std::cout << csv;
      break;
    case TextMode::word:
    case TextMode::words: {
      auto j = nlohmann::json::parse(dj_doc_json(doc.get(), 1));
      const auto& payload = j["payload"];
      if (mode == TextMode::word) {
        std::cout << payload["word"].get<std::string>() << '\n';
      } else {
        for (const auto& w : payload["words"]) std::cout << w.get<std::string>() << '\n';
      }
      break;
    }
  }
  return exit_code(dj_doc_verdict(doc.get()));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-word workbench: encodings, kernel-repetition checks, constructions and growth counts"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(dj_version()));

  Output out;
  unsigned jobs = 0;
  app.add_option("--jobs", jobs, "Worker threads (default: DEJEAN_JOBS or all cores)");
  app.add_flag("--json", out.json, "Print the structured result document");
  app.add_flag("--witnesses", out.witnesses, "Include witness lists (implies --json)");

  std::function<int()> action;

  // rt
  uint32_t rt_n = 0;
  auto* rt = app.add_subcommand("rt", "Repetition threshold RT(n)");
  rt->add_option("--n", rt_n, "Alphabet size")->required();
  rt->callback([&] {
    action = [&] {
      dj_rational r{};
      check(dj_repetition_threshold(rt_n, &r));
      const std::string text = std::to_string(r.num) + "/" + std::to_string(r.den);
      if (out.json || out.witnesses) {
        nlohmann::ordered_json doc;
        doc["schema"] = DJ_SCHEMA_VERSION;
        doc["command"] = "rt";
        doc["status"] = "info";
        doc["summary"] = text;
        doc["payload"] = {{"n", rt_n}, {"threshold", text}};
        std::cout << doc.dump(2) << '\n';
      } else {
        std::cout << text << '\n';
      }
      return 0;
    };
  });

  // check
  std::string check_r, check_word;
  bool check_strict = false;
  uint32_t check_alphabet = 0;
  auto* chk = app.add_subcommand("check", "Search a word for a factor of exponent >= r (or > r with --strict)");
  chk->add_option("--r", check_r, "Exponent bound NUM/DEN")->required();
  chk->add_flag("--strict", check_strict, "Forbid only exponents strictly above r");
  chk->add_option("--word", check_word, "Word over {1..alphabet}")->required();
  chk->add_option("--alphabet", check_alphabet, "Alphabet size")->required();
  chk->callback([&] {
    action = [&] {
      dj_rational r{};
      check(dj_rational_parse(check_r.c_str(), &r));
      auto w = parse_word(check_word, check_alphabet);
      return render(out, [&](dj_doc** d) { return dj_doc_check(w.get(), r, check_strict, d); }, TextMode::summary);
    };
  });

  // gamma, scan-pansiot
  uint32_t pan_n = 0;
  std::string pan_bits;
  auto* gam = app.add_subcommand("gamma", "Decode a binary Pansiot code");
  gam->add_option("--n", pan_n, "Alphabet size")->required();
  gam->add_option("--binary", pan_bits, "Code over {0,1}")->required();
  gam->callback([&] {
    action = [&] {
      auto w = parse_binary(pan_bits);
      return render(out, [&](dj_doc** d) { return dj_doc_gamma(pan_n, w.get(), d); }, TextMode::word);
    };
  });
  auto* scan = app.add_subcommand("scan-pansiot", "Look for short stabilizing factors and kernel repetitions");
  scan->add_option("--n", pan_n, "Alphabet size")->required();
  scan->add_option("--binary", pan_bits, "Code over {0,1}")->required();
  scan->callback([&] {
    action = [&] {
      auto w = parse_binary(pan_bits);
      return render(out, [&](dj_doc** d) { return dj_doc_scan_pansiot(pan_n, w.get(), d); }, TextMode::summary);
    };
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Generate construction words");
  gen->require_subcommand(1);
  std::size_t gen_length = 0;
  uint32_t gen_m = 5;
  std::size_t gen_limit = 24;
  auto* gen_beta = gen->add_subcommand("beta", "Prefix of beta");
  gen_beta->add_option("--length", gen_length, "Prefix length")->required();
  gen_beta->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_generate_beta(gen_length, d); }, TextMode::words);
    };
  });
  auto* gen_alpha = gen->add_subcommand("alpha", "Prefix of alpha over A_m");
  gen_alpha->add_option("--m", gen_m, "Alphabet size (>= 4)")->required();
  gen_alpha->add_option("--length", gen_length, "Prefix length")->required();
  gen_alpha->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_generate_alpha(gen_m, gen_length, d); }, TextMode::words);
    };
  });
  auto* gen_zm = gen->add_subcommand("zm", "All members of Z_m of one length");
  gen_zm->add_option("--m", gen_m, "Alphabet size (>= 5)")->required();
  gen_zm->add_option("--length", gen_length, "Word length")->required();
  gen_zm->add_option("--limit", gen_limit, "Maximum number of free slots")->capture_default_str();
  gen_zm->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_generate_zm(gen_m, gen_length, gen_limit, d); }, TextMode::words);
    };
  });
  auto* gen_z4 = gen->add_subcommand("z4", "Z4 factors up to a length");
  gen_z4->add_option("--max-length", gen_length, "Largest factor length")->required();
  gen_z4->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_generate_z4(gen_length, d); }, TextMode::words);
    };
  });

  // count
  auto* count = app.add_subcommand("count", "Count words per length");
  count->require_subcommand(1);
  std::string format = "csv";
  count->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  uint32_t count_n = 3;
  std::size_t count_k = 10;
  uint64_t budget = 0;
  bool symmetry = false;
  auto count_render = [&](const std::function<dj_status(dj_doc**)>& make) {
    if (format == "json") out.json = true;
    return render(out, make, TextMode::csv);
  };
  auto* c_thr = count->add_subcommand("threshold", "RT(n)+-free words over n letters");
  c_thr->add_option("--n", count_n, "Alphabet size")->required();
  c_thr->add_option("--max-length", count_k, "Largest length K")->required();
  c_thr->add_option("--budget", budget, "DFS node budget (0 = unlimited)");
  c_thr->add_flag("--symmetry", symmetry, "Count up to letter renaming and rescale");
  c_thr->callback([&] {
    action = [&] {
      return count_render([&](dj_doc** d) { return dj_count_threshold(count_n, count_k, budget, symmetry, d); });
    };
  });
  auto* c_zm = count->add_subcommand("zm", "Members of Z_m");
  c_zm->add_option("--m", count_n, "Alphabet size (>= 5)")->required();
  c_zm->add_option("--max-length", count_k, "Largest length K")->required();
  c_zm->callback([&] {
    action = [&] {
      return count_render([&](dj_doc** d) { return dj_count_zm(count_n, count_k, d); });
    };
  });
  auto* c_z4 = count->add_subcommand("z4", "Z4 factors");
  c_z4->add_option("--max-length", count_k, "Largest length K")->required();
  c_z4->callback([&] {
    action = [&] {
      return count_render([&](dj_doc** d) { return dj_count_z4(count_k, d); });
    };
  });
  uint64_t bound_k = 0;
  auto* c_bound = count->add_subcommand("bound", "Explicit lower bound on the count of threshold words");
  c_bound->add_option("--n", count_n, "Alphabet size (>= 27)")->required();
  c_bound->add_option("--k", bound_k, "Length")->required();
  c_bound->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_lower_bound(count_n, bound_k, d); }, TextMode::summary);
    };
  });

  // verify
  auto* verify = app.add_subcommand("verify", "Reproduce the exhaustive checks");
  verify->require_subcommand(1);

  uint32_t n_lo = 27, n_hi = 32;
  std::size_t elim_length = 130;
  std::vector<std::string> injected;
  auto* v_elim = verify->add_subcommand("elimination", "No short psi-kernel repetitions in Z4 factors");
  v_elim->add_option("--n-lo", n_lo)->capture_default_str();
  v_elim->add_option("--n-hi", n_hi)->capture_default_str();
  v_elim->add_option("--max-length", elim_length)->capture_default_str();
  v_elim->add_option("--inject", injected, "Extra words over A_4 to scan (self-test)");
  v_elim->callback([&] {
    action = [&] {
      std::vector<const char*> ptrs;
      for (const auto& s : injected) ptrs.push_back(s.c_str());
      return render(out, [&](dj_doc** d) { return dj_verify_elimination(n_lo, n_hi, elim_length, ptrs.data(), ptrs.size(), d); }, TextMode::summary);
    };
  });

  std::size_t w_length = 155;
  bool no_bound_filter = false;
  std::string maximality = "two-sided";
  auto* v_w = verify->add_subcommand("w-set", "Maximal kernel repetitions with short tails");
  v_w->add_option("--max-length", w_length)->capture_default_str();
  v_w->add_flag("--no-bound-filter", no_bound_filter, "Keep entries violating p <= 31(|v| - p + 2)");
  v_w->add_option("--maximality", maximality)
      ->check(CLI::IsMember({"two-sided", "left-only", "right-only"}))
      ->capture_default_str();
  v_w->callback([&] {
    action = [&] {
      const dj_maximality mode = maximality == "left-only"    ? DJ_MAXIMAL_LEFT_ONLY
                                 : maximality == "right-only" ? DJ_MAXIMAL_RIGHT_ONLY
                                                              : DJ_MAXIMAL_TWO_SIDED;
      return render(out, [&](dj_doc** d) { return dj_verify_w_set(w_length, !no_bound_filter, mode, d); }, TextMode::summary);
    };
  });
  auto* v_ew = verify->add_subcommand("ew", "The inequality 3p > 31(q - 3p + 2) over W");
  v_ew->add_option("--max-length", w_length)->capture_default_str();
  v_ew->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_verify_ew(w_length, d); }, TextMode::summary);
    };
  });

  uint32_t b_n = 26;
  std::size_t depth_cap = 64;
  int64_t slack = 3;
  auto* v_bin = verify->add_subcommand("binary26", "Longest {1,2}-word without psi_n-kernel repetitions");
  v_bin->add_option("--n", b_n)->capture_default_str();
  v_bin->add_option("--depth-cap", depth_cap)->capture_default_str();
  v_bin->add_option("--slack", slack)->capture_default_str();
  v_bin->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_verify_binary_avoidance(b_n, depth_cap, slack, d); }, TextMode::summary);
    };
  });

  uint32_t s_m = 5, s_n = 33;
  std::size_t s_length = 2048, s_samples = 50;
  uint64_t seed = 1;
  bool exhaustive = false;
  auto* v_l6 = verify->add_subcommand("lemma6", "psi-kernel factor lengths in sampled Z_m members");
  v_l6->add_option("--m", s_m)->capture_default_str();
  v_l6->add_option("--length", s_length)->capture_default_str();
  v_l6->add_option("--samples", s_samples)->capture_default_str();
  v_l6->add_option("--seed", seed)->capture_default_str();
  v_l6->add_flag("--exhaustive", exhaustive, "Record the set of kernel factor lengths");
  v_l6->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_verify_lemma6(s_m, s_length, s_samples, seed, exhaustive, d); }, TextMode::summary);
    };
  });
  auto* v_p7 = verify->add_subcommand("prop7-desk", "No psi_n-kernel repetitions in sampled Z_m members");
  v_p7->add_option("--m", s_m)->capture_default_str();
  v_p7->add_option("--n", s_n)->capture_default_str();
  v_p7->add_option("--length", s_length)->capture_default_str();
  v_p7->add_option("--samples", s_samples)->capture_default_str();
  v_p7->add_option("--seed", seed)->capture_default_str();
  v_p7->callback([&] {
    action = [&] {
      return render(out, [&](dj_doc** d) { return dj_verify_prop7_desk(s_m, s_n, s_length, s_samples, seed, d); }, TextMode::summary);
    };
  });

  std::string stab_table;
  uint32_t stab_k = 15, stab_suffix = 3;
  auto* v_stab = verify->add_subcommand("n26-stab", "Short stabilizing factors of f_26 images (needs a table)");
  v_stab->add_option("--table", stab_table, "Morphism table JSON");
  v_stab->add_option("--k", stab_k)->capture_default_str();
  v_stab->add_option("--suffix", stab_suffix)->capture_default_str();
  v_stab->callback([&] {
    action = [&] {
      TablePtr table;
      if (!stab_table.empty()) table = load_table(stab_table);
      return render(out, [&](dj_doc** d) { return dj_verify_n26_stabilizing(table.get(), stab_k, stab_suffix, d); }, TextMode::summary);
    };
  });

  // pipeline
  std::string p_table, p_word;
  bool p_verify = false;
  auto* pipe = app.add_subcommand("pipeline", "Apply f_n then gamma_n to a word over A_m");
  pipe->add_option("--table", p_table, "Morphism table JSON")->required();
  pipe->add_option("--word", p_word, "Word over the table's source alphabet")->required();
  pipe->add_flag("--verify", p_verify, "Check the input and the output exponent");
  pipe->callback([&] {
    action = [&] {
      auto table = load_table(p_table);
      auto w = parse_word(p_word, dj_table_alphabet(table.get()));
      return render(out, [&](dj_doc** d) { return dj_doc_pipeline(table.get(), w.get(), p_verify, d); }, TextMode::summary);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (jobs) dj_set_jobs(jobs);
  try {
    return action ? action() : 2;
  } catch (const Failure& f) {
    std::cerr << "error (" << dj_status_name(f.status) << "): " << f.message << '\n';
    switch (f.status) {
      case DJ_E_INVALID_ARGUMENT:
      case DJ_E_PARSE:
      case DJ_E_DOMAIN:
        return 2;
      default:
        return 3;
    }
  }
}
