#include "dejean/dejean.h"

#include <memory>
#include <new>
#include <string>

#include "dejean/documents.hpp"
#include "dejean/error.hpp"
#include "dejean/pansiot.hpp"
#include "dejean/parallel.hpp"

struct dj_word {
  dejean::Word word;
};

struct dj_table {
  dejean::MorphismTable table;
};

struct dj_doc {
  dejean::Document doc;
  std::string json_full;
  std::string json_compact;
  bool rendered = false;
};

namespace {

using namespace dejean;

thread_local std::string last_error;

dj_status fail(dj_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class Fn>
dj_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return DJ_OK;
  } catch (const Error& e) {
    return fail(static_cast<dj_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(DJ_E_LIMIT, "out of memory");
  } catch (const std::exception& e) {
    return fail(DJ_E_INTERNAL, e.what());
  } catch (...) {
    return fail(DJ_E_INTERNAL, "unknown failure");
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (!p) throw Error(ErrorCode::invalid_argument, std::string(what) + " must not be null");
}

dj_rational to_c(const RationalExponent& r) { return {r.numerator(), r.denominator()}; }

dj_report to_c(const RepetitionReport& r) {
  dj_report out{};
  out.start = r.start;
  out.length = r.length;
  out.period = r.period;
  out.exponent = to_c(r.exponent);
  out.kind = static_cast<dj_kind>(r.kind);
  out.order = r.order;
  return out;
}

void write_report(const std::optional<RepetitionReport>& r, dj_report* report, int* found) {
  if (found) *found = r ? 1 : 0;
  if (r && report) *report = to_c(*r);
}

dj_status emit(dj_doc** out, const std::function<Document()>& build) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    auto doc = std::make_unique<dj_doc>();
    doc->doc = build();
    *out = doc.release();
  });
}

Maximality to_core(dj_maximality m) {
  switch (m) {
    case DJ_MAXIMAL_TWO_SIDED: return Maximality::two_sided;
    case DJ_MAXIMAL_LEFT_ONLY: return Maximality::left_only;
    case DJ_MAXIMAL_RIGHT_ONLY: return Maximality::right_only;
  }
  throw Error(ErrorCode::invalid_argument, "unknown maximality mode");
}

}  // namespace

extern "C" {

const char* dj_version(void) { return "1.0.0"; }

const char* dj_last_error(void) { return last_error.c_str(); }

const char* dj_status_name(dj_status status) {
  switch (status) {
    case DJ_OK: return "ok";
    case DJ_E_INVALID_ARGUMENT: return "invalid_argument";
    case DJ_E_PARSE: return "parse";
    case DJ_E_DOMAIN: return "domain";
    case DJ_E_LIMIT: return "limit";
    case DJ_E_VERIFICATION: return "verification";
    case DJ_E_UNAVAILABLE: return "unavailable";
    case DJ_E_IO: return "io";
    case DJ_E_INTERNAL: return "internal";
  }
  return "unknown";
}

void dj_set_jobs(unsigned jobs) { set_default_jobs(jobs); }
unsigned dj_get_jobs(void) { return default_jobs(); }

// Words

dj_status dj_word_parse(const char* text, uint32_t alphabet, dj_word** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = new dj_word{Word::parse(text, alphabet)};
  });
}

dj_status dj_word_parse_binary(const char* bits, dj_word** out) {
  return guarded([&] {
    require(bits, "bits");
    require(out, "out");
    *out = new dj_word{Word::parse_binary(bits)};
  });
}

dj_status dj_word_from_letters(const uint32_t* letters, size_t length, uint32_t alphabet, dj_word** out) {
  return guarded([&] {
    if (length) require(letters, "letters");
    require(out, "out");
    std::vector<Letter> v(letters, letters + length);
    *out = new dj_word{Word(std::move(v), alphabet)};
  });
}

void dj_word_free(dj_word* word) { delete word; }

size_t dj_word_length(const dj_word* word) { return word ? word->word.size() : 0; }

uint32_t dj_word_alphabet(const dj_word* word) { return word ? word->word.alphabet_size() : 0; }

size_t dj_word_letters(const dj_word* word, uint32_t* buffer, size_t capacity) {
  if (!word) return 0;
  const auto letters = word->word.letters();
  for (size_t i = 0; i < letters.size() && i < capacity && buffer; ++i) buffer[i] = letters[i];
  return letters.size();
}

dj_status dj_word_format(const dj_word* word, char* buffer, size_t capacity, size_t* needed) {
  return guarded([&] {
    require(word, "word");
    const std::string text =
        word->word.alphabet_size() == 2 ? word->word.to_binary_string() : word->word.to_string();
    if (needed) *needed = text.size() + 1;
    if (!buffer || capacity < text.size() + 1) {
      throw Error(ErrorCode::limit, "buffer too small: need " + std::to_string(text.size() + 1) + " bytes");
    }
    text.copy(buffer, text.size());
    buffer[text.size()] = '\0';
  });
}

// Exponents

dj_status dj_rational_parse(const char* text, dj_rational* out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = to_c(RationalExponent::parse(text));
  });
}

dj_status dj_repetition_threshold(uint32_t n, dj_rational* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(repetition_threshold(n));
  });
}

dj_status dj_max_exponent(const dj_word* word, dj_rational* out) {
  return guarded([&] {
    require(word, "word");
    require(out, "out");
    *out = to_c(max_exponent(word->word));
  });
}

dj_status dj_find_forbidden_factor(const dj_word* word, dj_rational r, int strict, dj_report* report, int* found) {
  return guarded([&] {
    require(word, "word");
    write_report(find_forbidden_factor(word->word, RationalExponent(r.num, r.den), strict != 0), report, found);
  });
}

// Pansiot

dj_status dj_phi(uint32_t n, const dj_word* binary, uint32_t* images, size_t capacity) {
  return guarded([&] {
    require(binary, "binary");
    require(images, "images");
    auto p = phi(n, binary->word);
    if (capacity < p.degree()) throw Error(ErrorCode::limit, "images buffer holds fewer than n entries");
    for (uint32_t a = 1; a <= p.degree(); ++a) images[a - 1] = p.apply(a);
  });
}

dj_status dj_gamma(uint32_t n, const dj_word* binary, dj_word** out) {
  return guarded([&] {
    require(binary, "binary");
    require(out, "out");
    *out = new dj_word{gamma(n, binary->word)};
  });
}

dj_status dj_is_k_stabilizing(uint32_t n, const dj_word* binary, uint32_t k, int* result) {
  return guarded([&] {
    require(binary, "binary");
    require(result, "result");
    *result = is_k_stabilizing(n, binary->word, k) ? 1 : 0;
  });
}

dj_status dj_scan_pansiot(uint32_t n, const dj_word* binary, dj_report* report, int* found) {
  return guarded([&] {
    require(binary, "binary");
    write_report(scan_prop32(n, binary->word), report, found);
  });
}

// Carpi

dj_status dj_in_psi_kernel(const dj_word* word, int* result) {
  return guarded([&] {
    require(word, "word");
    require(result, "result");
    *result = in_psi_kernel(word->word) ? 1 : 0;
  });
}

dj_status dj_find_psi_kernel_repetition(uint32_t n, const dj_word* word, dj_report* report, int* found) {
  return guarded([&] {
    require(word, "word");
    write_report(find_psi_kernel_repetition(n, word->word), report, found);
  });
}

dj_status dj_table_load(const char* path, dj_table** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new dj_table{MorphismTable::load(path)};
  });
}

dj_status dj_table_parse(const char* json_text, dj_table** out) {
  return guarded([&] {
    require(json_text, "json_text");
    require(out, "out");
    *out = new dj_table{MorphismTable::parse_json(json_text)};
  });
}

dj_status dj_table_from_images(uint32_t n, const char* const* binary_images, size_t count, dj_table** out) {
  return guarded([&] {
    if (count) require(binary_images, "binary_images");
    require(out, "out");
    std::vector<Word> images;
    images.reserve(count);
    for (size_t i = 0; i < count; ++i) {
      require(binary_images[i], "image");
      images.push_back(Word::parse_binary(binary_images[i]));
    }
    *out = new dj_table{MorphismTable::make(n, std::move(images))};
  });
}

void dj_table_free(dj_table* table) { delete table; }

uint32_t dj_table_order(const dj_table* table) { return table ? table->table.order() : 0; }

uint32_t dj_table_alphabet(const dj_table* table) { return table ? table->table.source_alphabet() : 0; }

size_t dj_table_image_length(const dj_table* table) { return table ? table->table.image_length() : 0; }

dj_status dj_pipeline(const dj_table* table, const dj_word* word, int verify, dj_word** out, dj_report* failure) {
  try {
    require(table, "table");
    require(word, "word");
    require(out, "out");
    *out = new dj_word{threshold_pipeline(table->table, word->word, verify != 0)};
    last_error.clear();
    return DJ_OK;
  } catch (const VerificationError& e) {
    if (failure) *failure = to_c(e.report());
    return fail(DJ_E_VERIFICATION, e.what());
  } catch (...) {
    return guarded([] { throw; });
  }
}

// Documents

dj_verdict dj_doc_verdict(const dj_doc* doc) {
  return doc ? static_cast<dj_verdict>(doc->doc.verdict) : DJ_VERDICT_UNAVAILABLE;
}

const char* dj_doc_summary(const dj_doc* doc) { return doc ? doc->doc.summary.c_str() : ""; }

const char* dj_doc_json(const dj_doc* doc, int include_witnesses) {
  if (!doc) return "";
  auto* d = const_cast<dj_doc*>(doc);
  if (!d->rendered) {
    d->json_full = d->doc.to_json(true);
    d->json_compact = d->doc.to_json(false);
    d->rendered = true;
  }
  return include_witnesses ? d->json_full.c_str() : d->json_compact.c_str();
}

const char* dj_doc_csv(const dj_doc* doc) { return doc && doc->doc.csv ? doc->doc.csv->c_str() : nullptr; }

void dj_doc_free(dj_doc* doc) { delete doc; }

dj_status dj_doc_check(const dj_word* word, dj_rational r, int strict, dj_doc** out) {
  return emit(out, [&] {
    require(word, "word");
    return check_document(word->word, RationalExponent(r.num, r.den), strict != 0);
  });
}

dj_status dj_doc_gamma(uint32_t n, const dj_word* binary, dj_doc** out) {
  return emit(out, [&] {
    require(binary, "binary");
    return gamma_document(n, binary->word);
  });
}

dj_status dj_doc_scan_pansiot(uint32_t n, const dj_word* binary, dj_doc** out) {
  return emit(out, [&] {
    require(binary, "binary");
    return scan_pansiot_document(n, binary->word);
  });
}

dj_status dj_doc_pipeline(const dj_table* table, const dj_word* word, int verify, dj_doc** out) {
  return emit(out, [&] {
    require(table, "table");
    require(word, "word");
    return pipeline_document(table->table, word->word, verify != 0);
  });
}

dj_status dj_generate_beta(size_t length, dj_doc** out) {
  return emit(out, [&] { return beta_document(length); });
}

dj_status dj_generate_alpha(uint32_t m, size_t length, dj_doc** out) {
  return emit(out, [&] { return alpha_document(m, length); });
}

dj_status dj_generate_zm(uint32_t m, size_t length, size_t free_slot_limit, dj_doc** out) {
  return emit(out, [&] { return zm_document(m, length, free_slot_limit ? free_slot_limit : kDefaultFreeSlotLimit); });
}

dj_status dj_generate_z4(size_t max_length, dj_doc** out) {
  return emit(out, [&] { return z4_document(max_length); });
}

dj_status dj_count_threshold(uint32_t n, size_t max_length, uint64_t node_budget, int symmetry, dj_doc** out) {
  return emit(out, [&] {
    CountOptions options;
    options.node_budget = node_budget;
    options.symmetry = symmetry != 0;
    return growth_document(count_threshold_words(n, max_length, options));
  });
}

dj_status dj_count_zm(uint32_t m, size_t max_length, dj_doc** out) {
  return emit(out, [&] {
    if (m < 5) throw Error(ErrorCode::domain, "Z_m is defined here for m >= 5; m = 4 uses Z4");
    LanguageSpec spec{"zm", [m](std::span<const Letter> w) {
                        return zm_is_member(m, Word(std::vector<Letter>(w.begin(), w.end()), m));
                      },
                      Closure::prefix_closed};
    auto table = count_language(spec, m, max_length);
    table.parameters.insert(table.parameters.begin(), {"m", std::to_string(m)});
    return growth_document(table);
  });
}

dj_status dj_count_z4(size_t max_length, dj_doc** out) {
  return emit(out, [&] {
    auto language = z4_language(max_length);
    LanguageSpec spec{"z4", [language](std::span<const Letter> w) { return language->contains(w); },
                      Closure::prefix_closed};
    return growth_document(count_language(spec, 4, max_length));
  });
}

dj_status dj_lower_bound(uint32_t n, uint64_t k, dj_doc** out) {
  return emit(out, [&] { return lower_bound_document(n, k); });
}

dj_status dj_verify_elimination(uint32_t n_lo, uint32_t n_hi, size_t max_length, const char* const* injected,
                                size_t injected_count, dj_doc** out) {
  return emit(out, [&] {
    std::vector<Word> extra;
    for (size_t i = 0; i < injected_count; ++i) {
      require(injected, "injected");
      require(injected[i], "injected word");
      extra.push_back(Word::parse(injected[i], 4));
    }
    return elimination_document(verify_short_elimination(n_lo, n_hi, max_length, extra));
  });
}

dj_status dj_verify_w_set(size_t max_length, int bound_filter, dj_maximality maximality, dj_doc** out) {
  return emit(out, [&] {
    WSearchOptions options;
    options.max_length = max_length;
    options.period_cap = max_length > 3 ? max_length - 3 : 0;
    options.bound_filter = bound_filter != 0;
    options.maximality = to_core(maximality);
    return w_set_document(compute_W(options), options);
  });
}

dj_status dj_verify_ew(size_t max_length, dj_doc** out) {
  return emit(out, [&] {
    WSearchOptions options;
    options.max_length = max_length;
    options.period_cap = max_length > 3 ? max_length - 3 : 0;
    return ew_document(verify_Ew(compute_W(options)));
  });
}

dj_status dj_verify_binary_avoidance(uint32_t n, size_t depth_cap, int64_t slack, dj_doc** out) {
  return emit(out, [&] { return binary_avoidance_document(n, binary_avoidance_search(n, depth_cap, slack), slack); });
}

dj_status dj_verify_lemma6(uint32_t m, size_t length, size_t samples, uint64_t seed, int exhaustive, dj_doc** out) {
  return emit(out, [&] {
    const auto words = zm_samples(m, length, samples, seed);
    std::vector<Lemma6Report> reports(words.size());
    parallel_for(words.size(), 0, [&](std::size_t i) { reports[i] = check_lemma6(m, words[i], exhaustive != 0); });
    return lemma6_document(m, length, seed, reports);
  });
}

dj_status dj_verify_prop7_desk(uint32_t m, uint32_t n, size_t length, size_t samples, uint64_t seed, dj_doc** out) {
  return emit(out, [&] { return prop7_document(check_prop7_desk(m, n, length, samples, seed)); });
}

dj_status dj_verify_n26_stabilizing(const dj_table* table, uint32_t k, uint32_t suffix, dj_doc** out) {
  return emit(out, [&] {
    if (!table) return stabilizing_document(nullptr);
    auto report = n26_stabilizing_check(&table->table, k, suffix);
    return stabilizing_document(&report);
  });
}

}  // extern "C"
