#pragma once

#include "json.hpp"
#include <optional>
#include <string>
#include <vector>

#include "dejean/carpi.hpp"
#include "dejean/growth.hpp"
#include "dejean/verifier.hpp"

namespace dejean {

enum class Verdict { pass, fail, info, unavailable };

std::string_view verdict_name(Verdict v);

/// One self-describing result per invocation. Witness lists live under
/// payload["witnesses"] so they can be dropped from compact renderings.
struct Document {
  std::string command;
  Verdict verdict = Verdict::info;
  std::string summary;
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  std::optional<std::string> csv;

  std::string to_json(bool include_witnesses) const;
};

nlohmann::ordered_json report_json(const RepetitionReport& r);

Document check_document(const Word& word, const RationalExponent& r, bool strict);
Document gamma_document(std::uint32_t n, const Word& binary);
Document scan_pansiot_document(std::uint32_t n, const Word& binary);
Document pipeline_document(const MorphismTable& table, const Word& word, bool verify);

Document beta_document(std::size_t length);
Document alpha_document(std::uint32_t m, std::size_t length);
Document zm_document(std::uint32_t m, std::size_t length, std::size_t free_slot_limit);
Document z4_document(std::size_t max_length);

Document growth_document(const GrowthTable& table);
Document lower_bound_document(std::uint32_t n, std::uint64_t k);

Document elimination_document(const EliminationReport& report);
Document w_set_document(const std::vector<MaximalKernelRepetition>& W, const WSearchOptions& options);
Document ew_document(const EwReport& report);
Document binary_avoidance_document(std::uint32_t n, const BinaryAvoidanceResult& result, std::int64_t slack);
Document lemma6_document(std::uint32_t m, std::size_t length, std::uint64_t seed,
                         const std::vector<Lemma6Report>& reports);
Document prop7_document(const Prop7Report& report);
Document stabilizing_document(const StabilizingReport* report);

}  // namespace dejean
