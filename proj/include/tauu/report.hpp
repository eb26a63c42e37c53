#pragma once

#include <string>

#include "json.hpp"
#include "tauu/analyzer.hpp"
#include "tauu/properties.hpp"
#include "tauu/theorem_lab.hpp"

namespace tauu {

using Json = nlohmann::ordered_json;

/// Bumped whenever a field is renamed or removed.
inline constexpr int kSchemaVersion = 1;

Json to_json(const Ring& r, const std::vector<Element>& xs);
Json to_json(const Ring& r, const Factorization& f);
Json to_json(const Ring& r, const UFactorization& uf);
Json to_json(const Ring& r, const PumpCycle& p);
Json to_json(const Ring& r, const IrreducibilityReport& rep);
Json to_json(const Ring& r, const RelationReport& rep);
Json to_json(const Ring& r, const PropertyVerdict& v);
Json to_json(const Counterexample& cx);
Json to_json(const VerificationReport& rep);
Json to_json(const CorpusReport& rep);
Json to_json(const OpenQuestionReport& rep);
Json ring_info_json(const Ring& r);

std::string render_text(const Ring& r, const IrreducibilityReport& rep);
std::string render_text(const Ring& r, const RelationReport& rep);
std::string render_text(const Ring& r, const PropertyVerdict& v);
std::string render_text(const VerificationReport& rep);
/// One row per report, then the totals and coverage.
std::string render_text(const CorpusReport& rep);
std::string render_text(const OpenQuestionReport& rep);
std::string ring_info_text(const Ring& r);

}  // namespace tauu
