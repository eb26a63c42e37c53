#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauu/analyzer.hpp"

namespace tauu {

enum class Status { pass, vacuous_pass, skip, fail };
std::string_view to_string(Status s);

struct TheoremInfo {
  std::string id;
  std::string statement;
  /// Structural hypotheses, computed per corpus entry.
  std::string hypotheses;
  bool product_only = false;
};

/// Every theorem ID, in catalog order.
const std::vector<TheoremInfo>& catalog();
const TheoremInfo& theorem_info(std::string_view id);
/// Expands `all`, group prefixes such as `GEN-REL` and plain IDs.
std::vector<std::string> expand_ids(const std::vector<std::string>& ids);

struct CorpusEntry {
  std::string ring;
  std::string tau;
  friend auto operator<=>(const CorpusEntry&, const CorpusEntry&) = default;
};

/// {Z4, Z6, Z8, Z12, Z20} x {full, comaximal} and {Z6xZ8, Z4xZ9} x {full, comaximal, prod(full,full)}.
std::vector<CorpusEntry> default_corpus();
/// One `ring-spec | relation-spec` per line; `#` starts a comment.
std::vector<CorpusEntry> parse_corpus(std::istream& in, std::string_view source = "<corpus>");
std::vector<CorpusEntry> load_corpus(const std::string& path);

/// Rendered, ring-independent evidence for a failed instance.
struct Counterexample {
  std::string summary;
  std::map<std::string, std::string> params;
  std::string element;
  std::vector<std::string> factorizations;
  std::vector<std::string> details;
  /// Every listed factorization re-checked by the low-level validators.
  bool revalidated = false;
};

struct VerificationReport {
  std::string theorem;
  CorpusEntry entry;
  bool hypotheses_satisfied = false;
  bool antecedent_holds = false;
  bool conclusion_holds = true;
  Status status = Status::skip;
  std::size_t instances = 0;   // instances whose hypotheses held
  std::size_t nonvacuous = 0;  // of those, instances whose antecedent held
  std::size_t skipped = 0;     // instances with a false hypothesis
  std::vector<std::string> notes;
  std::optional<Counterexample> counterexample;
};

struct VerifyOptions {
  /// Restrict the α / β instances checked; all applicable ones by default.
  std::optional<Grade> alpha;
  std::optional<Assoc> beta;
};

/// Verifies one theorem on one (R, τ). Throws UnknownTheorem.
VerificationReport verify(const Ring& r, const TauRelation& t, std::string_view id, const VerifyOptions& opt = {});
VerificationReport verify(const CorpusEntry& entry, std::string_view id, const VerifyOptions& opt = {});

struct CorpusReport {
  std::vector<VerificationReport> reports;  // ordered by (ring, relation, theorem)
  std::size_t pass = 0;
  std::size_t vacuous = 0;
  std::size_t skip = 0;
  std::size_t fail = 0;
  /// Non-vacuous (PASS or FAIL) entries per theorem ID.
  std::map<std::string, std::size_t> coverage;
  std::vector<std::string> uncovered;
};

/// Verifies every (entry, id) pair; entries run concurrently.
CorpusReport run_corpus(const std::vector<CorpusEntry>& corpus, const std::vector<std::string>& ids,
                        const VerifyOptions& opt = {}, unsigned threads = 0);

struct OpenQuestionReport {
  std::string question;
  std::size_t sampled = 0;
  std::vector<CorpusEntry> entries;
  /// Per sampled entry: U-form verdict and plain verdict for each α checked.
  std::vector<std::string> observations;
  std::optional<Counterexample> separation;
  std::string note;
};

/// Q-UATOMIC or Q-UACCP over the first `budget` samples.
OpenQuestionReport search_open_question(std::string_view which, const std::vector<CorpusEntry>& samples,
                                        std::size_t budget);

}  // namespace tauu
