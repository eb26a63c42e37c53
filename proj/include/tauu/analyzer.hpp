#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauu/factorization.hpp"
#include "tauu/ring.hpp"
#include "tauu/tau.hpp"

namespace tauu {

/// The four irreducibility grades α.
enum class Grade { irreducible, strong, m, very_strong };

inline constexpr std::array<Grade, 4> kGrades{Grade::irreducible, Grade::strong, Grade::m, Grade::very_strong};
inline constexpr std::array<Assoc, 3> kAssocs{Assoc::assoc, Assoc::strong, Assoc::very_strong};

std::string_view to_string(Grade g);
Grade parse_grade(std::string_view text);

/// A product-restoring cycle. Inserting `cycle` k times after the first
/// `prefix_length` factors of `base` gives a τ-factorization of the same
/// element for every k >= 0.
struct PumpCycle {
  Factorization base;
  std::size_t prefix_length = 0;
  Element partial_product;
  std::vector<Element> cycle;

  Factorization pumped(std::size_t k) const;
};

/// Lengths of all factorizations of a target reachable under some search
/// constraints, decided on the exact state graph.
struct LengthProfile {
  bool factorable = false;
  std::size_t min_length = 0;
  std::optional<std::size_t> max_length;  // empty when unbounded
  std::optional<PumpCycle> pump;
  std::optional<std::vector<Element>> shortest;
  std::optional<std::vector<Element>> longest;
};

struct IrreducibilityReport {
  Element element;
  std::array<bool, 4> flags{};  // indexed by Grade
  /// A τ-factorization violating the grade, when one exists.
  std::array<std::optional<Factorization>, 4> witnesses;
  bool self_very_strong = true;
  /// A non-unit r with a = r·a when a is not very strongly associate to itself.
  std::optional<Element> self_cofactor;

  bool holds(Grade g) const { return flags[static_cast<std::size_t>(g)]; }
  bool irreducible() const { return holds(Grade::irreducible); }
  bool strongly_irreducible() const { return holds(Grade::strong); }
  bool m_irreducible() const { return holds(Grade::m); }
  bool very_strongly_irreducible() const { return holds(Grade::very_strong); }
};

struct EnumerationEntry {
  std::vector<Element> key;  // sorted β-class representatives
  Factorization witness;
};

struct EnumerationResult {
  std::vector<EnumerationEntry> entries;
  bool exact = false;
  std::size_t cap_used = 0;
  std::optional<PumpCycle> unbounded_witness;
  std::optional<std::size_t> max_length;
  /// Set when the node budget ran out before the cap was exhausted.
  bool truncated = false;
};

struct UEnumerationEntry {
  std::vector<Element> key;  // sorted β-class representatives of the essential part
  UFactorization witness;
};

struct UEnumerationResult {
  std::vector<UEnumerationEntry> entries;
  bool exact = true;
  std::size_t cap_used = 0;
  std::size_t max_essential = 0;
};

/// Bounds on the inessential part over all τ-U-factorizations of one element.
struct InessentialProfile {
  std::optional<std::size_t> max_inessential;  // empty when unbounded
  std::optional<UFactorization> longest;
  /// With an unbounded inessential part: a factorization whose inessential
  /// part can be pumped by `pump_cycle`.
  std::optional<UFactorization> pump_base;
  std::vector<Element> pump_cycle;
};

struct AnalyzerOptions {
  /// Length cap for capped searches; defaults to TAUU_CAP or |R| + 2.
  std::optional<std::size_t> cap;
  /// Node budget for plain enumeration before it reports truncation.
  std::size_t enumeration_budget = 2'000'000;
};

std::size_t default_cap(const Ring& r);

/// Factorization engine for one (R, τ) pair.
///
/// Search state is (partial product, set of factors still τ-compatible with
/// every factor used so far); adding y requires y to be in the set and
/// intersects it with the neighbours of y. Results are cached lazily, so an
/// Analyzer must not be shared between threads.
class Analyzer {
 public:
  Analyzer(Ring r, TauRelation t, AnalyzerOptions options = {});
  ~Analyzer();
  Analyzer(Analyzer&&) noexcept;
  Analyzer& operator=(Analyzer&&) noexcept;

  const Ring& ring() const noexcept;
  const TauRelation& tau() const noexcept;
  std::size_t cap() const noexcept;

  // β-classes on R^#.
  Element beta_rep(Element x, Assoc beta) const;
  std::vector<Element> canonical(std::vector<Element> xs, Assoc beta) const;

  // Plain τ-factorizations.
  const IrreducibilityReport& irreducibility(Element a);
  bool is_alpha(Element x, Grade g);
  const ElementSet& alpha_set(Grade g);
  /// Shortest τ-factorization of a, if any (capped search).
  std::optional<Factorization> find_factorization(Element a);
  /// Shortest τ-factorization of a into τ-α elements (capped search).
  std::optional<Factorization> find_alpha_factorization(Element a, Grade g);
  const LengthProfile& length_profile(Element a);
  const LengthProfile& alpha_length_profile(Element a, Grade g);
  std::optional<PumpCycle> unboundedness_certificate(Element a);
  EnumerationResult enumerate(Element a, Assoc beta, std::optional<std::size_t> cap = std::nullopt);
  /// Enumeration restricted to factors in `domain`.
  EnumerationResult enumerate_in(Element a, Assoc beta, const ElementSet& domain, std::size_t cap);
  /// τ-factors of a: elements occurring in some τ-factorization of a.
  const ElementSet& tau_factors(Element a);
  /// A τ-factorization a = λ·a·x1⋯xn with n >= 1, if one exists.
  std::optional<Factorization> self_absorbing_factorization(Element a);

  // τ-U-factorizations.
  /// One τ-U-factorization per realizable essential multiset, in canonical order.
  const std::vector<UFactorization>& u_factorizations(Element a);
  UEnumerationResult enumerate_u(Element a, Assoc beta);
  std::optional<UFactorization> atomic_u_factorization(Element a, Grade g);
  /// τ-U-α-factorizations, one per realizable α essential multiset.
  std::vector<UFactorization> alpha_u_factorizations(Element a, Grade g);
  std::vector<Element> essential_inventory(Element a, Assoc beta, std::optional<Grade> alpha = std::nullopt);
  /// A τ-U-factorization of a with a non-empty inessential part, if any.
  std::optional<UFactorization> u_factorization_with_inessential(Element a);
  const InessentialProfile& inessential_profile(Element a);
  /// Number of U-minimal τ-cliques (candidate essential parts) in R^#.
  std::size_t essential_candidates();

  const RelationReport& relation_report();

  struct Impl;

 private:
  std::unique_ptr<Impl> impl_;
};

// Free-function surface; each builds a fresh Analyzer.
EnumerationResult enumerate_tau_factorizations(const Ring& r, const TauRelation& t, Element a, Assoc beta,
                                               std::optional<std::size_t> cap = std::nullopt);
UEnumerationResult enumerate_tau_u_factorizations(const Ring& r, const TauRelation& t, Element a, Assoc beta);
std::optional<PumpCycle> unboundedness_certificate(const Ring& r, const TauRelation& t, Element a);
IrreducibilityReport irreducibility(const Ring& r, const TauRelation& t, Element a);
std::vector<Element> essential_divisor_inventory(const Ring& r, const TauRelation& t, Element a, Assoc beta,
                                                 std::optional<Grade> alpha = std::nullopt);
std::optional<UFactorization> atomic_u_factorization(const Ring& r, const TauRelation& t, Element a, Grade g);

}  // namespace tauu
