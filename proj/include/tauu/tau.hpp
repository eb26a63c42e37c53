#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tauu/ring.hpp"

namespace tauu {

enum class TauKind { full, comaximal, pairs, product };

/// Textual relation description: `full`, `comaximal`, `empty`,
/// `pairs:<path>` or `prod(s1,...,sN)`.
struct TauSpec {
  TauKind kind = TauKind::full;
  std::string path;
  /// Pairs given directly instead of through a file.
  std::optional<std::vector<std::pair<Element, Element>>> pairs;
  std::vector<TauSpec> components;
  std::string source = "full";

  static TauSpec full();
  static TauSpec comaximal();
  static TauSpec from_pairs(std::vector<std::pair<Element, Element>> pairs, std::string label = "pairs");
  static TauSpec product(std::vector<TauSpec> components);
  static TauSpec parse(std::string_view text);
};

namespace detail {
struct TauData;
}

/// A symmetric relation on R^#.
///
/// Membership is precomputed as one neighbour set per element; queries
/// involving zero or a unit are false.
class TauRelation {
 public:
  const Ring& ring() const noexcept;
  TauKind kind() const noexcept;
  const std::string& name() const noexcept;

  bool holds(Element a, Element b) const noexcept;
  /// {y in R^# : x τ y}; empty when x is not in R^#.
  const ElementSet& neighbors(Element x) const noexcept;
  const std::vector<TauRelation>& components() const noexcept;
  /// Notes produced at construction (e.g. symmetrized input).
  const std::vector<std::string>& warnings() const noexcept;
  std::vector<std::pair<Element, Element>> pair_list() const;

  friend bool operator==(const TauRelation& a, const TauRelation& b) noexcept { return a.data_ == b.data_; }

 private:
  friend TauRelation make_tau(const Ring& r, const TauSpec& spec);
  explicit TauRelation(std::shared_ptr<const detail::TauData> d) : data_(std::move(d)) {}
  std::shared_ptr<const detail::TauData> data_;
};

TauRelation make_tau(const Ring& r, const TauSpec& spec);
TauRelation make_tau(const Ring& r, std::string_view spec_text);
bool tau_holds(const TauRelation& t, Element a, Element b);

struct Factorization;
struct UFactorization;

struct RelationReport {
  using Triple = std::array<Element, 3>;

  bool multiplicative = true;
  std::optional<Triple> multiplicative_witness;  // (a, b, c)
  bool divisive = true;
  std::optional<Triple> divisive_witness;  // (a, b, b')
  /// Indexed by Assoc: assoc, strong, very_strong.
  std::array<bool, 3> associate_preserving{true, true, true};
  std::array<std::optional<Triple>, 3> associate_preserving_witness;

  bool combinable = true;
  struct CombineWitness {
    std::vector<Element> factors;  // a τ-factorization with unit 1
    std::size_t position = 0;      // factors[position] * factors[position + 1] is combined
    std::string reason;
  };
  std::optional<CombineWitness> combinable_witness;

  bool refinable = true;
  struct RefineWitness {
    std::vector<Element> factors;  // outer τ-factorization with unit 1
    std::vector<std::vector<Element>> subs;  // τ-factor sequences replacing each factor
    std::vector<Element> sub_units;
    Element b, c;  // the incompatible pair in the refinement
  };
  std::optional<RefineWitness> refinable_witness;

  bool tau_u_refinable = true;
  struct URefineWitness {
    Element target_element;  // value of the outer factorization
    Element unit;
    std::vector<Element> inessential;
    std::vector<Element> essential;
    Element refined;  // essential divisor being refined
    Element sub_unit;
    std::vector<Element> sub_inessential;
    std::vector<Element> sub_essential;
    std::string reason;
  };
  std::optional<URefineWitness> tau_u_refinable_witness;
};

/// Decides every structural flag by exhaustive quantification.
RelationReport relation_report(const Ring& r, const TauRelation& t);

}  // namespace tauu
