#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauu/analyzer.hpp"

namespace tauu {

/// Ring-level factorization properties. Plain forms quantify over
/// τ-factorizations, U-forms over τ-U-factorizations.
enum class Property {
  atomic,
  u_atomic,
  accp,
  u_accp,
  bfr,
  u_bfr,
  ffr,
  u_ffr,
  wffr,
  u_wffr,
  df,
  u_df,
  hfr,
  u_hfr,
  ufr,
  u_ufr,
  presimplifiable,
  tau_presimplifiable,
  tau_u_presimplifiable,
};

inline constexpr std::array<Property, 19> kProperties{
    Property::atomic, Property::u_atomic, Property::accp,  Property::u_accp, Property::bfr,
    Property::u_bfr,  Property::ffr,      Property::u_ffr, Property::wffr,   Property::u_wffr,
    Property::df,     Property::u_df,     Property::hfr,   Property::u_hfr,  Property::ufr,
    Property::u_ufr,  Property::presimplifiable, Property::tau_presimplifiable, Property::tau_u_presimplifiable};

std::string_view to_string(Property p);
Property parse_property(std::string_view text);
bool uses_alpha(Property p);
bool uses_beta(Property p);

struct PropertyWitness {
  Element element;
  std::vector<Factorization> factorizations;
  std::vector<UFactorization> u_factorizations;
  std::optional<PumpCycle> pump;
  std::vector<Element> chain;
  std::string detail;
};

struct PropertyVerdict {
  Property property = Property::atomic;
  std::optional<Grade> alpha;
  std::optional<Assoc> beta;
  /// Quantified over every non-unit, zero included.
  bool holds = true;
  /// Quantified over the nonzero non-units only.
  bool holds_nonzero = true;
  /// First failing element; a nonzero one when any nonzero element fails.
  std::optional<PropertyWitness> witness;
  std::string note;
  /// Bound or count attached to the verdict (chain length, essential count, ...).
  std::optional<std::size_t> bound;
  std::optional<Element> bound_element;
  /// Longest linked chain found by the ACCP searches.
  std::vector<Element> chain;
};

PropertyVerdict check_atomicity(Analyzer& an, Grade alpha, bool u_form);
/// ACCP, U-ACCP, BFR, U-BFR, FFR or U-FFR.
PropertyVerdict check_chain_props(Analyzer& an, Property which, Assoc beta = Assoc::assoc);
/// WFFR, U-WFFR, df or U-df.
PropertyVerdict check_counting_props(Analyzer& an, Property which, Grade alpha = Grade::irreducible,
                                     Assoc beta = Assoc::assoc);
/// HFR, U-HFR, UFR or U-UFR.
PropertyVerdict check_uniqueness_props(Analyzer& an, Property which, Grade alpha, Assoc beta = Assoc::assoc);

struct PresimplifiableVerdicts {
  PropertyVerdict presimplifiable;
  PropertyVerdict tau_presimplifiable;
  PropertyVerdict tau_u_presimplifiable;
};
PresimplifiableVerdicts check_presimplifiable_variants(Analyzer& an);

/// Dispatches on `which`; alpha and beta default to irreducible and assoc.
PropertyVerdict check_property(Analyzer& an, Property which, std::optional<Grade> alpha = std::nullopt,
                               std::optional<Assoc> beta = std::nullopt);
PropertyVerdict check_property(const Ring& r, const TauRelation& t, Property which,
                               std::optional<Grade> alpha = std::nullopt, std::optional<Assoc> beta = std::nullopt);

/// Essential divisors of a across its τ-U-factorizations (actual elements, not classes).
std::vector<Element> essential_divisors(Analyzer& an, Element a);

}  // namespace tauu
