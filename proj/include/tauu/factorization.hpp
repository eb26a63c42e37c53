#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tauu/ring.hpp"
#include "tauu/tau.hpp"

namespace tauu {

/// unit · f1 · ... · fn.
struct Factorization {
  Element unit;
  std::vector<Element> factors;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// unit · a1 · ... · an ⌈ b1 · ... · bm ⌉.
struct UFactorization {
  Element unit;
  std::vector<Element> inessential;
  std::vector<Element> essential;

  /// unit, then inessential, then essential divisors.
  Factorization flatten() const;

  friend bool operator==(const UFactorization&, const UFactorization&) = default;
};

/// Outcome of a check; `reason` names the first violated clause.
struct Diagnosis {
  bool ok = true;
  std::string reason;
  /// The offending factor, when the failure is attributable to one.
  std::optional<Element> culprit;

  explicit operator bool() const noexcept { return ok; }
  static Diagnosis pass() { return {}; }
  static Diagnosis fail(std::string why, std::optional<Element> culprit = std::nullopt) {
    return {false, std::move(why), culprit};
  }
};

Element evaluate(const Ring& r, const Factorization& f);
Element evaluate(const Ring& r, const UFactorization& uf);

Diagnosis check_tau_factorization(const Ring& r, const TauRelation& t, Element a, const Factorization& f);
/// Conditions (1) and (2) plus m >= 1 and factors in R^#; ignores τ and the value.
Diagnosis check_u_conditions(const Ring& r, const UFactorization& uf);
Diagnosis check_u_factorization(const Ring& r, const TauRelation& t, Element a, const UFactorization& uf);

/// Every (inessential, essential) partition of f's factor multiset satisfying
/// both U-conditions. Parts are sorted; the list is sorted and duplicate-free.
std::vector<UFactorization> u_split(const Ring& r, const Factorization& f);

/// Deterministic rearrangement: scan left to right, moving any factor that is
/// inessential relative to the rest, until nothing moves.
UFactorization to_u_factorization(const Ring& r, const Factorization& f);

struct RefinementResult {
  Factorization result;
  bool valid = false;
  std::string reason;
};

/// Replaces f.factors[position] (0-based) by the factors of `sub`; units
/// collect into the leading unit.
RefinementResult apply_refinement(const Ring& r, const TauRelation& t, const Factorization& f, std::size_t position,
                                  const Factorization& sub);

struct URefinementResult {
  UFactorization result;
  bool valid = false;
  std::string reason;
  std::optional<Element> culprit;
};

/// Refines one copy of the essential divisor `target` by `sub`: units merge,
/// sub's inessential divisors join the inessential part and sub's essential
/// divisors take the target's place.
URefinementResult apply_u_refinement(const Ring& r, const TauRelation& t, const UFactorization& uf, Element target,
                                     const UFactorization& sub);

/// `u * f1 * ... * fn`
std::string render(const Ring& r, const Factorization& f);
/// `u * a1 * ... * an [ b1 * ... * bm ]`
std::string render(const Ring& r, const UFactorization& uf);
Factorization parse_factorization(const Ring& r, std::string_view text);
UFactorization parse_u_factorization(const Ring& r, std::string_view text);

}  // namespace tauu
