#include "tauu/properties.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace tauu {

namespace {

struct Name {
  Property p;
  std::string_view text;
};

constexpr std::array<Name, 19> kNames{{
    {Property::atomic, "atomic"},
    {Property::u_atomic, "U-atomic"},
    {Property::accp, "ACCP"},
    {Property::u_accp, "U-ACCP"},
    {Property::bfr, "BFR"},
    {Property::u_bfr, "U-BFR"},
    {Property::ffr, "FFR"},
    {Property::u_ffr, "U-FFR"},
    {Property::wffr, "WFFR"},
    {Property::u_wffr, "U-WFFR"},
    {Property::df, "df"},
    {Property::u_df, "U-df"},
    {Property::hfr, "HFR"},
    {Property::u_hfr, "U-HFR"},
    {Property::ufr, "UFR"},
    {Property::u_ufr, "U-UFR"},
    {Property::presimplifiable, "presimplifiable"},
    {Property::tau_presimplifiable, "tau-presimplifiable"},
    {Property::tau_u_presimplifiable, "tau-U-presimplifiable"},
}};

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

using Check = std::function<std::optional<PropertyWitness>(Element)>;

// Runs `fails` over every non-unit, nonzero ones first, and fills holds,
// holds_nonzero and the witness.
void quantify(const Ring& r, PropertyVerdict& v, const Check& fails) {
  for (auto a : r.r_sharp_list()) {
    if (auto w = fails(a)) {
      v.holds = v.holds_nonzero = false;
      v.witness = std::move(w);
      return;
    }
  }
  if (auto w = fails(r.zero())) {
    v.holds = false;
    v.witness = std::move(w);
  }
}

PropertyWitness witness_at(Element a, std::string detail) {
  PropertyWitness w;
  w.element = a;
  w.detail = std::move(detail);
  return w;
}

PropertyVerdict start(Property p, std::optional<Grade> alpha = std::nullopt, std::optional<Assoc> beta = std::nullopt) {
  PropertyVerdict v;
  v.property = p;
  v.alpha = alpha;
  v.beta = beta;
  return v;
}

void record_bound(PropertyVerdict& v, std::size_t value, Element a) {
  if (!v.bound || value > *v.bound) {
    v.bound = value;
    v.bound_element = a;
  }
}

// Longest chain (a_1) ⊊ (a_2) ⊊ ... where each a_{i+1} is a successor of a_i.
std::vector<Element> longest_chain(const Ring& r, const std::function<std::vector<Element>(Element)>& successors) {
  std::map<Element, std::vector<Element>> memo;
  std::function<const std::vector<Element>&(Element)> best = [&](Element a) -> const std::vector<Element>& {
    if (auto it = memo.find(a); it != memo.end()) return it->second;
    std::vector<Element> chain{a};
    for (auto b : successors(a)) {
      if (r.ideal_id(a) == r.ideal_id(b) || !r.divides(b, a)) continue;
      const auto& tail = best(b);
      if (tail.size() + 1 > chain.size()) {
        chain = {a};
        chain.insert(chain.end(), tail.begin(), tail.end());
      }
    }
    return memo[a] = std::move(chain);
  };
  std::vector<Element> out;
  for (auto a : r.non_units()) {
    const auto& c = best(a);
    if (c.size() > out.size()) out = c;
  }
  return out;
}

constexpr std::size_t kChainSearchLimit = 24;

std::string finite_note(std::string_view what) { return "holds trivially on finite rings: " + std::string(what); }

}  // namespace

std::string_view to_string(Property p) {
  for (const auto& n : kNames) {
    if (n.p == p) return n.text;
  }
  return "?";
}

Property parse_property(std::string_view text) {
  auto key = lower(text);
  std::replace(key.begin(), key.end(), '_', '-');
  if (key == "u-presimplifiable" || key == "tau-u-presimplifiable") return Property::tau_u_presimplifiable;
  if (key == "tau-presimplifiable") return Property::tau_presimplifiable;
  for (const auto& n : kNames) {
    if (lower(n.text) == key) return n.p;
  }
  if (key == "alpha" || key == "tau-alpha") return Property::atomic;
  if (key == "u-alpha") return Property::u_atomic;
  throw ParseError("unknown property '" + std::string(text) + "'");
}

bool uses_alpha(Property p) {
  switch (p) {
    case Property::atomic:
    case Property::u_atomic:
    case Property::df:
    case Property::u_df:
    case Property::hfr:
    case Property::u_hfr:
    case Property::ufr:
    case Property::u_ufr: return true;
    default: return false;
  }
}

bool uses_beta(Property p) {
  switch (p) {
    case Property::ffr:
    case Property::u_ffr:
    case Property::wffr:
    case Property::u_wffr:
    case Property::df:
    case Property::u_df:
    case Property::ufr:
    case Property::u_ufr: return true;
    default: return false;
  }
}

std::vector<Element> essential_divisors(Analyzer& an, Element a) {
  std::set<Element> out;
  for (const auto& uf : an.u_factorizations(a)) out.insert(uf.essential.begin(), uf.essential.end());
  return {out.begin(), out.end()};
}

PropertyVerdict check_atomicity(Analyzer& an, Grade alpha, bool u_form) {
  const auto& r = an.ring();
  auto v = start(u_form ? Property::u_atomic : Property::atomic, alpha);
  quantify(r, v, [&](Element a) -> std::optional<PropertyWitness> {
    if (u_form) {
      if (an.atomic_u_factorization(a, alpha)) return std::nullopt;
      return witness_at(a, "no τ-U-" + std::string(to_string(alpha)) + " factorization");
    }
    if (an.find_alpha_factorization(a, alpha)) return std::nullopt;
    return witness_at(a, "no τ-factorization into " + std::string(to_string(alpha)) + " elements");
  });
  if (r.r_sharp_list().empty()) {
    v.note = "R^# is empty: 0 has no factorization with factors in R^#; fails over all non-units, "
             "holds vacuously over nonzero non-units";
  }
  return v;
}

PropertyVerdict check_chain_props(Analyzer& an, Property which, Assoc beta) {
  const auto& r = an.ring();
  switch (which) {
    case Property::accp:
    case Property::u_accp: {
      auto v = start(which);
      v.note = finite_note("finitely many principal ideals, so chains terminate");
      if (r.size() <= kChainSearchLimit) {
        std::function<std::vector<Element>(Element)> succ;
        if (which == Property::accp) {
          succ = [&](Element a) { return an.tau_factors(a).to_vector(); };
        } else {
          succ = [&](Element a) { return essential_divisors(an, a); };
        }
        v.chain = longest_chain(r, succ);
        v.bound = v.chain.size();
        if (!v.chain.empty()) v.bound_element = v.chain.front();
        v.note += "; verified by explicit chain search";
      }
      return v;
    }
    case Property::bfr:
    case Property::ffr: {
      auto v = start(which, std::nullopt, which == Property::ffr ? std::optional<Assoc>(beta) : std::nullopt);
      quantify(r, v, [&](Element a) -> std::optional<PropertyWitness> {
        const auto& prof = an.length_profile(a);
        if (!prof.pump) {
          record_bound(v, prof.max_length.value_or(0), a);
          return std::nullopt;
        }
        auto w = witness_at(a, "τ-factorizations of unbounded length");
        w.pump = prof.pump;
        w.factorizations = {prof.pump->pumped(0), prof.pump->pumped(1), prof.pump->pumped(2)};
        return w;
      });
      if (which == Property::ffr) v.note = "on a finite ring FFR holds exactly when lengths are bounded";
      if (!v.holds) v.bound.reset();
      return v;
    }
    case Property::u_bfr:
    case Property::u_ffr: {
      auto v = start(which, std::nullopt, which == Property::u_ffr ? std::optional<Assoc>(beta) : std::nullopt);
      const auto height = r.ideal_chain_height();
      quantify(r, v, [&](Element a) -> std::optional<PropertyWitness> {
        auto res = an.enumerate_u(a, beta);
        if (which == Property::u_bfr) {
          record_bound(v, res.max_essential, a);
          if (res.max_essential > height) {
            return witness_at(a, "essential count exceeds the ideal chain height");
          }
        } else {
          record_bound(v, res.entries.size(), a);
        }
        return std::nullopt;
      });
      v.note = which == Property::u_bfr
                   ? finite_note("essential counts are bounded by the ideal chain height " + std::to_string(height))
                   : finite_note("finitely many essential multisets");
      return v;
    }
    default: throw InvalidInput("not a chain property: " + std::string(to_string(which)));
  }
}

PropertyVerdict check_counting_props(Analyzer& an, Property which, Grade alpha, Assoc beta) {
  const auto& r = an.ring();
  const bool with_alpha = which == Property::df || which == Property::u_df;
  auto v = start(which, with_alpha ? std::optional<Grade>(alpha) : std::nullopt, beta);
  quantify(r, v, [&](Element a) -> std::optional<PropertyWitness> {
    std::set<Element> classes;
    switch (which) {
      case Property::wffr:
      case Property::df:
        if (r.is_zero(a) || r.in_r_sharp(a)) {
          an.tau_factors(a).for_each([&](Element b) {
            if (which == Property::wffr || an.is_alpha(b, alpha)) classes.insert(an.beta_rep(b, beta));
          });
        }
        break;
      case Property::u_wffr:
      case Property::u_df: {
        auto inv = an.essential_inventory(a, beta, with_alpha ? std::optional<Grade>(alpha) : std::nullopt);
        classes.insert(inv.begin(), inv.end());
        break;
      }
      default: throw InvalidInput("not a counting property: " + std::string(to_string(which)));
    }
    record_bound(v, classes.size(), a);
    return std::nullopt;
  });
  v.note = finite_note("the carrier is finite");
  return v;
}

PropertyVerdict check_uniqueness_props(Analyzer& an, Property which, Grade alpha, Assoc beta) {
  const auto& r = an.ring();
  const bool u_form = which == Property::u_hfr || which == Property::u_ufr;
  const bool unique = which == Property::ufr || which == Property::u_ufr;
  if (!u_form && !unique && which != Property::hfr) {
    throw InvalidInput("not a uniqueness property: " + std::string(to_string(which)));
  }
  auto v = start(which, alpha, unique ? std::optional<Assoc>(beta) : std::nullopt);

  quantify(r, v, [&](Element a) -> std::optional<PropertyWitness> {
    if (u_form) {
      auto ufs = an.alpha_u_factorizations(a, alpha);
      if (ufs.empty()) return witness_at(a, "no τ-U-" + std::string(to_string(alpha)) + " factorization");
      for (const auto& uf : ufs) {
        if (uf.essential.size() != ufs.front().essential.size()) {
          auto w = witness_at(a, "τ-U-α-factorizations with different numbers of essential divisors");
          w.u_factorizations = {ufs.front(), uf};
          return w;
        }
        if (unique && an.canonical(uf.essential, beta) != an.canonical(ufs.front().essential, beta)) {
          auto w = witness_at(a, "essential divisors cannot be matched up to " + std::string(to_string(beta)));
          w.u_factorizations = {ufs.front(), uf};
          return w;
        }
      }
      return std::nullopt;
    }
    const auto& prof = an.alpha_length_profile(a, alpha);
    if (!prof.factorable) return witness_at(a, "no τ-factorization into " + std::string(to_string(alpha)) + " elements");
    if (prof.pump) {
      auto w = witness_at(a, "τ-α-factorizations of unbounded length");
      w.pump = prof.pump;
      w.factorizations = {prof.pump->pumped(0), prof.pump->pumped(1)};
      return w;
    }
    if (prof.min_length != *prof.max_length) {
      auto w = witness_at(a, "τ-α-factorizations of lengths " + std::to_string(prof.min_length) + " and " +
                                 std::to_string(*prof.max_length));
      Factorization shortest{r.one(), *prof.shortest};
      Factorization longest{r.one(), *prof.longest};
      shortest.unit = *r.unit_between(a, r.product_of(shortest.factors));
      longest.unit = *r.unit_between(a, r.product_of(longest.factors));
      w.factorizations = {shortest, longest};
      return w;
    }
    if (unique) {
      const auto res = an.enumerate_in(a, beta, an.alpha_set(alpha), *prof.max_length);
      if (res.entries.size() > 1) {
        auto w = witness_at(a, "τ-α-factorizations that cannot be matched up to " + std::string(to_string(beta)));
        w.factorizations = {res.entries[0].witness, res.entries[1].witness};
        return w;
      }
    }
    return std::nullopt;
  });
  return v;
}

PresimplifiableVerdicts check_presimplifiable_variants(Analyzer& an) {
  const auto& r = an.ring();
  PresimplifiableVerdicts out{start(Property::presimplifiable), start(Property::tau_presimplifiable),
                              start(Property::tau_u_presimplifiable)};

  const auto flags = ring_flags(r);
  if (!flags.presimplifiable) {
    auto& v = out.presimplifiable;
    v.holds = v.holds_nonzero = false;
    const auto [x, y] = *flags.presimplifiable_witness;
    auto w = witness_at(x, r.format(x) + " = " + r.format(x) + " * " + r.format(y) + " with " + r.format(y) +
                               " not a unit");
    w.factorizations = {Factorization{r.one(), {x, y}}};
    v.witness = std::move(w);
  }

  // Only elements of R^# can occur as τ-factors of themselves.
  quantify(r, out.tau_presimplifiable, [&](Element x) -> std::optional<PropertyWitness> {
    if (!r.in_r_sharp(x)) return std::nullopt;
    if (auto f = an.self_absorbing_factorization(x)) {
      auto w = witness_at(x, "τ-factorization containing the element itself with further non-unit factors");
      w.factorizations = {*f};
      return w;
    }
    return std::nullopt;
  });

  quantify(r, out.tau_u_presimplifiable, [&](Element x) -> std::optional<PropertyWitness> {
    if (!r.in_r_sharp(x)) return std::nullopt;
    if (auto uf = an.u_factorization_with_inessential(x)) {
      auto w = witness_at(x, "τ-U-factorization with a non-unit inessential divisor");
      w.u_factorizations = {*uf};
      return w;
    }
    return std::nullopt;
  });
  out.tau_u_presimplifiable.note = "quantified over nonzero non-units by definition";
  return out;
}

PropertyVerdict check_property(Analyzer& an, Property which, std::optional<Grade> alpha, std::optional<Assoc> beta) {
  const auto g = alpha.value_or(Grade::irreducible);
  const auto b = beta.value_or(Assoc::assoc);
  switch (which) {
    case Property::atomic: return check_atomicity(an, g, false);
    case Property::u_atomic: return check_atomicity(an, g, true);
    case Property::accp:
    case Property::u_accp:
    case Property::bfr:
    case Property::u_bfr:
    case Property::ffr:
    case Property::u_ffr: return check_chain_props(an, which, b);
    case Property::wffr:
    case Property::u_wffr:
    case Property::df:
    case Property::u_df: return check_counting_props(an, which, g, b);
    case Property::hfr:
    case Property::u_hfr:
    case Property::ufr:
    case Property::u_ufr: return check_uniqueness_props(an, which, g, b);
    case Property::presimplifiable: return check_presimplifiable_variants(an).presimplifiable;
    case Property::tau_presimplifiable: return check_presimplifiable_variants(an).tau_presimplifiable;
    case Property::tau_u_presimplifiable: return check_presimplifiable_variants(an).tau_u_presimplifiable;
  }
  throw InvalidInput("unknown property");
}

PropertyVerdict check_property(const Ring& r, const TauRelation& t, Property which, std::optional<Grade> alpha,
                               std::optional<Assoc> beta) {
  Analyzer an(r, t);
  return check_property(an, which, alpha, beta);
}

}  // namespace tauu
