#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "analyzer_impl.hpp"

namespace tauu {

std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::irreducible: return "irreducible";
    case Grade::strong: return "strongly_irreducible";
    case Grade::m: return "m_irreducible";
    case Grade::very_strong: return "very_strongly_irreducible";
  }
  return "?";
}

Grade parse_grade(std::string_view text) {
  if (text == "irreducible" || text == "irr" || text == "atomic") return Grade::irreducible;
  if (text == "strong" || text == "strongly_irreducible" || text == "strongly-irreducible") return Grade::strong;
  if (text == "m" || text == "m_irreducible" || text == "m-irreducible") return Grade::m;
  if (text == "very_strong" || text == "very-strong" || text == "very_strongly_irreducible") return Grade::very_strong;
  throw ParseError("unknown grade '" + std::string(text) + "' (expected irreducible|strong|m|very_strong)");
}

Factorization PumpCycle::pumped(std::size_t k) const {
  Factorization f{base.unit, {}};
  f.factors.assign(base.factors.begin(), base.factors.begin() + static_cast<std::ptrdiff_t>(prefix_length));
  for (std::size_t i = 0; i < k; ++i) f.factors.insert(f.factors.end(), cycle.begin(), cycle.end());
  f.factors.insert(f.factors.end(), base.factors.begin() + static_cast<std::ptrdiff_t>(prefix_length), base.factors.end());
  return f;
}

Analyzer::Analyzer(Ring r, TauRelation t, AnalyzerOptions options)
    : impl_(std::make_unique<Impl>(std::move(r), std::move(t), options)) {}
Analyzer::~Analyzer() = default;
Analyzer::Analyzer(Analyzer&&) noexcept = default;
Analyzer& Analyzer::operator=(Analyzer&&) noexcept = default;

const Ring& Analyzer::ring() const noexcept { return impl_->r; }
const TauRelation& Analyzer::tau() const noexcept { return impl_->t; }
std::size_t Analyzer::cap() const noexcept { return impl_->cap; }

Element Analyzer::beta_rep(Element x, Assoc beta) const {
  impl_->r.check(x);
  return impl_->reps[static_cast<std::size_t>(beta)][x.id];
}

std::vector<Element> Analyzer::canonical(std::vector<Element> xs, Assoc beta) const {
  for (auto& x : xs) x = beta_rep(x, beta);
  std::sort(xs.begin(), xs.end());
  return xs;
}

const IrreducibilityReport& Analyzer::irreducibility(Element a) {
  auto& I = *impl_;
  I.r.check(a);
  if (I.r.is_unit(a)) throw NotClassifiable(I.r.format(a) + " is a unit of " + I.r.name());
  if (I.irr[a.id]) return *I.irr[a.id];

  const auto& r = I.r;
  ElementSet not_assoc(I.n);
  ElementSet not_strong(I.n);
  for (auto x : r.r_sharp_list()) {
    if (r.ideal_id(x) != r.ideal_id(a)) not_assoc.insert(x);
    if (r.strong_rep(x) != r.strong_rep(a)) not_strong.insert(x);
  }
  auto search = [&](const ElementSet& domain, const ElementSet* mark, unsigned min_len) -> std::optional<Factorization> {
    detail::SearchSpec s{r.one(), I.full_w, &domain, mark, min_len, a, I.cap};
    if (auto path = I.bfs(s)) return I.to_factorization(a, *path);
    return std::nullopt;
  };

  IrreducibilityReport rep;
  rep.element = a;
  rep.witnesses[0] = search(not_assoc, nullptr, 1);
  rep.witnesses[1] = search(not_strong, nullptr, 1);
  rep.witnesses[2] = search(I.rsharp, &not_assoc, 1);
  rep.self_very_strong = r.associated(a, a, Assoc::very_strong);
  if (!rep.self_very_strong) {
    for (auto x : r.non_units()) {
      if (r.mul(x, a) == a) {
        rep.self_cofactor = x;
        break;
      }
    }
  }
  rep.witnesses[3] = search(I.rsharp, nullptr, 2);
  for (std::size_t g = 0; g < 3; ++g) rep.flags[g] = !rep.witnesses[g].has_value();
  rep.flags[3] = rep.self_very_strong && !rep.witnesses[3].has_value();
  I.irr[a.id] = std::move(rep);
  return *I.irr[a.id];
}

bool Analyzer::is_alpha(Element x, Grade g) { return irreducibility(x).holds(g); }

const ElementSet& Analyzer::alpha_set(Grade g) {
  auto& slot = impl_->alpha_sets[static_cast<std::size_t>(g)];
  if (!slot) {
    ElementSet s(impl_->n);
    for (auto x : impl_->r.r_sharp_list()) {
      if (is_alpha(x, g)) s.insert(x);
    }
    slot = std::move(s);
  }
  return *slot;
}

std::optional<Factorization> Analyzer::find_factorization(Element a) {
  auto& I = *impl_;
  I.require_nonunit(a, "find_factorization");
  detail::SearchSpec s{I.r.one(), I.full_w, &I.rsharp, nullptr, 1, a, I.cap};
  if (auto path = I.bfs(s)) return I.to_factorization(a, *path);
  return std::nullopt;
}

std::optional<Factorization> Analyzer::find_alpha_factorization(Element a, Grade g) {
  auto& I = *impl_;
  I.require_nonunit(a, "find_alpha_factorization");
  const auto& dom = alpha_set(g);
  detail::SearchSpec s{I.r.one(), I.full_w, &dom, nullptr, 1, a, I.cap};
  if (auto path = I.bfs(s)) return I.to_factorization(a, *path);
  return std::nullopt;
}

const LengthProfile& Analyzer::length_profile(Element a) {
  auto& I = *impl_;
  I.require_nonunit(a, "length_profile");
  if (!I.profiles[a.id]) I.profiles[a.id] = I.profile(I.r.one(), I.full_w, I.rsharp, a, false);
  return *I.profiles[a.id];
}

const LengthProfile& Analyzer::alpha_length_profile(Element a, Grade g) {
  auto& I = *impl_;
  I.require_nonunit(a, "alpha_length_profile");
  auto& slot = I.alpha_profiles[static_cast<std::size_t>(g)][a.id];
  if (!slot) {
    const auto& dom = alpha_set(g);
    slot = I.profile(I.r.one(), I.full_w, dom, a, false);
  }
  return *slot;
}

std::optional<PumpCycle> Analyzer::unboundedness_certificate(Element a) { return length_profile(a).pump; }

EnumerationResult Analyzer::enumerate(Element a, Assoc beta, std::optional<std::size_t> cap) {
  impl_->require_nonunit(a, "enumerate_tau_factorizations");
  const auto c = cap ? *cap : impl_->cap;
  auto res = enumerate_in(a, beta, impl_->rsharp, c);
  const auto& prof = length_profile(a);
  res.unbounded_witness = prof.pump;
  res.max_length = prof.factorable ? prof.max_length : std::optional<std::size_t>(0);
  // Past |R|+2 every longer factorization contracts onto a listed one, so the
  // capped listing is complete even when lengths are unbounded.
  res.exact = !res.truncated && ((res.max_length && *res.max_length <= c) || c >= impl_->r.size() + 2);
  return res;
}

EnumerationResult Analyzer::enumerate_in(Element a, Assoc beta, const ElementSet& domain, std::size_t cap) {
  auto& I = *impl_;
  I.require_nonunit(a, "enumerate_tau_factorizations");
  const auto& r = I.r;
  const auto& rep = I.reps[static_cast<std::size_t>(beta)];

  // β-classes with at least one usable member, ordered by representative.
  std::map<Element, std::vector<Element>> by_class;
  for (auto x : r.r_sharp_list()) {
    if (domain.contains(x) && r.divides(x, a)) by_class[rep[x.id]].push_back(x);
  }
  std::vector<std::pair<Element, std::vector<Element>>> classes(by_class.begin(), by_class.end());

  struct St {
    Element p;
    std::uint32_t w;
    std::vector<Element> path;
  };
  EnumerationResult res;
  res.cap_used = cap;
  const auto arep = r.strong_rep(a);
  std::size_t budget = I.opt.enumeration_budget;
  std::vector<Element> key;

  std::function<void(std::size_t, const std::vector<St>&)> dfs = [&](std::size_t from, const std::vector<St>& states) {
    if (!key.empty()) {
      for (const auto& s : states) {
        if (r.strong_rep(s.p) == arep) {
          res.entries.push_back({key, I.to_factorization(a, s.path)});
          break;
        }
      }
    }
    if (key.size() >= cap) return;
    for (std::size_t c = from; c < classes.size(); ++c) {
      if (budget == 0) {
        res.truncated = true;
        return;
      }
      --budget;
      std::vector<St> next;
      std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
      for (const auto& s : states) {
        for (auto x : classes[c].second) {
          if (!I.sets[s.w].contains(x)) continue;
          const auto p = r.mul(s.p, x);
          if (!r.divides(p, a)) continue;
          const auto nw = I.step(s.w, x);
          if (!seen.emplace(p.id, nw).second) continue;
          auto path = s.path;
          path.push_back(x);
          next.push_back({p, nw, std::move(path)});
        }
      }
      if (next.empty()) continue;
      key.push_back(classes[c].first);
      dfs(c, next);
      key.pop_back();
    }
  };
  dfs(0, {St{r.one(), I.full_w, {}}});
  std::sort(res.entries.begin(), res.entries.end(), [](const EnumerationEntry& x, const EnumerationEntry& y) {
    if (x.key.size() != y.key.size()) return x.key.size() < y.key.size();
    return x.key < y.key;
  });
  res.exact = !res.truncated;
  return res;
}

const ElementSet& Analyzer::tau_factors(Element a) {
  impl_->require_nonunit(a, "tau_factors");
  impl_->build_tf();
  return impl_->tf[a.id];
}

std::optional<Factorization> Analyzer::self_absorbing_factorization(Element a) {
  auto& I = *impl_;
  I.r.check(a);
  if (!I.r.in_r_sharp(a)) return std::nullopt;
  I.build_tf();
  const auto& c = *I.tf_closures[a.id];
  auto node = c.find(I.r, a, true);
  if (!node) return std::nullopt;
  std::vector<Element> path{a};
  auto rest = c.path(*node);
  path.insert(path.end(), rest.begin(), rest.end());
  return I.to_factorization(a, path);
}

const std::vector<UFactorization>& Analyzer::u_factorizations(Element a) {
  auto& I = *impl_;
  I.require_nonunit(a, "enumerate_tau_u_factorizations");
  if (!I.ufs[a.id]) {
    I.build_atlas();
    std::vector<UFactorization> out;
    for (auto idx : I.atlas_by_rep[I.r.strong_rep(a).id]) out.push_back(I.entry_witness(I.atlas[idx], a, false));
    I.ufs[a.id] = std::move(out);
  }
  return *I.ufs[a.id];
}

UEnumerationResult Analyzer::enumerate_u(Element a, Assoc beta) {
  UEnumerationResult res;
  res.cap_used = impl_->cap > 0 ? impl_->cap - 1 : 0;
  std::set<std::vector<Element>> seen;
  for (const auto& uf : u_factorizations(a)) {
    auto key = canonical(uf.essential, beta);
    res.max_essential = std::max(res.max_essential, uf.essential.size());
    if (seen.insert(key).second) res.entries.push_back({std::move(key), uf});
  }
  std::sort(res.entries.begin(), res.entries.end(), [](const UEnumerationEntry& x, const UEnumerationEntry& y) {
    if (x.key.size() != y.key.size()) return x.key.size() < y.key.size();
    return x.key < y.key;
  });
  return res;
}

std::optional<UFactorization> Analyzer::atomic_u_factorization(Element a, Grade g) {
  const auto& dom = alpha_set(g);
  if (impl_->r.in_r_sharp(a) && dom.contains(a)) return UFactorization{impl_->r.one(), {}, {a}};
  for (const auto& uf : u_factorizations(a)) {
    if (std::all_of(uf.essential.begin(), uf.essential.end(), [&](Element b) { return dom.contains(b); })) return uf;
  }
  return std::nullopt;
}

std::vector<UFactorization> Analyzer::alpha_u_factorizations(Element a, Grade g) {
  const auto& dom = alpha_set(g);
  std::vector<UFactorization> out;
  for (const auto& uf : u_factorizations(a)) {
    if (std::all_of(uf.essential.begin(), uf.essential.end(), [&](Element b) { return dom.contains(b); })) {
      out.push_back(uf);
    }
  }
  return out;
}

std::vector<Element> Analyzer::essential_inventory(Element a, Assoc beta, std::optional<Grade> alpha) {
  std::set<Element> out;
  for (const auto& uf : u_factorizations(a)) {
    for (auto b : uf.essential) {
      if (!alpha || is_alpha(b, *alpha)) out.insert(beta_rep(b, beta));
    }
  }
  return {out.begin(), out.end()};
}

std::optional<UFactorization> Analyzer::u_factorization_with_inessential(Element a) {
  auto& I = *impl_;
  I.require_nonunit(a, "u_factorization_with_inessential");
  I.build_atlas();
  const auto rep = I.r.strong_rep(a);
  for (auto idx : I.atlas_by_rep[rep.id]) {
    const auto& e = I.atlas[idx];
    if (e.completions->reach_used.contains(rep)) return I.entry_witness(e, a, true);
  }
  return std::nullopt;
}

const InessentialProfile& Analyzer::inessential_profile(Element a) {
  auto& I = *impl_;
  I.require_nonunit(a, "inessential_profile");
  if (I.iprofiles[a.id]) return *I.iprofiles[a.id];
  I.build_atlas();
  InessentialProfile out;
  out.max_inessential = 0;
  bool unbounded = false;
  for (auto idx : I.atlas_by_rep[I.r.strong_rep(a).id]) {
    const auto& e = I.atlas[idx];
    auto prof = I.profile(e.product, e.w, I.x_set(e.product), a, true);
    if (!prof.factorable) continue;
    if (prof.pump) {
      if (!unbounded) {
        unbounded = true;
        UFactorization uf{I.r.one(), prof.pump->base.factors, e.essential};
        uf.unit = *I.r.unit_between(a, I.r.mul(e.product, I.r.product_of(uf.inessential)));
        out.pump_base = uf;
        out.pump_cycle = prof.pump->cycle;
        out.max_inessential.reset();
      }
      continue;
    }
    if (!unbounded && *prof.max_length >= *out.max_inessential) {
      if (!out.longest || *prof.max_length > *out.max_inessential) {
        UFactorization uf{I.r.one(), *prof.longest, e.essential};
        uf.unit = *I.r.unit_between(a, I.r.mul(e.product, I.r.product_of(uf.inessential)));
        out.longest = uf;
      }
      out.max_inessential = *prof.max_length;
    }
  }
  I.iprofiles[a.id] = std::move(out);
  return *I.iprofiles[a.id];
}

std::size_t Analyzer::essential_candidates() {
  impl_->build_atlas();
  return impl_->atlas.size();
}

EnumerationResult enumerate_tau_factorizations(const Ring& r, const TauRelation& t, Element a, Assoc beta,
                                               std::optional<std::size_t> cap) {
  Analyzer an(r, t);
  return an.enumerate(a, beta, cap);
}

UEnumerationResult enumerate_tau_u_factorizations(const Ring& r, const TauRelation& t, Element a, Assoc beta) {
  Analyzer an(r, t);
  return an.enumerate_u(a, beta);
}

std::optional<PumpCycle> unboundedness_certificate(const Ring& r, const TauRelation& t, Element a) {
  Analyzer an(r, t);
  return an.unboundedness_certificate(a);
}

IrreducibilityReport irreducibility(const Ring& r, const TauRelation& t, Element a) {
  Analyzer an(r, t);
  return an.irreducibility(a);
}

std::vector<Element> essential_divisor_inventory(const Ring& r, const TauRelation& t, Element a, Assoc beta,
                                                 std::optional<Grade> alpha) {
  Analyzer an(r, t);
  return an.essential_inventory(a, beta, alpha);
}

std::optional<UFactorization> atomic_u_factorization(const Ring& r, const TauRelation& t, Element a, Grade g) {
  Analyzer an(r, t);
  return an.atomic_u_factorization(a, g);
}

}  // namespace tauu
