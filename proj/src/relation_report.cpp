#include <algorithm>

#include "analyzer_impl.hpp"

namespace tauu {

namespace {

using Impl = Analyzer::Impl;

void scan_triples(const Ring& r, const TauRelation& t, RelationReport& rep) {
  const auto& rs = r.r_sharp_list();
  for (auto a : rs) {
    for (auto b : rs) {
      if (!t.holds(a, b)) continue;
      for (auto c : rs) {
        // multiplicative: a τ b and a τ c imply a τ bc
        if (rep.multiplicative && t.holds(a, c) && !t.holds(a, r.mul(b, c))) {
          rep.multiplicative = false;
          rep.multiplicative_witness = RelationReport::Triple{a, b, c};
        }
        // divisive: a τ b and c | b imply a τ c
        if (rep.divisive && r.divides(c, b) && !t.holds(a, c)) {
          rep.divisive = false;
          rep.divisive_witness = RelationReport::Triple{a, b, c};
        }
        for (std::size_t m = 0; m < 3; ++m) {
          if (rep.associate_preserving[m] && r.associated(b, c, kAssocs[m]) && !t.holds(a, c)) {
            rep.associate_preserving[m] = false;
            rep.associate_preserving_witness[m] = RelationReport::Triple{a, b, c};
          }
        }
      }
    }
  }
}

// Any τ-clique is a τ-factorization of its product, and by symmetry any two
// of its factors can be made adjacent; so pairs and triples decide it.
void scan_combinable(const Ring& r, const TauRelation& t, RelationReport& rep) {
  const auto& rs = r.r_sharp_list();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = i; j < rs.size(); ++j) {
      const auto x = rs[i];
      const auto y = rs[j];
      if (!t.holds(x, y)) continue;
      const auto xy = r.mul(x, y);
      if (!r.in_r_sharp(xy)) {
        rep.combinable = false;
        rep.combinable_witness = {{x, y}, 0, "combined factor " + r.format(xy) + " is not a nonzero non-unit"};
        return;
      }
      for (auto z : rs) {
        if (t.holds(x, z) && t.holds(y, z) && !t.holds(xy, z)) {
          rep.combinable = false;
          rep.combinable_witness = {
              {x, y, z}, 0, "combined factor " + r.format(xy) + " is not τ-related to " + r.format(z)};
          return;
        }
      }
    }
  }
}

Factorization factorization_containing(Impl& I, Element x, Element b) {
  const auto& c = *I.tf_closures[b.id];
  const auto node = c.find(I.r, x, false);
  std::vector<Element> path{b};
  const auto rest = c.path(*node);
  path.insert(path.end(), rest.begin(), rest.end());
  return I.to_factorization(x, path);
}

// A refinement only adds cross pairs between the replacements of two
// distinct outer factors, so a violation lives in a two-factor outer
// factorization x·y with b | τ x and c | τ y.
void scan_refinable(Impl& I, RelationReport& rep) {
  const auto& r = I.r;
  const auto& t = I.t;
  I.build_tf();
  const auto& rs = r.r_sharp_list();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = i; j < rs.size(); ++j) {
      const auto x = rs[i];
      const auto y = rs[j];
      if (!t.holds(x, y)) continue;
      std::optional<std::pair<Element, Element>> bad;
      I.tf[x.id].for_each([&](Element b) {
        if (bad) return;
        I.tf[y.id].for_each([&](Element c) {
          if (!bad && !t.holds(b, c)) bad = std::make_pair(b, c);
        });
      });
      if (!bad) continue;
      const auto fx = factorization_containing(I, x, bad->first);
      const auto fy = factorization_containing(I, y, bad->second);
      rep.refinable = false;
      rep.refinable_witness = RelationReport::RefineWitness{{x, y}, {fx.factors, fy.factors}, {fx.unit, fy.unit},
                                                             bad->first, bad->second};
      return;
    }
  }
}

struct InnerChoice {
  Element y;                  // offending inner factor
  bool inessential = false;   // y sits in the inner inessential part
};

void scan_u_refinable(Impl& I, RelationReport& rep) {
  const auto& r = I.r;
  const auto& t = I.t;
  I.build_atlas();
  const std::size_t depth = I.cap > 1 ? I.cap - 2 : 0;

  // Inner τ-U-factorization of b with essential part `inner` whose
  // inessential part contains y (or any, when y is not given).
  auto inner_witness = [&](const detail::AtlasEntry& inner, Element b, std::optional<Element> y) {
    if (!y) return I.entry_witness(inner, b, false);
    const auto& dom = I.x_set(inner.product);
    const auto p = r.mul(inner.product, *y);
    const auto& c = I.closure(p, I.step(inner.w, *y), dom, r.ideal_id(inner.product) + 1, depth);
    const auto node = c.find(r, b, false);
    UFactorization uf{r.one(), {*y}, inner.essential};
    const auto rest = c.path(*node);
    uf.inessential.insert(uf.inessential.end(), rest.begin(), rest.end());
    uf.unit = *r.unit_between(b, r.mul(inner.product, r.product_of(uf.inessential)));
    return uf;
  };

  auto fail = [&](const detail::AtlasEntry& outer, std::optional<Element> outer_iness, std::size_t bi,
                  const detail::AtlasEntry& inner, std::optional<Element> inner_iness, std::string reason) {
    RelationReport::URefineWitness w;
    w.unit = r.one();
    if (outer_iness) w.inessential = {*outer_iness};
    w.essential = outer.essential;
    w.target_element = r.mul(outer.product, r.product_of(w.inessential));
    w.refined = outer.essential[bi];
    const auto sub = inner_witness(inner, w.refined, inner_iness);
    w.sub_unit = sub.unit;
    w.sub_inessential = sub.inessential;
    w.sub_essential = sub.essential;
    w.reason = std::move(reason);
    rep.tau_u_refinable = false;
    rep.tau_u_refinable_witness = std::move(w);
  };

  for (const auto& outer : I.atlas) {
    const auto& e = outer.essential;
    const auto& xb = I.x_set(outer.product);
    const auto outer_iness = xb & I.sets[outer.w];
    for (std::size_t bi = 0; bi < e.size(); ++bi) {
      if (bi > 0 && e[bi] == e[bi - 1]) continue;
      const auto b = e[bi];
      std::vector<Element> rest(e.begin(), e.end());
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(bi));

      for (auto idx : I.atlas_by_rep[r.strong_rep(b).id]) {
        const auto& inner = I.atlas[idx];
        // (iii) the composite essential part must stay U-minimal
        auto merged = rest;
        merged.insert(merged.end(), inner.essential.begin(), inner.essential.end());
        std::sort(merged.begin(), merged.end());
        if (!I.essential_ok(merged)) {
          fail(outer, std::nullopt, bi, inner, std::nullopt,
               "composite essential part " + render(r, UFactorization{r.one(), {}, merged}) +
                   " violates condition (2)");
          return;
        }

        // Candidate inner factors: essential ones, then every possible inessential one.
        std::vector<InnerChoice> ys;
        for (auto d : inner.essential) ys.push_back({d, false});
        const auto& dom = I.x_set(inner.product);
        (dom & I.sets[inner.w]).for_each([&](Element y) {
          const auto p = r.mul(inner.product, y);
          const auto& c = I.closure(p, I.step(inner.w, y), dom, r.ideal_id(inner.product) + 1, depth);
          if (c.reach_any.contains(r.strong_rep(b))) ys.push_back({y, true});
        });

        for (const auto& [y, iness] : ys) {
          const auto inner_iness = iness ? std::optional<Element>(y) : std::nullopt;
          // (ii) a new inessential divisor must fix the outer essential ideal
          if (iness && r.ideal_id(r.mul(y, outer.product)) != r.ideal_id(outer.product)) {
            fail(outer, std::nullopt, bi, inner, inner_iness,
                 "inner inessential divisor " + r.format(y) + " shrinks the composite essential ideal");
            return;
          }
          // (i) τ between the inner factor and the surviving outer factors
          for (auto z : rest) {
            if (!t.holds(z, y)) {
              fail(outer, std::nullopt, bi, inner, inner_iness,
                   "factors " + r.format(z) + " and " + r.format(y) + " are not τ-related");
              return;
            }
          }
          std::optional<Element> bad;
          outer_iness.for_each([&](Element x) {
            if (!bad && !t.holds(x, y)) bad = x;
          });
          if (bad) {
            fail(outer, bad, bi, inner, inner_iness,
                 "factors " + r.format(*bad) + " and " + r.format(y) + " are not τ-related");
            return;
          }
        }
      }
    }
  }
}

}  // namespace

const RelationReport& Analyzer::relation_report() {
  auto& I = *impl_;
  if (!I.report) {
    RelationReport rep;
    scan_triples(I.r, I.t, rep);
    scan_combinable(I.r, I.t, rep);
    scan_refinable(I, rep);
    scan_u_refinable(I, rep);
    I.report = std::move(rep);
  }
  return *I.report;
}

RelationReport relation_report(const Ring& r, const TauRelation& t) {
  Analyzer an(r, t);
  return an.relation_report();
}

}  // namespace tauu
