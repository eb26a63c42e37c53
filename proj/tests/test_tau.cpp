#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "oracle.hpp"
#include "tauu/analyzer.hpp"
#include "tauu/tau.hpp"

using namespace tauu;
using oracle::E;
using oracle::Multiset;

namespace {

/// Random symmetric relation on R^#; each unordered pair (self pairs included) kept with probability 1/2.
TauRelation random_pairs(const Ring& r, std::uint32_t seed) {
  std::mt19937 gen(seed);
  std::bernoulli_distribution keep(0.5);
  std::vector<std::pair<Element, Element>> pairs;
  const auto& rs = r.r_sharp_list();
  for (std::size_t i = 0; i < rs.size(); ++i) {
    for (std::size_t j = i; j < rs.size(); ++j) {
      if (keep(gen)) pairs.emplace_back(rs[i], rs[j]);
    }
  }
  return make_tau(r, TauSpec::from_pairs(pairs, "random" + std::to_string(seed)));
}

struct Case {
  std::string ring;
  std::string tau;  // "random<seed>" for random_pairs
};

TauRelation build(const Ring& r, const std::string& tau) {
  if (tau.rfind("random", 0) == 0) return random_pairs(r, static_cast<std::uint32_t>(std::stoul(tau.substr(6))));
  return make_tau(r, tau);
}

std::vector<Case> small_cases() {
  std::vector<Case> out;
  for (const auto* ring : {"Z4", "Z6", "Z8", "Z9", "Z12", "Z2xZ4"}) {
    for (const auto* tau : {"full", "comaximal", "empty", "random1", "random2", "random3"}) out.push_back({ring, tau});
  }
  return out;
}

/// Reference flags decided by quantifying over factorizations of length <= len.
struct OracleReport {
  bool multiplicative = true, divisive = true, combinable = true, refinable = true, tau_u_refinable = true;
  std::array<bool, 3> assoc_preserving{true, true, true};
};

bool pairwise(const TauRelation& t, const Multiset& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (!t.holds(xs[i], xs[j])) return false;
    }
  }
  return true;
}

OracleReport reference_report(const Ring& r, const TauRelation& t, std::size_t len) {
  oracle::Model m(r);
  OracleReport o;
  const auto sharp = m.sharp();
  for (auto a : sharp) {
    for (auto b : sharp) {
      if (!t.holds(a, b)) continue;
      for (auto c : sharp) {
        if (t.holds(a, c) && !t.holds(a, r.mul(b, c))) o.multiplicative = false;
        if (m.ideal[c.id][b.id] && !t.holds(a, c)) o.divisive = false;
        for (auto mode : kAssocs) {
          if (m.associated(b, c, mode) && !t.holds(a, c)) o.assoc_preserving[static_cast<std::size_t>(mode)] = false;
        }
      }
    }
  }

  std::vector<std::vector<Multiset>> facts(r.size());
  for (auto a : m.non_units()) facts[a.id] = oracle::factorizations(m, t, a, len);

  for (auto a : m.non_units()) {
    for (const auto& f : facts[a.id]) {
      // Combine any two positions.
      for (std::size_t i = 0; i < f.size(); ++i) {
        for (std::size_t j = i + 1; j < f.size(); ++j) {
          Multiset g;
          for (std::size_t k = 0; k < f.size(); ++k) {
            if (k != i && k != j) g.push_back(f[k]);
          }
          g.push_back(r.mul(f[i], f[j]));
          bool ok = m.in_sharp(g.back()) && pairwise(t, g);
          if (!ok) o.combinable = false;
        }
      }
      // Refine one or two factors simultaneously.
      for (std::size_t i = 0; i < f.size() && o.refinable; ++i) {
        for (std::size_t j = i; j < f.size() && o.refinable; ++j) {
          for (const auto& si : facts[f[i].id]) {
            const auto& sjs = i == j ? std::vector<Multiset>{{f[j]}} : facts[f[j].id];
            for (const auto& sj : sjs) {
              Multiset g;
              for (std::size_t k = 0; k < f.size(); ++k) {
                if (k != i && k != j) g.push_back(f[k]);
              }
              g.insert(g.end(), si.begin(), si.end());
              if (i != j) g.insert(g.end(), sj.begin(), sj.end());
              if (!pairwise(t, g)) o.refinable = false;
            }
          }
        }
      }
      // τ-U-refine one essential divisor.
      for (const auto& [iness, ess] : oracle::u_splits(m, f)) {
        for (std::size_t j = 0; j < ess.size() && o.tau_u_refinable; ++j) {
          for (const auto& sf : facts[ess[j].id]) {
            for (const auto& [siness, sess] : oracle::u_splits(m, sf)) {
              Multiset ni = iness, ne;
              ni.insert(ni.end(), siness.begin(), siness.end());
              for (std::size_t k = 0; k < ess.size(); ++k) {
                if (k != j) ne.push_back(ess[k]);
              }
              ne.insert(ne.end(), sess.begin(), sess.end());
              Multiset all = ni;
              all.insert(all.end(), ne.begin(), ne.end());
              if (!pairwise(t, all) || !m.u_conditions(ni, ne)) o.tau_u_refinable = false;
            }
          }
        }
      }
    }
  }
  return o;
}

}  // namespace

TEST(MakeTau, WorkedExamples) {
  auto z6 = make_ring("Z6");
  auto co = make_tau(z6, "comaximal");
  EXPECT_TRUE(tau_holds(co, E(2), E(3)));
  EXPECT_FALSE(tau_holds(co, E(2), E(4)));

  auto p = make_ring("Z6xZ8");
  auto tx = make_tau(p, "prod(full,full)");
  EXPECT_TRUE(tau_holds(tx, p.parse_element("(3,1)"), p.parse_element("(3,3)")));

  for (const auto* spec : {"Z6", "Z20", "Z2xZ4"}) {
    auto r = make_ring(spec);
    auto full = make_tau(r, "full");
    for (auto a : r.r_sharp_list())
      for (auto b : r.r_sharp_list()) EXPECT_TRUE(tau_holds(full, a, b));
  }
}

TEST(TauHolds, WorkedExamples) {
  auto z20 = make_ring("Z20");
  EXPECT_TRUE(tau_holds(make_tau(z20, "full"), E(10), E(10)));
  auto z6 = make_ring("Z6");
  EXPECT_FALSE(tau_holds(make_tau(z6, "full"), E(1), E(2)));
  EXPECT_FALSE(tau_holds(make_tau(z6, "full"), E(0), E(2)));
  auto pairs = make_tau(z6, TauSpec::from_pairs({{E(2), E(3)}}));
  EXPECT_TRUE(tau_holds(pairs, E(3), E(2)));
  EXPECT_FALSE(tau_holds(pairs, E(2), E(2)));
}

TEST(MakeTau, PairsFileIsSymmetrizedWithWarning) {
  auto path = std::string(::testing::TempDir()) + "z6.pairs";
  {
    std::ofstream out(path);
    out << "# one direction only\n2 3\n4 4\n";
  }
  auto z6 = make_ring("Z6");
  auto t = make_tau(z6, "pairs:" + path);
  EXPECT_TRUE(t.holds(E(3), E(2)));
  EXPECT_TRUE(t.holds(E(4), E(4)));
  EXPECT_FALSE(t.holds(E(2), E(4)));
  EXPECT_FALSE(t.warnings().empty());
}

TEST(MakeTau, Errors) {
  auto z6 = make_ring("Z6");
  EXPECT_THROW(make_tau(z6, TauSpec::from_pairs({{E(1), E(2)}})), InvalidPair);
  EXPECT_THROW(make_tau(z6, TauSpec::from_pairs({{E(0), E(2)}})), InvalidPair);
  EXPECT_THROW(make_tau(z6, "prod(full,full)"), InvalidSpec);
  EXPECT_THROW(make_tau(make_ring("Z6xZ8"), "prod(full)"), InvalidSpec);
}

TEST(MakeTau, ComaximalMatchesIdealSum) {
  for (const auto* spec : {"Z6", "Z12", "Z20", "Z2xZ4", "Z4xZ9"}) {
    auto r = make_ring(spec);
    oracle::Model m(r);
    auto t = make_tau(r, "comaximal");
    for (auto a : m.sharp()) {
      for (auto b : m.sharp()) {
        bool unit_sum = false;
        for (auto x : r.elements()) {
          for (auto y : r.elements()) {
            if (m.ideal[a.id][x.id] && m.ideal[b.id][y.id] && m.is_unit(r.add(x, y))) unit_sum = true;
          }
        }
        ASSERT_EQ(t.holds(a, b), unit_sum) << spec;
      }
    }
  }
}

TEST(MakeTau, ProductRelationQuantifier) {
  auto r = make_ring("Z6xZ8");
  oracle::Model m(r);
  const auto& f = r.factors();
  auto t = make_tau(r, "prod(comaximal,full)");
  auto t1 = make_tau(f[0], "comaximal");
  auto t2 = make_tau(f[1], "full");
  auto full = make_tau(r, "prod(full,full)");
  for (auto a : r.elements()) {
    for (auto b : r.elements()) {
      bool expect = m.in_sharp(a) && m.in_sharp(b);
      bool expect_full = expect;
      auto ca = r.coordinates(a), cb = r.coordinates(b);
      for (std::size_t i = 0; i < 2; ++i) {
        if (f[i].is_unit(ca[i]) || f[i].is_unit(cb[i])) continue;
        const auto& ti = i == 0 ? t1 : t2;
        expect = expect && ti.holds(ca[i], cb[i]);
        // Zero coordinates are non-units outside R_i^#, so τ_i rejects them.
        expect_full = expect_full && f[i].in_r_sharp(ca[i]) && f[i].in_r_sharp(cb[i]);
      }
      ASSERT_EQ(t.holds(a, b), expect) << r.format(a) << " " << r.format(b);
      ASSERT_EQ(full.holds(a, b), expect_full) << r.format(a) << " " << r.format(b);
    }
  }
}

TEST(MakeTau, EverySymmetric) {
  for (const auto& c : small_cases()) {
    auto r = make_ring(c.ring);
    auto t = build(r, c.tau);
    for (auto a : r.elements())
      for (auto b : r.elements()) ASSERT_EQ(t.holds(a, b), t.holds(b, a)) << c.ring << " " << c.tau;
  }
}

TEST(RelationReport, WorkedExamples) {
  auto z6 = make_ring("Z6");
  auto rep = relation_report(z6, make_tau(z6, "full"));
  EXPECT_FALSE(rep.multiplicative);
  ASSERT_TRUE(rep.multiplicative_witness);
  auto [a, b, c] = *rep.multiplicative_witness;
  EXPECT_FALSE(z6.in_r_sharp(z6.mul(b, c)));
  EXPECT_FALSE(rep.combinable);
  for (const auto* spec : {"Z4", "Z6", "Z20", "Z6xZ8"}) {
    auto r = make_ring(spec);
    auto full = relation_report(r, make_tau(r, "full"));
    EXPECT_TRUE(full.divisive) << spec;
    for (auto p : full.associate_preserving) EXPECT_TRUE(p) << spec;
  }
}

TEST(RelationReport, MatchesBoundedOracle) {
  for (const auto& c : small_cases()) {
    auto r = make_ring(c.ring);
    auto t = build(r, c.tau);
    auto rep = relation_report(r, t);
    auto o = reference_report(r, t, 5);
    const std::string where = c.ring + " " + c.tau;
    EXPECT_EQ(rep.multiplicative, o.multiplicative) << where;
    EXPECT_EQ(rep.divisive, o.divisive) << where;
    EXPECT_EQ(rep.associate_preserving, o.assoc_preserving) << where;
    EXPECT_EQ(rep.combinable, o.combinable) << where;
    EXPECT_EQ(rep.refinable, o.refinable) << where;
    EXPECT_EQ(rep.tau_u_refinable, o.tau_u_refinable) << where;
  }
}

TEST(RelationReport, WitnessesRecheck) {
  for (const auto& c : small_cases()) {
    auto r = make_ring(c.ring);
    auto t = build(r, c.tau);
    auto rep = relation_report(r, t);
    const std::string where = c.ring + " " + c.tau;
    EXPECT_EQ(rep.multiplicative, !rep.multiplicative_witness) << where;
    if (rep.multiplicative_witness) {
      auto [a, b, cc] = *rep.multiplicative_witness;
      EXPECT_TRUE(t.holds(a, b) && t.holds(a, cc) && !t.holds(a, r.mul(b, cc))) << where;
    }
    EXPECT_EQ(rep.divisive, !rep.divisive_witness) << where;
    if (rep.divisive_witness) {
      auto [a, b, b2] = *rep.divisive_witness;
      EXPECT_TRUE(t.holds(a, b) && r.divides(b2, b) && r.in_r_sharp(b2) && !t.holds(a, b2)) << where;
    }
    for (auto mode : kAssocs) {
      const auto i = static_cast<std::size_t>(mode);
      EXPECT_EQ(rep.associate_preserving[i], !rep.associate_preserving_witness[i]) << where;
      if (auto w = rep.associate_preserving_witness[i]) {
        auto [a, b, b2] = *w;
        EXPECT_TRUE(t.holds(a, b) && r.associated(b, b2, mode) && !t.holds(a, b2)) << where;
      }
    }
    EXPECT_EQ(rep.combinable, !rep.combinable_witness) << where;
    if (auto w = rep.combinable_witness) {
      Factorization f{r.one(), w->factors};
      EXPECT_TRUE(check_tau_factorization(r, t, evaluate(r, f), f)) << where;
      std::vector<Element> g;
      for (std::size_t k = 0; k < f.factors.size(); ++k) {
        if (k == w->position) {
          g.push_back(r.mul(f.factors[k], f.factors[k + 1]));
          ++k;
        } else {
          g.push_back(f.factors[k]);
        }
      }
      EXPECT_FALSE(check_tau_factorization(r, t, evaluate(r, f), Factorization{r.one(), g})) << where;
    }
    EXPECT_EQ(rep.refinable, !rep.refinable_witness) << where;
    if (auto w = rep.refinable_witness) {
      Factorization outer{r.one(), w->factors};
      const auto a = evaluate(r, outer);
      EXPECT_TRUE(check_tau_factorization(r, t, a, outer)) << where;
      Factorization refined = outer;
      for (std::size_t k = w->subs.size(); k-- > 0;) {
        Factorization sub{w->sub_units[k], w->subs[k]};
        EXPECT_TRUE(check_tau_factorization(r, t, outer.factors[k], sub)) << where;
        refined = apply_refinement(r, t, refined, k, sub).result;
      }
      EXPECT_FALSE(check_tau_factorization(r, t, a, refined)) << where;
    }
    EXPECT_EQ(rep.tau_u_refinable, !rep.tau_u_refinable_witness) << where;
    if (auto w = rep.tau_u_refinable_witness) {
      UFactorization outer{w->unit, w->inessential, w->essential};
      UFactorization sub{w->sub_unit, w->sub_inessential, w->sub_essential};
      EXPECT_TRUE(check_u_factorization(r, t, w->target_element, outer)) << where;
      EXPECT_TRUE(check_u_factorization(r, t, w->refined, sub)) << where;
      EXPECT_FALSE(apply_u_refinement(r, t, outer, w->refined, sub).valid) << where;
    }
  }
}

TEST(RelationReport, MonotoneAlongCorpusRestrictions) {
  // full ⊇ comaximal ⊇ empty: along this chain divisive and associate-preserving
  // never go from true to false. An empirical check on the corpus, not a theorem.
  for (const auto* spec : {"Z4", "Z6", "Z8", "Z12", "Z20", "Z6xZ8", "Z4xZ9"}) {
    auto r = make_ring(spec);
    std::vector<RelationReport> chain;
    for (const auto* tau : {"full", "comaximal", "empty"}) chain.push_back(relation_report(r, make_tau(r, tau)));
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      if (chain[k].divisive) {
        EXPECT_TRUE(chain[k + 1].divisive) << spec;
      }
      for (std::size_t i = 0; i < 3; ++i) {
        if (chain[k].associate_preserving[i]) {
          EXPECT_TRUE(chain[k + 1].associate_preserving[i]) << spec;
        }
      }
    }
  }
}
