#include <gtest/gtest.h>

#include <set>

#include "cap_stability.hpp"
#include "oracle.hpp"
#include "tauu/analyzer.hpp"

using namespace tauu;
using oracle::E;
using oracle::Multiset;

namespace {

std::set<Multiset> keys(const EnumerationResult& e) {
  std::set<Multiset> out;
  for (const auto& x : e.entries) out.insert(x.key);
  return out;
}

std::set<Multiset> keys(const UEnumerationResult& e) {
  std::set<Multiset> out;
  for (const auto& x : e.entries) out.insert(x.key);
  return out;
}

Multiset M(std::initializer_list<std::uint32_t> xs) {
  Multiset out;
  for (auto x : xs) out.push_back(E(x));
  return out;
}

struct Pair {
  Ring r;
  TauRelation t;
};

/// Rings small enough for a brute-force search to length |R|+2.
std::vector<Pair> oracle_pairs() {
  std::vector<Pair> out;
  for (const auto* spec : {"Z4", "Z6", "Z8", "Z9", "Z12", "Z2xZ4", "Z2xZ2xZ2"}) {
    auto r = make_ring(spec);
    for (auto& t : capcheck::relations(r)) out.push_back({r, t});
  }
  return out;
}

std::string where(const Pair& p, Element a) { return p.r.name() + " " + p.t.name() + " a=" + p.r.format(a); }

}  // namespace

TEST(Enumerate, WorkedExamples) {
  auto z20 = make_ring("Z20");
  auto full20 = make_tau(z20, "full");
  auto e = enumerate_tau_factorizations(z20, full20, E(10), Assoc::assoc);
  auto k = keys(e);
  EXPECT_TRUE(k.count(M({10})));
  EXPECT_TRUE(k.count(M({2, 5})));
  EXPECT_TRUE(k.count(M({2, 5, 5})));
  EXPECT_TRUE(e.exact);
  EXPECT_EQ(e.cap_used, 22U);
  ASSERT_TRUE(e.unbounded_witness);

  auto z6 = make_ring("Z6");
  auto full6 = make_tau(z6, "full");
  auto e3 = enumerate_tau_factorizations(z6, full6, E(3), Assoc::assoc);
  for (std::size_t n = 1; n <= e3.cap_used; ++n) EXPECT_TRUE(keys(e3).count(Multiset(n, E(3)))) << n;
  EXPECT_TRUE(e3.unbounded_witness);

  auto z5 = make_ring("Z5");
  EXPECT_TRUE(enumerate_tau_factorizations(z5, make_tau(z5, "full"), E(0), Assoc::assoc).entries.empty());
  EXPECT_THROW(enumerate_tau_factorizations(z6, full6, E(5), Assoc::assoc), NotFactorable);
  EXPECT_THROW(enumerate_tau_u_factorizations(z6, full6, E(1), Assoc::assoc), NotFactorable);
}

TEST(Enumerate, MatchesBruteForceAtDefaultCap) {
  for (const auto& p : oracle_pairs()) {
    oracle::Model m(p.r);
    Analyzer an(p.r, p.t);
    const std::size_t cap = p.r.size() + 2;
    for (auto a : m.non_units()) {
      const auto brute = oracle::factorizations(m, p.t, a, cap);
      for (auto beta : {Assoc::assoc, Assoc::strong}) {
        std::set<Multiset> want;
        for (const auto& f : brute) want.insert(m.canonical(f, beta));
        auto e = an.enumerate(a, beta);
        ASSERT_FALSE(e.truncated);
        ASSERT_EQ(keys(e), want) << where(p, a);
        for (const auto& x : e.entries) {
          EXPECT_TRUE(check_tau_factorization(p.r, p.t, a, x.witness)) << where(p, a);
          EXPECT_EQ(an.canonical(x.witness.factors, beta), x.key);
        }
      }
    }
  }
}

TEST(Enumerate, LargerRingMatchesBruteForceAtShortCap) {
  auto r = make_ring("Z20");
  for (const auto& t : capcheck::relations(r)) {
    oracle::Model m(r);
    Analyzer an(r, t);
    for (auto a : m.non_units()) {
      std::set<Multiset> want;
      for (const auto& f : oracle::factorizations(m, t, a, 6)) want.insert(m.canonical(f, Assoc::assoc));
      EXPECT_EQ(keys(an.enumerate(a, Assoc::assoc, 6)), want) << t.name() << " " << a.id;
    }
  }
}

TEST(Enumerate, LengthBoundsAndPumpsReplay) {
  for (const auto& p : oracle_pairs()) {
    oracle::Model m(p.r);
    Analyzer an(p.r, p.t);
    const std::size_t deep = p.r.size() + 4;
    for (auto a : m.non_units()) {
      const auto brute = oracle::factorizations(m, p.t, a, deep);
      std::size_t longest = 0;
      for (const auto& f : brute) longest = std::max(longest, f.size());
      auto pump = an.unboundedness_certificate(a);
      auto e = an.enumerate(a, Assoc::assoc);
      EXPECT_EQ(pump.has_value(), e.unbounded_witness.has_value());
      if (pump) {
        EXPECT_EQ(longest, deep) << where(p, a);
        EXPECT_FALSE(e.max_length);
        for (std::size_t k = 0; k <= 3; ++k) {
          auto f = pump->pumped(k);
          EXPECT_TRUE(check_tau_factorization(p.r, p.t, a, f)) << where(p, a) << " k=" << k;
          EXPECT_EQ(f.factors.size(), pump->base.factors.size() + k * pump->cycle.size());
        }
      } else {
        ASSERT_TRUE(e.max_length) << where(p, a);
        EXPECT_EQ(*e.max_length, longest) << where(p, a);
        EXPECT_LT(longest, deep) << where(p, a);
      }
    }
  }
}

TEST(UnboundednessCertificate, WorkedExamples) {
  auto z6 = make_ring("Z6");
  auto c = unboundedness_certificate(z6, make_tau(z6, "full"), E(3));
  ASSERT_TRUE(c);
  EXPECT_EQ(c->cycle, M({3}));
  EXPECT_EQ(c->partial_product, E(3));

  auto z20 = make_ring("Z20");
  auto t20 = make_tau(z20, "full");
  auto c20 = unboundedness_certificate(z20, t20, E(10));
  ASSERT_TRUE(c20);
  EXPECT_EQ(c20->cycle, M({5}));
  // The cycle returns the partial product to itself.
  auto q = c20->partial_product;
  for (auto x : c20->cycle) q = z20.mul(q, x);
  EXPECT_EQ(q, c20->partial_product);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_TRUE(check_tau_factorization(z20, t20, E(10), c20->pumped(k)));

  auto z4 = make_ring("Z4");
  auto t4 = make_tau(z4, "full");
  EXPECT_FALSE(unboundedness_certificate(z4, t4, E(2)));
  Analyzer an(z4, t4);
  EXPECT_EQ(an.enumerate(E(2), Assoc::assoc).max_length, std::optional<std::size_t>(1));
}

TEST(EnumerateU, WorkedExamples) {
  auto z20 = make_ring("Z20");
  auto t = make_tau(z20, "full");
  auto k10 = keys(enumerate_tau_u_factorizations(z20, t, E(10), Assoc::assoc));
  EXPECT_EQ(k10, (std::set<Multiset>{M({10}), M({2, 5})}));
  auto k0 = keys(enumerate_tau_u_factorizations(z20, t, E(0), Assoc::assoc));
  EXPECT_TRUE(k0.count(M({10, 10})));
  EXPECT_TRUE(k0.count(M({2, 2, 5})));
  auto z6 = make_ring("Z6");
  auto k3 = keys(enumerate_tau_u_factorizations(z6, make_tau(z6, "full"), E(3), Assoc::assoc));
  EXPECT_EQ(k3, (std::set<Multiset>{M({3})}));
}

TEST(EnumerateU, MatchesBruteForceSplits) {
  for (const auto& p : oracle_pairs()) {
    oracle::Model m(p.r);
    Analyzer an(p.r, p.t);
    const std::size_t height = p.r.ideal_chain_height();
    for (auto a : m.non_units()) {
      const auto brute = oracle::factorizations(m, p.t, a, p.r.size() + 2);
      for (auto beta : {Assoc::assoc, Assoc::strong}) {
        std::set<Multiset> want;
        for (const auto& f : brute) {
          for (const auto& [iness, ess] : oracle::u_splits(m, f, height)) want.insert(m.canonical(ess, beta));
        }
        auto u = an.enumerate_u(a, beta);
        ASSERT_EQ(keys(u), want) << where(p, a);
        for (const auto& x : u.entries) {
          EXPECT_TRUE(check_u_factorization(p.r, p.t, a, x.witness)) << where(p, a);
          EXPECT_EQ(an.canonical(x.witness.essential, beta), x.key);
          EXPECT_LE(x.key.size(), height) << where(p, a);
        }
      }
    }
  }
}

TEST(EnumerateU, EveryFactorizationRearrangesIntoAListedOne) {
  for (const auto& p : oracle_pairs()) {
    oracle::Model m(p.r);
    Analyzer an(p.r, p.t);
    for (auto a : m.non_units()) {
      auto listed = keys(an.enumerate_u(a, Assoc::assoc));
      for (const auto& f : oracle::factorizations(m, p.t, a, 5)) {
        auto u = to_u_factorization(p.r, Factorization{*p.r.unit_between(a, m.prod(f)), f});
        EXPECT_TRUE(check_u_factorization(p.r, p.t, a, u)) << where(p, a);
        EXPECT_TRUE(listed.count(an.canonical(u.essential, Assoc::assoc))) << where(p, a);
      }
    }
  }
}

TEST(Irreducibility, WorkedExamples) {
  auto z6 = make_ring("Z6");
  auto t = make_tau(z6, "full");
  auto two = irreducibility(z6, t, E(2));
  EXPECT_TRUE(two.irreducible());
  EXPECT_TRUE(two.strongly_irreducible());
  EXPECT_TRUE(two.m_irreducible());
  EXPECT_FALSE(two.very_strongly_irreducible());
  EXPECT_FALSE(two.self_very_strong);
  auto three = irreducibility(z6, t, E(3));
  EXPECT_TRUE(three.irreducible());
  EXPECT_TRUE(three.m_irreducible());
  EXPECT_FALSE(three.very_strongly_irreducible());
  ASSERT_TRUE(three.witnesses[3]);
  EXPECT_TRUE(check_tau_factorization(z6, t, E(3), *three.witnesses[3]));

  auto p = make_ring("Z6xZ8");
  auto tp = make_tau(p, "prod(full,full)");
  EXPECT_TRUE(irreducibility(p, tp, p.parse_element("(3,1)")).irreducible());
  EXPECT_THROW(irreducibility(z6, t, E(5)), NotClassifiable);
}

TEST(Irreducibility, MatchesBruteForce) {
  for (const auto& p : oracle_pairs()) {
    oracle::Model m(p.r);
    Analyzer an(p.r, p.t);
    for (auto a : m.non_units()) {
      auto o = oracle::grades(m, p.t, a, p.r.size() + 2);
      const auto& rep = an.irreducibility(a);
      EXPECT_EQ(rep.irreducible(), o.irreducible) << where(p, a);
      EXPECT_EQ(rep.strongly_irreducible(), o.strong) << where(p, a);
      EXPECT_EQ(rep.m_irreducible(), o.m) << where(p, a);
      EXPECT_EQ(rep.very_strongly_irreducible(), o.very_strong) << where(p, a);
      for (auto g : kGrades) {
        if (const auto& w = rep.witnesses[static_cast<std::size_t>(g)]) {
          EXPECT_TRUE(check_tau_factorization(p.r, p.t, a, *w)) << where(p, a);
        }
      }
    }
  }
}

TEST(Irreducibility, HierarchyAndOneEssentialDivisor) {
  for (const auto& p : oracle_pairs()) {
    Analyzer an(p.r, p.t);
    const bool sa = ring_flags(p.r).strongly_associate;
    for (auto a : p.r.non_units()) {
      const auto& rep = an.irreducibility(a);
      if (rep.very_strongly_irreducible()) {
        EXPECT_TRUE(rep.strongly_irreducible()) << where(p, a);
      }
      if (rep.strongly_irreducible()) {
        EXPECT_TRUE(rep.irreducible()) << where(p, a);
      }
      if (rep.m_irreducible()) {
        EXPECT_TRUE(rep.irreducible()) << where(p, a);
      }
      if (sa && rep.m_irreducible()) {
        EXPECT_TRUE(rep.strongly_irreducible()) << where(p, a);
      }
      bool one = true;
      for (const auto& u : an.u_factorizations(a)) one = one && u.essential.size() == 1;
      EXPECT_EQ(rep.irreducible(), one) << where(p, a);
    }
  }
}

TEST(Inventory, WorkedExamples) {
  auto z20 = make_ring("Z20");
  auto t = make_tau(z20, "full");
  EXPECT_EQ(essential_divisor_inventory(z20, t, E(10), Assoc::assoc), M({2, 5, 10}));
  auto z6 = make_ring("Z6");
  auto t6 = make_tau(z6, "full");
  EXPECT_EQ(essential_divisor_inventory(z6, t6, E(3), Assoc::assoc), M({3}));
  auto z5 = make_ring("Z5");
  EXPECT_TRUE(essential_divisor_inventory(z5, make_tau(z5, "full"), E(0), Assoc::assoc).empty());
  // Filtering never grows the inventory.
  for (auto a : z20.non_units()) {
    for (auto g : kGrades) {
      EXPECT_LE(essential_divisor_inventory(z20, t, a, Assoc::assoc, g).size(),
                essential_divisor_inventory(z20, t, a, Assoc::assoc).size());
    }
  }
}

TEST(AtomicUFactorization, WorkedExamples) {
  auto z6 = make_ring("Z6");
  auto t6 = make_tau(z6, "full");
  auto u = atomic_u_factorization(z6, t6, E(0), Grade::irreducible);
  ASSERT_TRUE(u);
  EXPECT_TRUE(check_u_factorization(z6, t6, E(0), *u));
  auto ess = u->essential;
  std::sort(ess.begin(), ess.end());
  EXPECT_TRUE(ess == M({2, 3}) || ess == M({3, 4})) << render(z6, *u);

  for (const auto* spec : {"Z20", "Z12", "Z6xZ8"}) {
    auto r = make_ring(spec);
    auto t = make_tau(r, r.arity() > 1 ? "prod(full,full)" : "full");
    Analyzer an(r, t);
    for (auto a : r.non_units()) {
      for (auto g : kGrades) {
        auto w = an.atomic_u_factorization(a, g);
        if (!w) {
          EXPECT_TRUE(an.alpha_u_factorizations(a, g).empty());
          continue;
        }
        EXPECT_TRUE(check_u_factorization(r, t, a, *w)) << spec;
        for (auto b : w->essential) EXPECT_TRUE(an.is_alpha(b, g)) << spec;
        if (an.is_alpha(a, g)) {
          EXPECT_EQ(w->essential, std::vector<Element>{a}) << spec << " " << r.format(a);
        }
      }
    }
  }
}

TEST(CapStability, DefaultAndExtendedCapsAgreeOnSmallRings) {
  auto out = capcheck::run();
  EXPECT_EQ(out.pairs, 13U * 5U);
  for (const auto& m : out.mismatches) ADD_FAILURE() << m;
}
