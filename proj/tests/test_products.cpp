#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tauu/analyzer.hpp"
#include "tauu/products.hpp"
#include "tauu/properties.hpp"
#include "tauu/theorem_lab.hpp"

using namespace tauu;
using oracle::E;

namespace {

struct Product {
  Ring r;
  TauRelation t;
  explicit Product(const char* ring = "Z6xZ8", const char* tau = "prod(full,full)")
      : r(make_ring(ring)), t(make_tau(r, tau)) {}
  Element e(const char* s) const { return r.parse_element(s); }
};

UFactorization U(std::initializer_list<std::uint32_t> iness, std::initializer_list<std::uint32_t> ess,
                 std::uint32_t unit = 1) {
  UFactorization u{E(unit), {}, {}};
  for (auto x : iness) u.inessential.push_back(E(x));
  for (auto x : ess) u.essential.push_back(E(x));
  return u;
}

std::vector<std::size_t> nonunit_coordinates(const Ring& r, Element a) {
  std::vector<std::size_t> out;
  const auto c = r.coordinates(a);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (!r.factors()[i].is_unit(c[i])) out.push_back(i);
  }
  return out;
}

}  // namespace

TEST(Lift, WorkedExamples) {
  Product p;
  auto lifted = lift_u_factorization(p.r, p.t, {1, U({}, {2, 3})});
  EXPECT_EQ(lifted, (UFactorization{p.e("(1,1)"), {}, {p.e("(2,1)"), p.e("(3,1)")}}));
  EXPECT_EQ(evaluate(p.r, lifted), p.e("(0,1)"));
  EXPECT_TRUE(check_u_factorization(p.r, p.t, p.e("(0,1)"), lifted));

  auto threes = lift_u_factorization(p.r, p.t, {1, U({3, 3}, {3})});
  EXPECT_EQ(evaluate(p.r, threes), p.e("(3,1)"));
  EXPECT_TRUE(check_u_factorization(p.r, p.t, p.e("(3,1)"), threes));

  auto single = lift_u_factorization(p.r, p.t, {2, U({}, {4})});
  EXPECT_EQ(single, (UFactorization{p.e("(1,1)"), {}, {p.e("(1,4)")}}));
}

TEST(Lift, Errors) {
  Product p;
  EXPECT_THROW(lift_u_factorization(p.r, p.t, {1, U({}, {2, 5})}), InvalidInput);  // 5 is a unit
  EXPECT_THROW(lift_u_factorization(p.r, p.t, {1, U({}, {2, 2})}), InvalidInput);  // (4) = (2)
  EXPECT_THROW(lift_u_factorization(p.r, p.t, {3, U({}, {2})}), InvalidCoordinate);
  auto z6 = make_ring("Z6");
  EXPECT_THROW(lift_u_factorization(z6, make_tau(z6, "full"), {1, U({}, {2})}), InvalidInput);
}

TEST(Project, WorkedExamples) {
  Product p;
  UFactorization two{p.r.one(), {p.e("(3,1)")}, {p.e("(3,3)"), p.e("(1,4)")}};
  EXPECT_THROW(project_u_factorization(p.r, p.t, two, 1), NotProjectable);

  Analyzer an(p.r, p.t);
  auto z6 = p.r.factors()[0];
  auto t6 = p.t.components()[0];
  const auto all = an.u_factorizations(p.e("(3,1)"));
  ASSERT_FALSE(all.empty());
  for (const auto& u : all) {
    auto down = project_u_factorization(p.r, p.t, u, 1);
    EXPECT_TRUE(check_u_factorization(z6, t6, E(3), down)) << render(p.r, u);
    EXPECT_EQ(down.essential.size(), u.essential.size());
    EXPECT_THROW(project_u_factorization(p.r, p.t, u, 2), NotProjectable);
  }
}

TEST(Project, InvertsLift) {
  for (const auto* spec : {"Z6xZ8", "Z4xZ9"}) {
    Product p(spec);
    for (std::size_t i = 1; i <= 2; ++i) {
      const auto& ri = p.r.factors()[i - 1];
      Analyzer an(ri, p.t.components()[i - 1]);
      for (auto x : ri.non_units()) {
        for (const auto& inner : an.u_factorizations(x)) {
          auto lifted = lift_u_factorization(p.r, p.t, {i, inner});
          EXPECT_EQ(evaluate(p.r, lifted), embed(p.r, i, x));
          EXPECT_EQ(project_u_factorization(p.r, p.t, lifted, i), inner) << spec << " " << render(ri, inner);
        }
      }
    }
  }
}

TEST(Decompose, WorkedExamples) {
  Product p;
  Factorization f{p.r.one(), {p.e("(3,4)")}};
  auto d = decompose_product_factorization(p.r, p.t, f);
  EXPECT_EQ(d, (Factorization{p.r.one(), {p.e("(3,1)"), p.e("(1,4)")}}));

  Factorization g{p.r.one(), {p.e("(3,1)")}};
  EXPECT_EQ(decompose_product_factorization(p.r, p.t, g), g);

  // Unit coordinates move into the leading unit.
  Factorization h{p.r.one(), {p.e("(5,4)")}};
  auto dh = decompose_product_factorization(p.r, p.t, h);
  EXPECT_EQ(dh.unit, p.e("(5,1)"));
  EXPECT_EQ(dh.factors, std::vector<Element>{p.e("(1,4)")});
}

TEST(Decompose, PreservesValueAndLeavesOneNonUnitPerFactor) {
  for (const auto* spec : {"Z6xZ8", "Z4xZ9"}) {
    Product p(spec);
    Analyzer an(p.r, p.t);
    for (auto a : p.r.non_units()) {
      for (const auto& u : an.u_factorizations(a)) {
        const auto f = u.flatten();
        auto d = decompose_product_factorization(p.r, p.t, f);
        EXPECT_EQ(evaluate(p.r, d), a);
        EXPECT_TRUE(p.r.is_unit(d.unit));
        for (auto x : d.factors) EXPECT_EQ(nonunit_coordinates(p.r, x).size(), 1U);
      }
    }
  }
}

TEST(ProductTheorems, AtomsHaveOneNonUnitCoordinate) {
  // Product side from the engine, coordinate side from the brute-force model.
  for (const auto* spec : {"Z6xZ8", "Z4xZ9"}) {
    for (const auto* tau : {"prod(full,full)", "prod(comaximal,full)"}) {
      Product p(spec, tau);
      Analyzer an(p.r, p.t);
      std::vector<oracle::Model> models;
      for (const auto& ri : p.r.factors()) models.emplace_back(ri);
      for (auto a : p.r.non_units()) {
        const auto rep = an.irreducibility(a);
        const auto nu = nonunit_coordinates(p.r, a);
        if (rep.irreducible() && a != p.r.zero()) {
          EXPECT_EQ(nu.size(), 1U) << spec << " " << p.r.format(a);
        }
        std::array<bool, 4> expect{};
        if (nu.size() == 1) {
          const auto i = nu.front();
          const auto& m = models[i];
          const auto c = p.r.coordinates(a)[i];
          const auto f = oracle::grades(m, p.t.components()[i], c, m.n + 2);
          expect = {f.irreducible, f.strong, f.m, f.very_strong && c != m.r.zero()};
        }
        EXPECT_EQ(rep.flags, expect) << spec << " " << tau << " " << p.r.format(a);
      }
    }
  }
}

TEST(ProductTheorems, RingVerdictsAreComponentwise) {
  for (const auto* spec : {"Z6xZ8", "Z4xZ9"}) {
    Product p(spec);
    Analyzer an(p.r, p.t);
    std::vector<Analyzer> parts;
    for (std::size_t i = 0; i < p.r.arity(); ++i) parts.emplace_back(p.r.factors()[i], p.t.components()[i]);
    for (auto prop : {Property::u_atomic, Property::u_df, Property::u_bfr, Property::u_hfr, Property::u_ufr}) {
      for (auto g : kGrades) {
        for (auto beta : {Assoc::assoc, Assoc::strong}) {
          const auto whole = check_property(an, prop, g, beta);
          bool each = true, each_nonzero = true;
          for (auto& c : parts) {
            const auto v = check_property(c, prop, g, beta);
            each = each && v.holds;
            each_nonzero = each_nonzero && v.holds_nonzero;
          }
          const auto where = std::string(spec) + " " + std::string(to_string(prop)) + " " +
                             std::string(to_string(g)) + " " + std::string(to_string(beta));
          EXPECT_EQ(whole.holds, each) << where;
          EXPECT_EQ(whole.holds_nonzero, each_nonzero) << where;
        }
      }
    }
  }
}

// A component zero without τ_i-factorizations breaks the equivalence once the
// components are not full: (0,1) is a nonzero tuple with a zero coordinate.
TEST(ProductTheorems, ComaximalComponentsSeparate) {
  Product p("Z4xZ9", "prod(comaximal,full)");
  auto whole = check_property(p.r, p.t, Property::u_atomic, Grade::very_strong);
  EXPECT_FALSE(whole.holds_nonzero);
  ASSERT_TRUE(whole.witness);
  EXPECT_EQ(whole.witness->element, p.e("(0,1)"));
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_TRUE(check_property(p.r.factors()[i], p.t.components()[i], Property::u_atomic, Grade::very_strong)
                    .holds_nonzero);
  }
  // The lab decides over all non-units, where both sides fail at 0, and notes the split.
  auto verdict = verify(p.r, p.t, "PROD-UATOMIC", {Grade::very_strong, std::nullopt});
  EXPECT_EQ(verdict.status, Status::pass);
  EXPECT_TRUE(std::any_of(verdict.notes.begin(), verdict.notes.end(),
                          [](const std::string& n) { return n.find("nonzero") != std::string::npos; }));

  // Reading 0 in: (0,0) = (0,1)·(1,0) factors although neither component zero does.
  Product q("Z6xZ8", "prod(comaximal,comaximal)");
  EXPECT_TRUE(check_property(q.r, q.t, Property::u_atomic, Grade::irreducible).holds);
  EXPECT_FALSE(check_property(q.r.factors()[1], q.t.components()[1], Property::u_atomic).holds);
  EXPECT_TRUE(check_u_factorization(q.r, q.t, q.r.zero(), UFactorization{q.r.one(), {}, {q.e("(0,1)"), q.e("(1,0)")}}));
  auto lab = verify(q.r, q.t, "PROD-UATOMIC", {Grade::irreducible, std::nullopt});
  EXPECT_EQ(lab.status, Status::fail);
  ASSERT_TRUE(lab.counterexample);
  EXPECT_TRUE(lab.counterexample->revalidated);
}
