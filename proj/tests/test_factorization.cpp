#include <gtest/gtest.h>

#include "oracle.hpp"
#include "tauu/analyzer.hpp"
#include "tauu/factorization.hpp"

using namespace tauu;
using oracle::E;

namespace {

Factorization F(std::initializer_list<std::uint32_t> xs, std::uint32_t unit = 1) {
  Factorization f{E(unit), {}};
  for (auto x : xs) f.factors.push_back(E(x));
  return f;
}

UFactorization U(std::initializer_list<std::uint32_t> iness, std::initializer_list<std::uint32_t> ess,
                 std::uint32_t unit = 1) {
  UFactorization u{E(unit), {}, {}};
  for (auto x : iness) u.inessential.push_back(E(x));
  for (auto x : ess) u.essential.push_back(E(x));
  return u;
}

struct Fixture {
  Ring r;
  TauRelation t;
  explicit Fixture(const char* ring, const char* tau = "full") : r(make_ring(ring)), t(make_tau(r, tau)) {}
};

}  // namespace

TEST(CheckTauFactorization, WorkedExamples) {
  Fixture z20("Z20");
  EXPECT_TRUE(check_tau_factorization(z20.r, z20.t, E(0), F({10, 10})));
  EXPECT_TRUE(check_tau_factorization(z20.r, z20.t, E(10), F({2, 5})));
  Fixture z6("Z6");
  EXPECT_TRUE(check_tau_factorization(z6.r, z6.t, E(3), F({3})));
  auto d = check_tau_factorization(z6.r, z6.t, E(3), F({1, 3}));
  EXPECT_FALSE(d);
  EXPECT_FALSE(d.reason.empty());
  EXPECT_FALSE(check_tau_factorization(z6.r, z6.t, E(3), F({3}, 2)));   // 2 is not a unit
  EXPECT_FALSE(check_tau_factorization(z6.r, z6.t, E(2), F({3})));      // wrong value
  EXPECT_TRUE(check_tau_factorization(z6.r, z6.t, E(3), F({3}, 5)));  // 5·3 = 3
  EXPECT_TRUE(check_tau_factorization(z6.r, z6.t, E(3), F({3, 3, 3})));
}

TEST(CheckTauFactorization, RepeatedValuesNeedSelfPairs) {
  Fixture z6("Z6");
  auto t = make_tau(z6.r, TauSpec::from_pairs({{E(2), E(3)}}));
  EXPECT_TRUE(check_tau_factorization(z6.r, t, E(0), F({2, 3})));
  EXPECT_FALSE(check_tau_factorization(z6.r, t, E(3), F({3, 3})));
}

TEST(USplit, WorkedExamples) {
  Fixture z20("Z20");
  EXPECT_EQ(u_split(z20.r, F({10, 10})), (std::vector<UFactorization>{U({}, {10, 10})}));
  EXPECT_EQ(u_split(z20.r, F({2, 5, 2, 5})), (std::vector<UFactorization>{U({5}, {2, 2, 5})}));
  Fixture z6("Z6");
  EXPECT_EQ(u_split(z6.r, F({2, 2})), (std::vector<UFactorization>{U({2}, {2})}));
}

TEST(USplit, MatchesOracleAndContainsDeterministicRearrangement) {
  for (const auto* spec : {"Z6", "Z8", "Z12", "Z20", "Z2xZ4"}) {
    auto r = make_ring(spec);
    auto t = make_tau(r, "full");
    oracle::Model m(r);
    for (auto a : m.non_units()) {
      for (const auto& fs : oracle::factorizations(m, t, a, 4)) {
        Factorization f{r.one(), fs};
        std::set<std::pair<oracle::Multiset, oracle::Multiset>> got;
        for (const auto& u : u_split(r, f)) {
          got.insert({u.inessential, u.essential});
          EXPECT_TRUE(check_u_conditions(r, u));
        }
        ASSERT_EQ(got, oracle::u_splits(m, fs)) << spec << " " << render(r, f);

        auto u = to_u_factorization(r, f);
        EXPECT_TRUE(check_u_conditions(r, u));
        EXPECT_EQ(evaluate(r, u), evaluate(r, f));
        auto flat = u.flatten().factors;
        std::sort(flat.begin(), flat.end());
        EXPECT_EQ(flat, fs);
        auto sorted = u;
        std::sort(sorted.inessential.begin(), sorted.inessential.end());
        std::sort(sorted.essential.begin(), sorted.essential.end());
        EXPECT_TRUE(got.count({sorted.inessential, sorted.essential})) << spec << " " << render(r, f);
      }
    }
  }
}

TEST(ToUFactorization, WorkedExamples) {
  Fixture z20("Z20");
  EXPECT_EQ(render(z20.r, to_u_factorization(z20.r, F({2, 5, 2, 5}))), "1 * 5 [ 2 * 2 * 5 ]");
  EXPECT_EQ(render(z20.r, to_u_factorization(z20.r, F({10, 10}))), "1 [ 10 * 10 ]");
  Fixture z6("Z6");
  EXPECT_EQ(render(z6.r, to_u_factorization(z6.r, F({3, 3, 3}))), "1 * 3 * 3 [ 3 ]");
}

TEST(CheckUFactorization, WorkedExamples) {
  auto r = make_ring("Z6xZ8");
  auto t = make_tau(r, "prod(full,full)");
  auto e = [&](const char* s) { return r.parse_element(s); };
  UFactorization a{r.one(), {e("(3,1)")}, {e("(3,3)"), e("(1,4)")}};
  UFactorization b{r.one(), {e("(3,3)")}, {e("(3,1)"), e("(1,4)")}};
  EXPECT_TRUE(check_u_factorization(r, t, e("(3,4)"), a));
  EXPECT_TRUE(check_u_factorization(r, t, e("(3,4)"), b));
  EXPECT_NE(a, b);

  Fixture z20("Z20");
  auto d = check_u_factorization(z20.r, z20.t, E(0), U({}, {2, 5, 2, 5}));
  EXPECT_FALSE(d);
  ASSERT_TRUE(d.culprit);
  EXPECT_EQ(*d.culprit, E(5));
  // 2·5·2·6 is not a U-factorization either.
  EXPECT_FALSE(check_u_factorization(z20.r, z20.t, E(0), U({}, {2, 5, 2, 6})));
  EXPECT_TRUE(check_tau_factorization(z20.r, z20.t, E(0), F({2, 5, 2, 6})));
}

TEST(CheckUFactorization, EssentialPrefixesFormStrictChain) {
  for (const auto* spec : {"Z6", "Z12", "Z20", "Z2xZ4"}) {
    auto r = make_ring(spec);
    auto t = make_tau(r, "full");
    oracle::Model m(r);
    for (auto a : m.non_units()) {
      for (const auto& fs : oracle::factorizations(m, t, a, 4)) {
        for (const auto& u : u_split(r, Factorization{r.one(), fs})) {
          const auto b = m.prod(u.essential);
          EXPECT_TRUE(m.same_ideal(evaluate(r, u), b));
          for (std::size_t j = 0; j < u.essential.size(); ++j) {
            auto rest = u.essential;
            rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
            const auto c = m.prod(rest);
            EXPECT_TRUE(m.ideal_subset(b, c) && !m.same_ideal(b, c));
          }
        }
      }
    }
  }
}

TEST(ApplyRefinement, WorkedExamples) {
  Fixture z20("Z20");
  auto res = apply_refinement(z20.r, z20.t, F({10, 10}), 0, F({2, 5}));
  EXPECT_TRUE(res.valid);
  auto sorted = res.result.factors;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<Element>{E(2), E(5), E(10)}));
  EXPECT_EQ(evaluate(z20.r, res.result), E(0));

  Fixture z6("Z6");
  auto same = apply_refinement(z6.r, z6.t, F({2, 3}), 1, F({3}));
  EXPECT_TRUE(same.valid);
  EXPECT_EQ(same.result, F({2, 3}));

  auto pairs = make_tau(z6.r, TauSpec::from_pairs({{E(2), E(3)}}));
  EXPECT_THROW(apply_refinement(z6.r, pairs, F({2, 3}), 1, F({3, 3})), InvalidRefinement);
  EXPECT_THROW(apply_refinement(z6.r, z6.t, F({2, 3}), 1, F({2})), InvalidRefinement);
}

TEST(ApplyRefinement, UnitsCollectInFront) {
  Fixture z6("Z6");
  // 3 = 5·3·3 is a τ-factorization of 3 with a non-trivial unit.
  auto res = apply_refinement(z6.r, z6.t, F({2, 3}), 1, F({3, 3}, 5));
  EXPECT_EQ(res.result.unit, E(5));
  EXPECT_EQ(evaluate(z6.r, res.result), E(0));
}

TEST(ApplyURefinement, WorkedExamples) {
  Fixture z20("Z20");
  auto res = apply_u_refinement(z20.r, z20.t, U({}, {10, 10}), E(10), U({}, {2, 5}));
  EXPECT_FALSE(res.valid);
  ASSERT_TRUE(res.culprit);
  EXPECT_EQ(*res.culprit, E(5));
  EXPECT_EQ(evaluate(z20.r, res.result), E(0));
  // Its factor multiset rearranges with 5 inessential.
  auto re = to_u_factorization(z20.r, res.result.flatten());
  EXPECT_EQ(re.inessential, std::vector<Element>{E(5)});

  // Refining both 10s gives the 2·5·2·5 reading.
  auto twice = apply_u_refinement(z20.r, z20.t, res.result, E(10), U({}, {2, 5}));
  EXPECT_FALSE(twice.valid);
  EXPECT_EQ(u_split(z20.r, twice.result.flatten()), (std::vector<UFactorization>{U({5}, {2, 2, 5})}));

  auto same = apply_u_refinement(z20.r, z20.t, U({}, {10, 10}), E(10), U({}, {10}));
  EXPECT_TRUE(same.valid);
  EXPECT_EQ(same.result, U({}, {10, 10}));

  Fixture z6("Z6");
  auto six = apply_u_refinement(z6.r, z6.t, U({}, {2, 3}), E(2), U({}, {2}));
  EXPECT_TRUE(six.valid);
  EXPECT_EQ(six.result, U({}, {2, 3}));
  EXPECT_THROW(apply_u_refinement(z6.r, z6.t, U({}, {2, 3}), E(4), U({}, {4})), InvalidTarget);
  EXPECT_THROW(apply_u_refinement(z6.r, z6.t, U({}, {2, 3}), E(2), U({}, {3})), InvalidRefinement);
}

TEST(Render, BracketNotationAndRoundTrip) {
  Fixture z20("Z20");
  EXPECT_EQ(render(z20.r, U({}, {10, 10})), "1 [ 10 * 10 ]");
  EXPECT_EQ(render(z20.r, U({5}, {2, 2, 5})), "1 * 5 [ 2 * 2 * 5 ]");
  EXPECT_EQ(render(z20.r, F({2, 5}, 3)), "3 * 2 * 5");
  for (const auto* spec : {"Z20", "Z6xZ8"}) {
    auto r = make_ring(spec);
    auto t = make_tau(r, spec == std::string("Z20") ? "full" : "prod(full,full)");
    Analyzer an(r, t);
    for (auto a : r.non_units()) {
      for (const auto& u : an.u_factorizations(a)) {
        EXPECT_EQ(parse_u_factorization(r, render(r, u)), u);
        EXPECT_EQ(parse_factorization(r, render(r, u.flatten())), u.flatten());
      }
    }
  }
  EXPECT_THROW(parse_factorization(z20.r, "1 * "), ParseError);
  EXPECT_THROW(parse_u_factorization(z20.r, "1 [ 2 * 5"), ParseError);
}
