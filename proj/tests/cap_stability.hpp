#pragma once

// Compares every enumeration and classification at the default cap |R|+2
// against a run at |R|+4. Factorizations only visible at the larger cap must
// contract (delete the segment between two equal prefix products) to one the
// default cap already lists.

#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tauu/analyzer.hpp"
#include "tauu/properties.hpp"

namespace capcheck {

using namespace tauu;

inline Ring table_ring(std::size_t k, std::vector<std::uint32_t> add, std::vector<std::uint32_t> mul) {
  return Ring::table(k, add, mul);
}

/// Every ring with at most eight elements used by the oracle.
inline std::vector<Ring> small_rings() {
  std::vector<Ring> out;
  for (const auto* s : {"Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z2xZ2", "Z2xZ3", "Z2xZ4", "Z2xZ2xZ2"}) {
    out.push_back(make_ring(s));
  }
  // F4 and Z2[x]/(x^2).
  const std::vector<std::uint32_t> xor4{0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0};
  out.push_back(table_ring(4, xor4, {0, 0, 0, 0, 0, 1, 2, 3, 0, 2, 3, 1, 0, 3, 1, 2}));
  out.push_back(table_ring(4, xor4, {0, 0, 0, 0, 0, 1, 2, 3, 0, 2, 0, 2, 0, 3, 2, 1}));
  return out;
}

inline TauRelation random_pairs(const Ring& r, std::uint32_t seed) {
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

inline std::vector<TauRelation> relations(const Ring& r) {
  return {make_tau(r, "full"), make_tau(r, "comaximal"), random_pairs(r, 11), random_pairs(r, 22),
          random_pairs(r, 33)};
}

/// Deletes the segment between the first two equal prefix products.
inline std::optional<Factorization> contract(const Ring& r, const Factorization& f) {
  std::map<std::uint32_t, std::size_t> seen{{f.unit.id, 0}};
  Element p = f.unit;
  for (std::size_t k = 0; k < f.factors.size(); ++k) {
    p = r.mul(p, f.factors[k]);
    auto [it, fresh] = seen.emplace(p.id, k + 1);
    if (!fresh) {
      Factorization g{f.unit, {}};
      g.factors.insert(g.factors.end(), f.factors.begin(), f.factors.begin() + static_cast<std::ptrdiff_t>(it->second));
      g.factors.insert(g.factors.end(), f.factors.begin() + static_cast<std::ptrdiff_t>(k + 1), f.factors.end());
      return g;
    }
  }
  return std::nullopt;
}

struct Outcome {
  std::size_t pairs = 0;
  std::size_t comparisons = 0;
  std::vector<std::string> mismatches;
};

inline void compare(const Ring& r, const TauRelation& t, Outcome& out) {
  const std::size_t lo = r.size() + 2;
  const std::size_t hi = r.size() + 4;
  Analyzer a(r, t, AnalyzerOptions{lo});
  Analyzer b(r, t, AnalyzerOptions{hi});
  ++out.pairs;
  auto miss = [&](Element x, const std::string& what) {
    std::ostringstream s;
    s << r.name() << " " << t.name() << " " << r.format(x) << ": " << what;
    out.mismatches.push_back(s.str());
  };
  for (auto x : r.non_units()) {
    if (a.irreducibility(x).flags != b.irreducibility(x).flags) miss(x, "irreducibility flags differ");
    ++out.comparisons;
    for (auto beta : kAssocs) {
      auto ea = a.enumerate(x, beta);
      auto eb = b.enumerate(x, beta);
      ++out.comparisons;
      if (ea.exact != eb.exact || ea.max_length != eb.max_length ||
          ea.unbounded_witness.has_value() != eb.unbounded_witness.has_value()) {
        miss(x, "exactness or length bound differs");
      }
      std::set<std::vector<Element>> small;
      for (const auto& e : ea.entries) small.insert(e.key);
      std::set<std::vector<Element>> big_short;
      for (const auto& e : eb.entries) {
        if (e.key.size() <= lo) {
          big_short.insert(e.key);
          continue;
        }
        std::optional<Factorization> g = e.witness;
        while (g && g->factors.size() > lo) g = contract(r, *g);
        if (!g || !check_tau_factorization(r, t, x, *g) || g->factors.size() > lo ||
            !small.count(a.canonical(g->factors, beta))) {
          miss(x, "long factorization does not contract");
        }
      }
      if (small != big_short) miss(x, std::string("canonical sets differ under ") + std::string(to_string(beta)));

      auto ua = a.enumerate_u(x, beta);
      auto ub = b.enumerate_u(x, beta);
      std::vector<std::vector<Element>> ka, kb;
      for (const auto& e : ua.entries) ka.push_back(e.key);
      for (const auto& e : ub.entries) kb.push_back(e.key);
      if (ka != kb) miss(x, "essential multisets differ");
    }
  }
  for (auto p : kProperties) {
    for (auto g : kGrades) {
      if (g != Grade::irreducible && !uses_alpha(p)) continue;
      for (auto beta : kAssocs) {
        if (beta != Assoc::assoc && !uses_beta(p)) continue;
        auto va = check_property(a, p, g, beta);
        auto vb = check_property(b, p, g, beta);
        ++out.comparisons;
        if (va.holds != vb.holds || va.holds_nonzero != vb.holds_nonzero) {
          out.mismatches.push_back(r.name() + " " + t.name() + ": property " + std::string(to_string(p)) + " differs");
        }
      }
    }
  }
}

inline Outcome run() {
  Outcome out;
  for (const auto& r : small_rings()) {
    for (const auto& t : relations(r)) compare(r, t, out);
  }
  return out;
}

}  // namespace capcheck
