#pragma once

#include <deque>
#include <map>
#include <tuple>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tauu/analyzer.hpp"

namespace tauu {

namespace detail {

/// Reachable states of a factor walk, in breadth-first order.
struct Closure {
  struct Node {
    Element p;
    std::uint32_t w = 0;
    bool used = false;
    std::uint32_t parent = 0;
    Element via;
    std::uint32_t depth = 0;
  };
  std::vector<Node> nodes;
  ElementSet reach_any;   // strong representatives of reachable products
  ElementSet reach_used;  // same, after at least one step

  std::vector<Element> path(std::uint32_t node) const;
  /// Shallowest node whose product is ≈ target.
  std::optional<std::uint32_t> find(const Ring& r, Element target, bool need_used) const;
};

struct AtlasEntry {
  std::vector<Element> essential;
  Element product;
  std::uint32_t w = 0;  // factors still compatible with every essential divisor
  const Closure* completions = nullptr;
};

struct SearchSpec {
  Element start_p;
  std::uint32_t start_w = 0;
  const ElementSet* domain = nullptr;
  const ElementSet* mark = nullptr;
  unsigned min_len = 1;
  Element target;
  std::size_t cap = 0;
};

}  // namespace detail

struct Analyzer::Impl {
  Impl(Ring ring, TauRelation tau, AnalyzerOptions o);

  Ring r;
  TauRelation t;
  AnalyzerOptions opt;
  std::size_t cap;
  std::size_t n;
  ElementSet rsharp;

  // Interned compatibility sets; deque keeps references stable.
  std::deque<ElementSet> sets;
  std::unordered_map<ElementSet, std::uint32_t, ElementSetHash> set_ids;
  std::unordered_map<std::uint64_t, std::uint32_t> steps;
  std::uint32_t full_w = 0;

  std::array<std::vector<Element>, 3> reps;

  std::vector<std::optional<IrreducibilityReport>> irr;
  std::array<std::optional<ElementSet>, 4> alpha_sets;
  std::vector<std::optional<LengthProfile>> profiles;
  std::array<std::vector<std::optional<LengthProfile>>, 4> alpha_profiles;

  bool tf_built = false;
  std::vector<const detail::Closure*> tf_closures;  // indexed by element
  std::vector<ElementSet> tf;

  bool atlas_built = false;
  std::vector<detail::AtlasEntry> atlas;
  std::vector<std::vector<std::uint32_t>> atlas_by_rep;
  std::vector<std::optional<ElementSet>> x_sets;  // by ideal id
  std::map<std::tuple<std::uint64_t, std::uint32_t, std::uint32_t, std::size_t>, std::unique_ptr<detail::Closure>> closures;
  std::vector<std::optional<std::vector<UFactorization>>> ufs;
  std::vector<std::optional<InessentialProfile>> iprofiles;

  std::optional<RelationReport> report;

  std::uint32_t intern(const ElementSet& s);
  std::uint32_t step(std::uint32_t w, Element y);
  bool same_strong(Element a, Element b) const { return r.strong_rep(a) == r.strong_rep(b); }

  std::optional<std::vector<Element>> bfs(const detail::SearchSpec& s);
  LengthProfile profile(Element start_p, std::uint32_t start_w, const ElementSet& domain, Element target,
                        bool allow_empty);
  const detail::Closure& closure(Element p, std::uint32_t w, const ElementSet& domain, std::uint64_t domain_tag,
                                 std::size_t max_depth);
  /// {x in R^# : (x·b) = (b)} for the ideal of b.
  const ElementSet& x_set(Element b);

  void build_tf();
  void build_atlas();
  bool essential_ok(const std::vector<Element>& e) const;
  UFactorization entry_witness(const detail::AtlasEntry& e, Element a, bool need_used) const;
  Factorization to_factorization(Element a, const std::vector<Element>& path) const;
  void require_nonunit(Element a, const char* what) const;
};

}  // namespace tauu
