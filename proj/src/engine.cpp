#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>

#include "analyzer_impl.hpp"

namespace tauu {

using detail::Closure;

namespace {

std::uint64_t state_key(std::uint32_t w, Element p, unsigned extra) {
  return (std::uint64_t{w} << 24) | (std::uint64_t{p.id} << 8) | extra;
}

}  // namespace

std::size_t default_cap(const Ring& r) {
  if (const char* env = std::getenv("TAUU_CAP")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return r.size() + 2;
}

Analyzer::Impl::Impl(Ring ring, TauRelation tau, AnalyzerOptions o)
    : r(std::move(ring)), t(std::move(tau)), opt(o), n(r.size()), rsharp(r.r_sharp()) {
  if (!(t.ring() == r)) throw InvalidInput("relation " + t.name() + " was built over a different ring");
  cap = opt.cap ? *opt.cap : default_cap(r);
  full_w = intern(rsharp);

  for (auto& v : reps) {
    v.resize(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = Element{static_cast<std::uint32_t>(i)};
  }
  const auto& rs = r.r_sharp_list();
  for (auto x : rs) {
    for (auto y : rs) {
      if (r.ideal_id(x) == r.ideal_id(y)) {
        reps[0][x.id] = y;
        break;
      }
    }
    reps[1][x.id] = r.strong_rep(x);
  }
  // ≅ classes: connected components of the ≅ graph on R^#.
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto x : rs) {
    for (auto y : rs) {
      if (x < y && r.associated(x, y, Assoc::very_strong)) {
        auto a = find(x.id);
        auto b = find(y.id);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  for (auto x : rs) reps[2][x.id] = Element{find(x.id)};

  irr.resize(n);
  profiles.resize(n);
  for (auto& v : alpha_profiles) v.resize(n);
  ufs.resize(n);
  iprofiles.resize(n);
}

std::uint32_t Analyzer::Impl::intern(const ElementSet& s) {
  auto it = set_ids.find(s);
  if (it != set_ids.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(sets.size());
  sets.push_back(s);
  set_ids.emplace(s, id);
  return id;
}

std::uint32_t Analyzer::Impl::step(std::uint32_t w, Element y) {
  const std::uint64_t key = (std::uint64_t{w} << 20) | y.id;
  auto it = steps.find(key);
  if (it != steps.end()) return it->second;
  const auto id = intern(sets[w] & t.neighbors(y));
  steps.emplace(key, id);
  return id;
}

void Analyzer::Impl::require_nonunit(Element a, const char* what) const {
  r.check(a);
  if (r.is_unit(a)) throw NotFactorable(std::string(what) + ": " + r.format(a) + " is a unit of " + r.name());
}

Factorization Analyzer::Impl::to_factorization(Element a, const std::vector<Element>& path) const {
  Factorization f{r.one(), path};
  const auto q = r.product_of(path);
  auto u = r.unit_between(a, q);
  if (!u) throw Error("internal: " + r.format(q) + " is not a unit multiple of " + r.format(a));
  f.unit = *u;
  return f;
}

std::optional<std::vector<Element>> Analyzer::Impl::bfs(const detail::SearchSpec& s) {
  struct Node {
    Element p;
    std::uint32_t w;
    unsigned cnt;
    bool flag;
    std::uint32_t parent;
    Element via;
  };
  const auto target_rep = r.strong_rep(s.target);
  auto accepts = [&](const Node& nd) {
    return r.strong_rep(nd.p) == target_rep && nd.cnt >= s.min_len && (s.mark == nullptr || nd.flag);
  };
  auto rebuild = [](const std::vector<Node>& nodes, std::uint32_t i) {
    std::vector<Element> path;
    while (i != 0) {
      path.push_back(nodes[i].via);
      i = nodes[i].parent;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  std::vector<Node> nodes{{s.start_p, s.start_w, 0, false, 0, Element{}}};
  if (accepts(nodes[0])) return std::vector<Element>{};
  std::unordered_set<std::uint64_t> seen{state_key(s.start_w, s.start_p, 0)};
  std::size_t lo = 0;
  for (std::size_t depth = 0; depth < s.cap && lo < nodes.size(); ++depth) {
    const std::size_t hi = nodes.size();
    for (std::size_t i = lo; i < hi; ++i) {
      const Node cur = nodes[i];
      const ElementSet& w = sets[cur.w];
      std::optional<std::uint32_t> hit;
      w.for_each([&](Element y) {
        if (hit || !s.domain->contains(y)) return;
        const auto p = r.mul(cur.p, y);
        if (!r.divides(p, s.target)) return;
        const unsigned cnt = std::min(cur.cnt + 1, std::max(s.min_len, 1U));
        const bool flag = cur.flag || (s.mark != nullptr && s.mark->contains(y));
        const auto nw = step(cur.w, y);
        if (!seen.insert(state_key(nw, p, cnt | (flag ? 128U : 0U))).second) return;
        nodes.push_back({p, nw, cnt, flag, static_cast<std::uint32_t>(i), y});
        if (accepts(nodes.back())) hit = static_cast<std::uint32_t>(nodes.size() - 1);
      });
      if (hit) return rebuild(nodes, *hit);
    }
    lo = hi;
  }
  return std::nullopt;
}

LengthProfile Analyzer::Impl::profile(Element start_p, std::uint32_t start_w, const ElementSet& domain, Element target,
                                      bool allow_empty) {
  struct Edge {
    std::uint32_t to;
    Element via;
  };
  std::vector<std::pair<Element, std::uint32_t>> nodes{{start_p, start_w}};
  std::vector<std::vector<Edge>> out(1);
  std::unordered_map<std::uint64_t, std::uint32_t> index{{state_key(start_w, start_p, 0), 0}};
  std::vector<std::uint32_t> bfs_parent{0};
  std::vector<Element> bfs_via{Element{}};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto [p0, w0] = nodes[i];
    sets[w0].for_each([&](Element y) {
      if (!domain.contains(y)) return;
      const auto p = r.mul(p0, y);
      if (!r.divides(p, target)) return;
      const auto nw = step(w0, y);
      const auto key = state_key(nw, p, 0);
      auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(nodes.size()));
      if (fresh) {
        nodes.emplace_back(p, nw);
        out.emplace_back();
        bfs_parent.push_back(static_cast<std::uint32_t>(i));
        bfs_via.push_back(y);
      }
      out[i].push_back({it->second, y});
    });
  }
  const std::size_t count = nodes.size();
  const auto target_rep = r.strong_rep(target);
  std::vector<char> accept(count, 0);
  for (std::size_t i = 0; i < count; ++i) accept[i] = r.strong_rep(nodes[i].first) == target_rep;
  if (!allow_empty) accept[0] = 0;

  std::vector<std::vector<Edge>> in(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& e : out[i]) in[e.to].push_back({static_cast<std::uint32_t>(i), e.via});
  }
  std::vector<char> useful(count, 0);
  std::vector<std::uint32_t> stack;
  for (std::size_t i = 0; i < count; ++i) {
    if (accept[i]) {
      useful[i] = 1;
      stack.push_back(static_cast<std::uint32_t>(i));
    }
  }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (const auto& e : in[v]) {
      if (!useful[e.to]) {
        useful[e.to] = 1;
        stack.push_back(e.to);
      }
    }
  }

  LengthProfile prof;
  if (!useful[0]) return prof;
  prof.factorable = true;

  auto tree_path = [&](std::uint32_t v) {
    std::vector<Element> path;
    while (v != 0) {
      path.push_back(bfs_via[v]);
      v = bfs_parent[v];
    }
    std::reverse(path.begin(), path.end());
    return path;
  };
  // BFS order is layered, so the first accepting node is the shallowest.
  for (std::uint32_t i = 0; i < count; ++i) {
    if (accept[i]) {
      prof.shortest = tree_path(i);
      prof.min_length = prof.shortest->size();
      break;
    }
  }

  // Kahn on the useful subgraph.
  std::vector<std::uint32_t> indeg(count, 0);
  for (std::size_t i = 0; i < count; ++i) {
    if (!useful[i]) continue;
    for (const auto& e : out[i]) {
      if (useful[e.to]) ++indeg[e.to];
    }
  }
  std::vector<std::uint32_t> order;
  std::vector<std::uint32_t> queue;
  std::size_t useful_count = 0;
  for (std::size_t i = 0; i < count; ++i) {
    if (useful[i]) {
      ++useful_count;
      if (indeg[i] == 0) queue.push_back(static_cast<std::uint32_t>(i));
    }
  }
  std::vector<char> done(count, 0);
  while (!queue.empty()) {
    const auto v = queue.back();
    queue.pop_back();
    done[v] = 1;
    order.push_back(v);
    for (const auto& e : out[v]) {
      if (useful[e.to] && --indeg[e.to] == 0) queue.push_back(e.to);
    }
  }

  if (order.size() < useful_count) {
    // Walk predecessors inside the unresolved part until a node repeats.
    std::uint32_t v = 0;
    for (std::uint32_t i = 0; i < count; ++i) {
      if (useful[i] && !done[i]) {
        v = i;
        break;
      }
    }
    std::vector<std::uint32_t> trail;
    std::unordered_map<std::uint32_t, std::size_t> pos;
    while (!pos.count(v)) {
      pos[v] = trail.size();
      trail.push_back(v);
      for (const auto& e : in[v]) {
        if (useful[e.to] && !done[e.to]) {
          v = e.to;
          break;
        }
      }
    }
    // trail[k+1] -> trail[k] are edges and v -> trail.back() closes the loop.
    std::vector<std::uint32_t> forward{v};
    for (std::size_t k = trail.size(); k-- > pos[v] + 1;) forward.push_back(trail[k]);
    forward.push_back(v);
    std::vector<Element> cycle;
    for (std::size_t k = 0; k + 1 < forward.size(); ++k) {
      for (const auto& e : out[forward[k]]) {
        if (e.to == forward[k + 1]) {
          cycle.push_back(e.via);
          break;
        }
      }
    }
    // Suffix: shortest path from v to an accepting node.
    std::vector<std::int64_t> sp(count, -1);
    std::vector<Element> sv(count);
    std::vector<std::uint32_t> q{v};
    sp[v] = v;
    std::optional<std::uint32_t> goal;
    for (std::size_t qi = 0; qi < q.size() && !goal; ++qi) {
      const auto u = q[qi];
      if (accept[u]) {
        goal = u;
        break;
      }
      for (const auto& e : out[u]) {
        if (sp[e.to] < 0) {
          sp[e.to] = u;
          sv[e.to] = e.via;
          q.push_back(e.to);
        }
      }
    }
    std::vector<Element> suffix;
    for (auto u = *goal; u != v; u = static_cast<std::uint32_t>(sp[u])) suffix.push_back(sv[u]);
    std::reverse(suffix.begin(), suffix.end());
    auto prefix = tree_path(v);
    PumpCycle pump;
    pump.prefix_length = prefix.size();
    pump.partial_product = nodes[v].first;
    pump.cycle = cycle;
    pump.base.factors = prefix;
    pump.base.factors.insert(pump.base.factors.end(), suffix.begin(), suffix.end());
    pump.base.unit = r.one();
    const auto q2 = r.mul(start_p, r.product_of(pump.base.factors));
    if (auto u = r.unit_between(target, q2)) pump.base.unit = *u;
    prof.pump = std::move(pump);
    return prof;
  }

  std::vector<std::int64_t> dist(count, -1);
  std::vector<std::uint32_t> dpar(count, 0);
  std::vector<Element> dvia(count);
  dist[0] = 0;
  for (auto v : order) {
    if (dist[v] < 0) continue;
    for (const auto& e : out[v]) {
      if (useful[e.to] && dist[v] + 1 > dist[e.to]) {
        dist[e.to] = dist[v] + 1;
        dpar[e.to] = v;
        dvia[e.to] = e.via;
      }
    }
  }
  std::int64_t best = -1;
  std::uint32_t best_node = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (accept[i] && dist[i] > best) {
      best = dist[i];
      best_node = i;
    }
  }
  prof.max_length = static_cast<std::size_t>(best);
  std::vector<Element> longest;
  for (auto v = best_node; v != 0; v = dpar[v]) longest.push_back(dvia[v]);
  std::reverse(longest.begin(), longest.end());
  prof.longest = std::move(longest);
  return prof;
}

std::vector<Element> Closure::path(std::uint32_t i) const {
  std::vector<Element> out;
  while (i != 0) {
    out.push_back(nodes[i].via);
    i = nodes[i].parent;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::optional<std::uint32_t> Closure::find(const Ring& r, Element target, bool need_used) const {
  const auto rep = r.strong_rep(target);
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if ((!need_used || nodes[i].used) && r.strong_rep(nodes[i].p) == rep) return i;
  }
  return std::nullopt;
}

const Closure& Analyzer::Impl::closure(Element p0, std::uint32_t w0, const ElementSet& domain, std::uint64_t domain_tag,
                                       std::size_t max_depth) {
  const auto key = std::make_tuple(domain_tag, w0, p0.id, max_depth);
  auto it = closures.find(key);
  if (it != closures.end()) return *it->second;
  auto c = std::make_unique<Closure>();
  c->reach_any = ElementSet(n);
  c->reach_used = ElementSet(n);
  c->nodes.push_back({p0, w0, false, 0, Element{}, 0});
  std::unordered_set<std::uint64_t> seen{state_key(w0, p0, 0)};
  for (std::size_t i = 0; i < c->nodes.size(); ++i) {
    const auto cur = c->nodes[i];
    c->reach_any.insert(r.strong_rep(cur.p));
    if (cur.used) c->reach_used.insert(r.strong_rep(cur.p));
    if (cur.depth >= max_depth) continue;
    sets[cur.w].for_each([&](Element y) {
      if (!domain.contains(y)) return;
      const auto p = r.mul(cur.p, y);
      const auto nw = step(cur.w, y);
      if (!seen.insert(state_key(nw, p, 1)).second) return;
      c->nodes.push_back({p, nw, true, static_cast<std::uint32_t>(i), y, cur.depth + 1});
    });
  }
  auto& ref = *c;
  closures.emplace(key, std::move(c));
  return ref;
}

const ElementSet& Analyzer::Impl::x_set(Element b) {
  const auto id = r.ideal_id(b);
  if (x_sets.size() < r.ideal_count()) x_sets.resize(r.ideal_count());
  if (!x_sets[id]) {
    ElementSet s(n);
    for (auto x : r.r_sharp_list()) {
      if (r.ideal_id(r.mul(x, b)) == id) s.insert(x);
    }
    x_sets[id] = std::move(s);
  }
  return *x_sets[id];
}

void Analyzer::Impl::build_tf() {
  if (tf_built) return;
  tf_built = true;
  tf_closures.assign(n, nullptr);
  tf.assign(n, ElementSet(n));
  const std::size_t depth = cap > 0 ? cap - 1 : 0;
  for (auto b : r.r_sharp_list()) {
    const auto& c = closure(b, step(full_w, b), rsharp, 0, depth);
    tf_closures[b.id] = &c;
    c.reach_any.for_each([&](Element rep) {
      for (auto a : r.non_units()) {
        if (r.strong_rep(a) == rep) tf[a.id].insert(b);
      }
    });
  }
}

bool Analyzer::Impl::essential_ok(const std::vector<Element>& e) const {
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (j > 0 && e[j] == e[j - 1]) continue;
    Element rest = r.one();
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (k != j) rest = r.mul(rest, e[k]);
    }
    if (r.ideal_id(r.mul(rest, e[j])) == r.ideal_id(rest)) return false;
  }
  return true;
}

void Analyzer::Impl::build_atlas() {
  if (atlas_built) return;
  atlas_built = true;
  const auto& rs = r.r_sharp_list();
  const std::size_t depth = cap > 0 ? cap - 1 : 0;
  std::vector<Element> e;
  std::function<void(std::size_t, Element, std::uint32_t)> grow = [&](std::size_t from, Element b, std::uint32_t w) {
    for (std::size_t i = from; i < rs.size(); ++i) {
      const auto x = rs[i];
      if (!sets[w].contains(x)) continue;
      e.push_back(x);
      if (essential_ok(e)) {
        const auto nb = r.mul(b, x);
        const auto nw = step(w, x);
        const auto& dom = x_set(nb);
        const auto& c = closure(nb, nw, dom, r.ideal_id(nb) + 1, depth);
        atlas.push_back({e, nb, nw, &c});
        grow(i, nb, nw);
      }
      e.pop_back();
    }
  };
  grow(0, r.one(), full_w);

  atlas_by_rep.assign(n, {});
  for (std::uint32_t i = 0; i < atlas.size(); ++i) {
    atlas[i].completions->reach_any.for_each([&](Element rep) { atlas_by_rep[rep.id].push_back(i); });
  }
}

UFactorization Analyzer::Impl::entry_witness(const detail::AtlasEntry& e, Element a, bool need_used) const {
  auto node = e.completions->find(r, a, need_used);
  UFactorization uf{r.one(), e.completions->path(*node), e.essential};
  const auto q = r.mul(e.product, r.product_of(uf.inessential));
  uf.unit = *r.unit_between(a, q);
  return uf;
}

}  // namespace tauu
