#include "tauu/theorem_lab.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "tauu/errors.hpp"
#include "tauu/products.hpp"
#include "tauu/properties.hpp"

namespace tauu {

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::vacuous_pass: return "PASS (vacuous)";
    case Status::skip: return "SKIP";
    case Status::fail: return "FAIL";
  }
  return "?";
}

const std::vector<TheoremInfo>& catalog() {
  static const std::vector<TheoremInfo> items{
      {"HIER-IRR", "very strong => strong, very strong => m, strong => irreducible, m => irreducible, m => strong",
       "m => strong needs a strongly associate ring", false},
      {"REARRANGE", "every τ-factorization rearranges into a τ-U-factorization", "none", false},
      {"REARRANGE-ALPHA", "every τ-α-factorization rearranges into a τ-U-α-factorization", "none", false},
      {"IRR-ONE-ESS", "a is τ-irreducible iff every τ-U-factorization of a has one essential divisor", "none", false},
      {"PRES-CHAIN", "présimplifiable => τ-U-présimplifiable => τ-présimplifiable; all agree for τ full", "none",
       false},
      {"BFR-SQUARE", "(4) => (1), (2) => (3), (1) => (2) for τ refinable, (3) => (4) for R τ-U-présimplifiable",
       "τ refinable; R τ-U-présimplifiable", false},
      {"SA-ESSENTIAL", "a τ-U-α-factorization yields a τ-α-factorization a = μ b1...bm", "R strongly associate",
       false},
      {"GEN-REL-1", "τ-α => τ-U-α", "none", false},
      {"GEN-REL-2", "τ-ACCP => τ-U-ACCP", "none", false},
      {"GEN-REL-3", "τ-BFR => τ-U-BFR", "none", false},
      {"GEN-REL-4", "τ-β-FFR => τ-U-β-FFR", "none", false},
      {"GEN-REL-5", "τ-β-WFFR => τ-U-β-WFFR", "none", false},
      {"GEN-REL-6", "τ-α-β-df => τ-U-α-β-df", "none", false},
      {"GEN-REL-7", "τ-α-HFR => τ-U-α-HFR and τ-α-β-UFR => τ-U-α-β-UFR", "R strongly associate", false},
      {"TAU-U-REL-1", "τ-U-α-β-UFR => τ-U-α-HFR", "none", false},
      {"TAU-U-REL-2", "τ-U-α-β-UFR => τ-U-β-FFR", "R τ-U-refinable", false},
      {"TAU-U-REL-3", "τ-U-α-HFR => τ-U-BFR", "R τ-U-refinable", false},
      {"TAU-U-REL-4", "τ-U-β-FFR => τ-U-BFR", "none", false},
      {"TAU-U-REL-5", "τ-U-β-FFR => τ-U-β-WFFR", "none", false},
      {"TAU-U-REL-6", "τ-U-β-WFFR => τ-U-α-β-df", "none", false},
      {"TAU-U-REL-7", "τ-U-BFR => τ-U-ACCP", "R τ-U-refinable", false},
      {"TAU-U-REL-8", "τ-U-ACCP => τ-U-α", "R τ-U-refinable", false},
      {"FFR-WFFR", "τ-U-β-FFR iff τ-U-β-WFFR", "τ combinable and associate preserving", false},
      {"PROD-ASSOC", "~ and ≈ are coordinatewise; ≅ implies coordinatewise ≅, and conversely for nonzero coordinates",
       "product ring", true},
      {"PROD-ONE-NONUNIT", "a τ_×-α element has exactly one non-unit coordinate", "τ_× relation", true},
      {"PROD-ATOMS", "a is τ_×-α iff one coordinate is τ_i-α (nonzero for very strong) and the rest are units",
       "τ_× relation", true},
      {"PROD-LIFT", "τ_i-U-α-factorizations lift to τ_×-U-α-factorizations and project back",
       "τ_× relation", true},
      {"PROD-UATOMIC", "R is τ_×-U-α iff every R_i is τ_i-U-α", "τ_× relation", true},
      {"PROD-DF", "R is τ_×-U-α-β-df iff every R_i is τ_i-U-α-β-df", "τ_× relation", true},
      {"PROD-BFR", "R is a τ_×-U-BFR iff every R_i is a τ_i-U-BFR", "τ_× relation", true},
      {"PROD-HFR", "R is a τ_×-U-α-HFR iff every R_i is a τ_i-U-α-HFR", "τ_× relation", true},
      {"PROD-UFR", "R is a τ_×-U-α-β-UFR iff every R_i is, for β in {associate, strongly associate}",
       "τ_× relation", true},
      {"Q-UATOMIC", "open: does τ-U-α imply τ-α?", "none", false},
      {"Q-UACCP", "open: does τ-U-ACCP imply τ-ACCP?", "none", false},
  };
  return items;
}

const TheoremInfo& theorem_info(std::string_view id) {
  for (const auto& t : catalog()) {
    if (t.id == id) return t;
  }
  throw UnknownTheorem("unknown theorem id '" + std::string(id) + "'");
}

std::vector<std::string> expand_ids(const std::vector<std::string>& ids) {
  std::vector<std::string> out;
  auto add = [&](const std::string& id) {
    if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
  };
  for (const auto& raw : ids) {
    std::string id;
    for (char c : raw) id += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (id == "ALL") {
      for (const auto& t : catalog()) add(t.id);
      continue;
    }
    bool group = false;
    for (const auto& t : catalog()) {
      if (t.id.size() > id.size() && t.id.compare(0, id.size(), id) == 0 && t.id[id.size()] == '-' &&
          std::isdigit(static_cast<unsigned char>(t.id.back()))) {
        add(t.id);
        group = true;
      }
    }
    if (group) continue;
    add(theorem_info(id).id);
  }
  return out;
}

std::vector<CorpusEntry> default_corpus() {
  std::vector<CorpusEntry> out;
  for (const char* ring : {"Z4", "Z6", "Z8", "Z12", "Z20"}) {
    out.push_back({ring, "full"});
    out.push_back({ring, "comaximal"});
  }
  for (const char* ring : {"Z6xZ8", "Z4xZ9"}) {
    out.push_back({ring, "full"});
    out.push_back({ring, "comaximal"});
    out.push_back({ring, "prod(full,full)"});
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::istream& in, std::string_view source) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto text = trim(line);
    if (text.empty()) continue;
    const auto where = std::string(source) + ":" + std::to_string(lineno);
    const auto bar = text.find('|');
    if (bar == std::string::npos) throw ParseError(where + ": expected 'ring | relation'");
    CorpusEntry e{trim(std::string_view(text).substr(0, bar)), trim(std::string_view(text).substr(bar + 1))};
    if (e.ring.empty() || e.tau.empty()) throw ParseError(where + ": empty ring or relation spec");
    try {
      const auto r = make_ring(e.ring);
      make_tau(r, e.tau);
    } catch (const Error& err) {
      throw ParseError(where + ": " + err.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CorpusEntry> load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open corpus file " + path);
  return parse_corpus(in, path);
}

namespace {

std::string list(const Ring& r, const std::vector<Element>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += ", ";
    s += r.format(xs[i]);
  }
  return s + "}";
}

bool same_multiset(std::vector<Element> a, std::vector<Element> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

/// Shared, lazily filled analysis state for one corpus entry.
struct Lab {
  Ring r;
  TauRelation t;
  Analyzer an;
  std::optional<RingFlags> flags_;
  std::map<std::tuple<Property, Grade, Assoc>, PropertyVerdict> verdicts;
  std::vector<std::unique_ptr<Lab>> comps;

  Lab(Ring r_, TauRelation t_) : r(r_), t(t_), an(r_, t_) {}

  const RingFlags& flags() {
    if (!flags_) flags_ = ring_flags(r);
    return *flags_;
  }
  const RelationReport& rel() { return an.relation_report(); }

  const PropertyVerdict& prop(Property p, Grade g = Grade::irreducible, Assoc b = Assoc::assoc) {
    if (!uses_alpha(p)) g = Grade::irreducible;
    if (!uses_beta(p)) b = Assoc::assoc;
    const auto key = std::make_tuple(p, g, b);
    auto it = verdicts.find(key);
    if (it == verdicts.end()) it = verdicts.emplace(key, check_property(an, p, g, b)).first;
    return it->second;
  }

  bool product() const {
    return r.arity() > 1 && t.kind() == TauKind::product && t.components().size() == r.arity();
  }
  Lab& comp(std::size_t i) {
    if (comps.empty()) {
      for (std::size_t k = 0; k < r.arity(); ++k) {
        comps.push_back(std::make_unique<Lab>(r.factors()[k], t.components()[k]));
      }
    }
    return *comps[i];
  }

  bool tau_full() const {
    for (auto x : r.r_sharp_list()) {
      if (!(t.neighbors(x) == r.r_sharp())) return false;
    }
    return true;
  }
};

std::string label(const PropertyVerdict& v) {
  std::string s = std::string(to_string(v.property));
  if (v.alpha || v.beta) {
    s += "[";
    if (v.alpha) s += "α=" + std::string(to_string(*v.alpha));
    if (v.alpha && v.beta) s += ", ";
    if (v.beta) s += "β=" + std::string(to_string(*v.beta));
    s += "]";
  }
  return s;
}

/// Collects instance outcomes into a report.
struct Acc {
  VerificationReport& rep;
  Lab& L;
  std::set<std::string> noted;

  bool gate(bool hyp, const std::string& what) {
    if (!hyp) {
      ++rep.skipped;
      note("hypothesis false: " + what);
    }
    return hyp;
  }

  void note(const std::string& s) {
    if (noted.insert(s).second) rep.notes.push_back(s);
  }

  template <typename F>
  void instance(bool antecedent, bool consequent, F&& make_cx) {
    ++rep.instances;
    if (!antecedent) return;
    ++rep.nonvacuous;
    if (consequent) return;
    rep.conclusion_holds = false;
    if (!rep.counterexample) rep.counterexample = make_cx();
  }

  void instance(bool antecedent, bool consequent) {
    instance(antecedent, consequent, [] { return Counterexample{}; });
  }
};

// Witness plumbing. Every rendered factorization is re-checked with the
// low-level validators; `revalidated` stays true only if all of them pass.
struct CxBuilder {
  const Ring& r;
  const TauRelation& t;
  Counterexample cx;
  bool ok = true;

  CxBuilder(const Ring& r_, const TauRelation& t_, std::string summary) : r(r_), t(t_) {
    cx.summary = std::move(summary);
  }
  CxBuilder& element(Element a) {
    cx.element = r.format(a);
    return *this;
  }
  CxBuilder& param(const std::string& k, const std::string& v) {
    cx.params[k] = v;
    return *this;
  }
  CxBuilder& factorization(Element a, const Factorization& f) {
    ok = ok && check_tau_factorization(r, t, a, f).ok;
    cx.factorizations.push_back(render(r, f));
    return *this;
  }
  CxBuilder& u_factorization(Element a, const UFactorization& uf) {
    ok = ok && check_u_factorization(r, t, a, uf).ok;
    cx.factorizations.push_back(render(r, uf));
    return *this;
  }
  CxBuilder& detail(std::string s) {
    cx.details.push_back(std::move(s));
    return *this;
  }
  CxBuilder& confirm(bool c) {
    ok = ok && c;
    return *this;
  }
  Counterexample done() {
    cx.revalidated = ok;
    return std::move(cx);
  }
};

std::vector<Grade> grades(const VerifyOptions& o) {
  if (o.alpha) return {*o.alpha};
  return {kGrades.begin(), kGrades.end()};
}
std::vector<Assoc> betas(const VerifyOptions& o) {
  if (o.beta) return {*o.beta};
  return {kAssocs.begin(), kAssocs.end()};
}

/// Low-level check that f violates grade g at a.
bool violates(const Ring& r, Element a, const Factorization& f, Grade g) {
  const auto& fs = f.factors;
  switch (g) {
    case Grade::irreducible:
      return std::none_of(fs.begin(), fs.end(), [&](Element x) { return r.associated(a, x, Assoc::assoc); });
    case Grade::strong:
      return std::none_of(fs.begin(), fs.end(), [&](Element x) { return r.associated(a, x, Assoc::strong); });
    case Grade::m:
      return std::any_of(fs.begin(), fs.end(), [&](Element x) { return !r.associated(a, x, Assoc::assoc); });
    case Grade::very_strong: return fs.size() >= 2;
  }
  return false;
}

/// Property-level material implication ante => cons.
void implication(Acc& acc, const PropertyVerdict& ante, const PropertyVerdict& cons,
                 const std::function<void(CxBuilder&)>& extra = {}) {
  auto& L = acc.L;
  acc.instance(ante.holds, cons.holds, [&] {
    CxBuilder b(L.r, L.t, label(ante) + " holds but " + label(cons) + " fails");
    b.param("antecedent", label(ante)).param("consequent", label(cons));
    if (cons.witness) {
      const auto& w = *cons.witness;
      b.element(w.element).detail(w.detail);
      for (const auto& f : w.factorizations) b.factorization(w.element, f);
      for (const auto& uf : w.u_factorizations) b.u_factorization(w.element, uf);
    }
    if (extra) extra(b);
    // Independent recomputation on a fresh analyzer.
    const auto again = check_property(L.r, L.t, cons.property, cons.alpha, cons.beta);
    const auto ante_again = check_property(L.r, L.t, ante.property, ante.alpha, ante.beta);
    return b.confirm(!again.holds && ante_again.holds).done();
  });
  if (!ante.holds) {
    std::string why = label(ante) + " fails";
    if (ante.witness) why += " at " + L.r.format(ante.witness->element);
    acc.note("antecedent false for some instances: " + why);
  }
  if (!cons.holds_nonzero || !ante.holds_nonzero) return;
  if (ante.holds != ante.holds_nonzero || cons.holds != cons.holds_nonzero) {
    acc.note("readings over nonzero non-units: " + label(ante) + " " + (ante.holds_nonzero ? "holds" : "fails") +
             ", " + label(cons) + " " + (cons.holds_nonzero ? "holds" : "fails"));
  }
}

// ---- element-level theorems ----

void check_hier(Acc& acc, const VerifyOptions&) {
  auto& L = acc.L;
  const bool sa = acc.gate(L.flags().strongly_associate, "R strongly associate (only for m => strong)");
  std::vector<std::pair<Grade, Grade>> arrows{{Grade::very_strong, Grade::strong},
                                              {Grade::very_strong, Grade::m},
                                              {Grade::strong, Grade::irreducible},
                                              {Grade::m, Grade::irreducible}};
  if (sa) arrows.emplace_back(Grade::m, Grade::strong);
  for (auto a : L.r.non_units()) {
    const auto& ir = L.an.irreducibility(a);
    for (auto [from, to] : arrows) {
      acc.instance(ir.holds(from), ir.holds(to), [&] {
        CxBuilder b(L.r, L.t,
                    std::string(to_string(from)) + " element that is not " + std::string(to_string(to)));
        b.element(a).param("from", std::string(to_string(from))).param("to", std::string(to_string(to)));
        const auto& w = ir.witnesses[static_cast<std::size_t>(to)];
        if (w) b.factorization(a, *w).confirm(violates(L.r, a, *w, to));
        return b.done();
      });
    }
  }
}

std::size_t sample_cap(const Lab& L) { return std::min<std::size_t>(L.an.cap(), L.r.size() > 24 ? 5 : 6); }

void check_rearrange(Acc& acc, const VerifyOptions&) {
  auto& L = acc.L;
  const auto cap = sample_cap(L);
  acc.note("checked on τ-factorizations of length <= " + std::to_string(cap) + ", one per ≅-class multiset");
  for (auto a : L.r.non_units()) {
    const auto res = L.an.enumerate(a, Assoc::very_strong, cap);
    for (const auto& e : res.entries) {
      const auto& f = e.witness;
      const auto uf = to_u_factorization(L.r, f);
      const bool ok = check_u_factorization(L.r, L.t, a, uf).ok && uf.unit == f.unit &&
                      same_multiset(uf.flatten().factors, f.factors);
      acc.instance(true, ok, [&] {
        return CxBuilder(L.r, L.t, "rearrangement is not a τ-U-factorization")
            .element(a)
            .factorization(a, f)
            .detail(render(L.r, uf) + ": " + check_u_factorization(L.r, L.t, a, uf).reason)
            .done();
      });
    }
  }
}

void check_rearrange_alpha(Acc& acc, const VerifyOptions& opt) {
  auto& L = acc.L;
  const auto cap = sample_cap(L);
  acc.note("checked on τ-α-factorizations of length <= " + std::to_string(cap) + ", one per ≅-class multiset");
  for (auto g : grades(opt)) {
    const auto& dom = L.an.alpha_set(g);
    for (auto a : L.r.non_units()) {
      const auto res = L.an.enumerate_in(a, Assoc::very_strong, dom, cap);
      for (const auto& e : res.entries) {
        const auto uf = to_u_factorization(L.r, e.witness);
        bool ok = check_u_factorization(L.r, L.t, a, uf).ok;
        for (auto b : uf.essential) ok = ok && L.an.is_alpha(b, g);
        acc.instance(true, ok, [&] {
          return CxBuilder(L.r, L.t, "rearranged τ-α-factorization is not a τ-U-α-factorization")
              .element(a)
              .param("alpha", std::string(to_string(g)))
              .factorization(a, e.witness)
              .detail(render(L.r, uf))
              .done();
        });
      }
    }
  }
}

void check_irr_one_ess(Acc& acc, const VerifyOptions&) {
  auto& L = acc.L;
  for (auto a : L.r.non_units()) {
    const auto& ir = L.an.irreducibility(a);
    const auto& ufs = L.an.u_factorizations(a);
    const auto multi = std::find_if(ufs.begin(), ufs.end(), [](const auto& uf) { return uf.essential.size() != 1; });
    const bool one = multi == ufs.end();
    acc.instance(true, ir.irreducible() == one, [&] {
      CxBuilder b(L.r, L.t, ir.irreducible() ? "irreducible element with several essential divisors"
                                             : "reducible element whose τ-U-factorizations have one essential divisor");
      b.element(a);
      if (multi != ufs.end()) b.u_factorization(a, *multi);
      if (const auto& w = ir.witnesses[0]) b.factorization(a, *w);
      return b.done();
    });
  }
}

void check_pres_chain(Acc& acc, const VerifyOptions&) {
  auto& L = acc.L;
  const auto& p = L.prop(Property::presimplifiable);
  const auto& tu = L.prop(Property::tau_u_presimplifiable);
  const auto& tp = L.prop(Property::tau_presimplifiable);
  implication(acc, p, tu);
  implication(acc, tu, tp);
  if (L.tau_full()) {
    acc.instance(true, p.holds == tp.holds && tp.holds == tu.holds, [&] {
      return CxBuilder(L.r, L.t, "τ full but the présimplifiable variants disagree")
          .detail(std::string("présimplifiable=") + (p.holds ? "true" : "false") +
                  " τ-présimplifiable=" + (tp.holds ? "true" : "false") +
                  " τ-U-présimplifiable=" + (tu.holds ? "true" : "false"))
          .done();
    });
  }
}

void check_bfr_square(Acc& acc, const VerifyOptions&) {
  auto& L = acc.L;
  const auto& r = L.r;
  const auto& bfr = L.prop(Property::bfr);
  const auto& tp = L.prop(Property::tau_presimplifiable);
  const auto& tu = L.prop(Property::tau_u_presimplifiable);
  const auto& ubfr = L.prop(Property::u_bfr);

  const bool s1 = bfr.holds;
  // Chains of principal ideals are bounded by the ideal count on a finite ring.
  const bool s2 = tp.holds;
  const bool s3 = tp.holds && ubfr.holds;
  std::optional<Element> s4_fail, s4_fail_nonzero;
  for (auto a : r.non_units()) {
    if (L.an.inessential_profile(a).max_inessential) continue;
    if (!s4_fail) s4_fail = a;
    if (!r.is_zero(a) && !s4_fail_nonzero) s4_fail_nonzero = a;
  }
  const bool s4 = !s4_fail;
  acc.note("(2) uses the ideal-chain bound, which holds on every finite ring");

  auto verdict_cx = [&](std::string summary, const PropertyVerdict& v) {
    CxBuilder b(r, L.t, std::move(summary));
    if (v.witness) {
      b.element(v.witness->element).detail(v.witness->detail);
      for (const auto& f : v.witness->factorizations) b.factorization(v.witness->element, f);
      for (const auto& uf : v.witness->u_factorizations) b.u_factorization(v.witness->element, uf);
    }
    return b.done();
  };

  acc.instance(s4, s1, [&] { return verdict_cx("(4) holds but R is not a τ-BFR", bfr); });
  acc.instance(s2, s3, [&] { return verdict_cx("(2) holds but (3) fails", ubfr); });
  if (acc.gate(L.rel().refinable, "τ refinable (for (1) => (2))")) {
    acc.instance(s1, s2, [&] { return verdict_cx("(1) holds but R is not τ-présimplifiable", tp); });
  }
  if (acc.gate(tu.holds, "R τ-U-présimplifiable (for (3) => (4))")) {
    acc.instance(s3, s4, [&] {
      const auto a = *s4_fail;
      const auto& prof = L.an.inessential_profile(a);
      CxBuilder b(r, L.t, "(3) holds but " + r.format(a) + " has τ-U-factorizations with unboundedly many inessential divisors");
      b.element(a).param("statement", "(3) => (4)");
      if (prof.pump_base) {
        auto longer = *prof.pump_base;
        for (int k = 0; k < 2; ++k) longer.inessential.insert(longer.inessential.end(), prof.pump_cycle.begin(), prof.pump_cycle.end());
        b.u_factorization(a, *prof.pump_base).u_factorization(a, longer);
        b.detail("inessential part pumps by " + list(r, prof.pump_cycle));
      }
      b.detail(s4_fail_nonzero ? "fails over nonzero non-units too"
                                : "holds over nonzero non-units, the domain of τ-U-présimplifiable");
      return b.done();
    });
    if (s3 && !s4 && !s4_fail_nonzero) {
      acc.note("(3) => (4) fails only at 0; reading (4) over nonzero non-units it holds");
    }
  }
}

void check_sa_essential(Acc& acc, const VerifyOptions& opt) {
  auto& L = acc.L;
  const auto& r = L.r;
  if (!acc.gate(L.flags().strongly_associate, "R strongly associate")) return;
  for (auto g : grades(opt)) {
    for (auto a : r.non_units()) {
      for (const auto& uf : L.an.alpha_u_factorizations(a, g)) {
        const auto mu = r.unit_between(a, r.product_of(uf.essential));
        bool ok = mu.has_value();
        Factorization f{mu.value_or(r.one()), uf.essential};
        ok = ok && check_tau_factorization(r, L.t, a, f).ok;
        for (auto b : uf.essential) ok = ok && L.an.is_alpha(b, g);
        acc.instance(true, ok, [&] {
          return CxBuilder(r, L.t, "essential part does not give a τ-α-factorization")
              .element(a)
              .param("alpha", std::string(to_string(g)))
              .u_factorization(a, uf)
              .done();
        });
      }
    }
  }
}

// ---- implication suite ----

void check_gen_rel(Acc& acc, const VerifyOptions& opt, int n) {
  auto& L = acc.L;
  switch (n) {
    case 1:
      for (auto g : grades(opt)) implication(acc, L.prop(Property::atomic, g), L.prop(Property::u_atomic, g));
      break;
    case 2: implication(acc, L.prop(Property::accp), L.prop(Property::u_accp)); break;
    case 3: implication(acc, L.prop(Property::bfr), L.prop(Property::u_bfr)); break;
    case 4:
      for (auto b : betas(opt)) implication(acc, L.prop(Property::ffr, {}, b), L.prop(Property::u_ffr, {}, b));
      break;
    case 5:
      for (auto b : betas(opt)) implication(acc, L.prop(Property::wffr, {}, b), L.prop(Property::u_wffr, {}, b));
      break;
    case 6:
      for (auto g : grades(opt)) {
        for (auto b : betas(opt)) implication(acc, L.prop(Property::df, g, b), L.prop(Property::u_df, g, b));
      }
      break;
    case 7:
      if (!acc.gate(L.flags().strongly_associate, "R strongly associate")) return;
      for (auto g : grades(opt)) {
        implication(acc, L.prop(Property::hfr, g), L.prop(Property::u_hfr, g));
        for (auto b : betas(opt)) implication(acc, L.prop(Property::ufr, g, b), L.prop(Property::u_ufr, g, b));
      }
      break;
  }
}

void check_tau_u_rel(Acc& acc, const VerifyOptions& opt, int n) {
  auto& L = acc.L;
  const bool needs_uref = n == 2 || n == 3 || n == 7 || n == 8;
  if (needs_uref && !acc.gate(L.rel().tau_u_refinable, "R τ-U-refinable")) return;
  switch (n) {
    case 1:
      for (auto g : grades(opt)) {
        for (auto b : betas(opt)) implication(acc, L.prop(Property::u_ufr, g, b), L.prop(Property::u_hfr, g));
      }
      break;
    case 2:
      for (auto g : grades(opt)) {
        for (auto b : betas(opt)) implication(acc, L.prop(Property::u_ufr, g, b), L.prop(Property::u_ffr, {}, b));
      }
      break;
    case 3:
      for (auto g : grades(opt)) implication(acc, L.prop(Property::u_hfr, g), L.prop(Property::u_bfr));
      break;
    case 4:
      for (auto b : betas(opt)) implication(acc, L.prop(Property::u_ffr, {}, b), L.prop(Property::u_bfr));
      break;
    case 5:
      for (auto b : betas(opt)) implication(acc, L.prop(Property::u_ffr, {}, b), L.prop(Property::u_wffr, {}, b));
      break;
    case 6:
      for (auto g : grades(opt)) {
        for (auto b : betas(opt)) implication(acc, L.prop(Property::u_wffr, {}, b), L.prop(Property::u_df, g, b));
      }
      break;
    case 7:
      acc.note("antecedent read as τ-U-BFR, as in the proof");
      implication(acc, L.prop(Property::u_bfr), L.prop(Property::u_accp));
      break;
    case 8:
      for (auto g : grades(opt)) {
        const auto& cons = L.prop(Property::u_atomic, g);
        // The failing element has no τ-U-α-factorization; list the ones it has
        // and why each essential divisor misses the grade.
        implication(acc, L.prop(Property::u_accp), cons, [&](CxBuilder& b) {
          if (!cons.witness) return;
          const auto a = cons.witness->element;
          Analyzer fresh(L.r, L.t);
          for (const auto& uf : L.an.u_factorizations(a)) {
            b.u_factorization(a, uf);
            for (auto e : uf.essential) {
              const auto& ir = fresh.irreducibility(e);
              b.confirm(!ir.holds(g));
              std::string why = L.r.format(e) + " is not " + std::string(to_string(g));
              if (const auto& w = ir.witnesses[static_cast<std::size_t>(g)]) {
                b.factorization(e, *w);
                why += ": " + render(L.r, *w);
              } else if (ir.self_cofactor) {
                why += ": " + L.r.format(e) + " = " + L.r.format(*ir.self_cofactor) + " * " + L.r.format(e);
              }
              b.detail(why);
            }
          }
        });
      }
      break;
  }
}

void check_ffr_wffr(Acc& acc, const VerifyOptions& opt) {
  auto& L = acc.L;
  const auto& rel = L.rel();
  const bool comb = acc.gate(rel.combinable, "τ combinable");
  const bool ap = acc.gate(rel.associate_preserving[0], "τ associate preserving");
  if (!comb || !ap) return;
  for (auto b : betas(opt)) {
    const auto& ffr = L.prop(Property::u_ffr, {}, b);
    const auto& wffr = L.prop(Property::u_wffr, {}, b);
    acc.instance(true, ffr.holds == wffr.holds, [&] {
      return CxBuilder(L.r, L.t, label(ffr) + " and " + label(wffr) + " disagree").done();
    });
  }
}

// ---- products ----

bool product_gate(Acc& acc) { return acc.gate(acc.L.product(), "relation is a τ_× product of component relations"); }

std::vector<std::size_t> nonunit_coords(const Ring& r, Element a) {
  std::vector<std::size_t> out;
  const auto cs = r.coordinates(a);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!r.factors()[i].is_unit(cs[i])) out.push_back(i);
  }
  return out;
}

void check_prod_assoc(Acc& acc, const VerifyOptions&) {
  auto& L = acc.L;
  const auto& r = L.r;
  if (!acc.gate(r.arity() > 1, "product ring")) return;
  const auto els = r.elements();
  for (auto a : els) {
    const auto ca = r.coordinates(a);
    for (auto b : els) {
      const auto cb = r.coordinates(b);
      std::array<bool, 3> coord{true, true, true};
      bool nonzero = true;
      for (std::size_t i = 0; i < ca.size(); ++i) {
        const auto& ri = r.factors()[i];
        for (std::size_t m = 0; m < 3; ++m) coord[m] = coord[m] && ri.associated(ca[i], cb[i], kAssocs[m]);
        nonzero = nonzero && !ri.is_zero(ca[i]) && !ri.is_zero(cb[i]);
      }
      auto cx = [&](std::string what) {
        return [&, what] {
          return CxBuilder(r, L.t, what)
              .param("a", r.format(a))
              .param("b", r.format(b))
              .confirm(true)
              .done();
        };
      };
      const bool sim = r.associated(a, b, Assoc::assoc);
      const bool approx = r.associated(a, b, Assoc::strong);
      const bool cong = r.associated(a, b, Assoc::very_strong);
      acc.instance(true, sim == coord[0], cx("~ is not coordinatewise"));
      acc.instance(true, approx == coord[1], cx("≈ is not coordinatewise"));
      acc.instance(cong, coord[2], cx("≅ without coordinatewise ≅"));
      acc.instance(nonzero && coord[2], cong, cx("nonzero coordinatewise ≅ without ≅"));
    }
  }
}

void check_prod_one_nonunit(Acc& acc, const VerifyOptions& opt) {
  auto& L = acc.L;
  if (!product_gate(acc)) return;
  for (auto g : grades(opt)) {
    for (auto a : L.r.non_units()) {
      const auto& ir = L.an.irreducibility(a);
      acc.instance(ir.holds(g), nonunit_coords(L.r, a).size() == 1, [&] {
        return CxBuilder(L.r, L.t, std::string(to_string(g)) + " element with several non-unit coordinates")
            .element(a)
            .done();
      });
    }
  }
}

void check_prod_atoms(Acc& acc, const VerifyOptions& opt) {
  auto& L = acc.L;
  if (!product_gate(acc)) return;
  for (auto g : grades(opt)) {
    for (auto a : L.r.non_units()) {
      const bool lhs = L.an.irreducibility(a).holds(g);
      const auto nu = nonunit_coords(L.r, a);
      bool rhs = false;
      if (nu.size() == 1) {
        const auto i = nu.front();
        auto& C = L.comp(i);
        const auto c = L.r.coordinates(a)[i];
        rhs = C.an.irreducibility(c).holds(g) && (g != Grade::very_strong || !C.r.is_zero(c));
      }
      acc.instance(true, lhs == rhs, [&] {
        return CxBuilder(L.r, L.t, "product classification disagrees with the coordinate classification")
            .element(a)
            .param("alpha", std::string(to_string(g)))
            .param("product", lhs ? "true" : "false")
            .param("coordinates", rhs ? "true" : "false")
            .done();
      });
    }
  }
}

void check_prod_lift(Acc& acc, const VerifyOptions& opt) {
  auto& L = acc.L;
  const auto& r = L.r;
  if (!product_gate(acc)) return;
  for (auto g : grades(opt)) {
    // (1) lift
    for (std::size_t i = 0; i < r.arity(); ++i) {
      auto& C = L.comp(i);
      for (auto x : C.r.non_units()) {
        for (const auto& inner : C.an.alpha_u_factorizations(x, g)) {
          const auto lifted = lift_u_factorization(r, L.t, {i + 1, inner});
          const auto target = embed(r, i + 1, x);
          bool ok = check_u_factorization(r, L.t, target, lifted).ok;
          for (auto b : lifted.essential) ok = ok && L.an.is_alpha(b, g);
          acc.instance(true, ok, [&] {
            return CxBuilder(r, L.t, "lifted factorization is not a τ_×-U-α-factorization")
                .element(target)
                .param("coordinate", std::to_string(i + 1))
                .param("alpha", std::string(to_string(g)))
                .u_factorization(target, lifted)
                .done();
          });
        }
      }
    }
    // (2) project
    for (auto a : r.non_units()) {
      const auto nu = nonunit_coords(r, a);
      if (nu.size() != 1) continue;
      const auto i = nu.front();
      auto& C = L.comp(i);
      const auto c = r.coordinates(a)[i];
      for (const auto& uf : L.an.alpha_u_factorizations(a, g)) {
        const auto proj = project_u_factorization(r, L.t, uf, i + 1);
        bool ok = check_u_factorization(C.r, C.t, c, proj).ok;
        for (auto b : proj.essential) ok = ok && C.an.is_alpha(b, g);
        acc.instance(true, ok, [&] {
          return CxBuilder(r, L.t, "projected factorization is not a τ_i-U-α-factorization")
              .element(a)
              .param("coordinate", std::to_string(i + 1))
              .param("alpha", std::string(to_string(g)))
              .u_factorization(a, uf)
              .detail(render(C.r, proj))
              .done();
        });
      }
    }
  }
}

/// Product verdict against the conjunction of component verdicts.
void product_iff(Acc& acc, Property p, Grade g, Assoc b) {
  auto& L = acc.L;
  const auto& lhs = L.prop(p, g, b);
  bool rhs = true, rhs_nonzero = true;
  std::string failing;
  for (std::size_t i = 0; i < L.r.arity(); ++i) {
    const auto& v = L.comp(i).prop(p, g, b);
    if (!v.holds && failing.empty()) failing = L.r.factors()[i].name();
    rhs = rhs && v.holds;
    rhs_nonzero = rhs_nonzero && v.holds_nonzero;
  }
  // Nonzero tuples may carry zero coordinates, so the two readings can split.
  if ((lhs.holds_nonzero == rhs_nonzero) != (lhs.holds == rhs)) {
    acc.note("readings over nonzero non-units: " + label(lhs) + (lhs.holds_nonzero ? " holds" : " fails") +
             " on the product and " + (rhs_nonzero ? "holds" : "fails") + " on every factor");
  }
  acc.instance(true, lhs.holds == rhs, [&] {
    CxBuilder cb(L.r, L.t, label(lhs) + (lhs.holds ? " holds on the product but fails on " + failing
                                                    : " fails on the product but holds on every factor"));
    if (lhs.witness) cb.element(lhs.witness->element).detail(lhs.witness->detail);
    return cb.done();
  });
}

void check_prod_iff(Acc& acc, const VerifyOptions& opt, Property p) {
  if (!product_gate(acc)) return;
  std::vector<Grade> gs = uses_alpha(p) ? grades(opt) : std::vector<Grade>{Grade::irreducible};
  std::vector<Assoc> bs = uses_beta(p) ? betas(opt) : std::vector<Assoc>{Assoc::assoc};
  if (p == Property::u_ufr) {
    if (opt.beta && *opt.beta == Assoc::very_strong) {
      throw InvalidInput("PROD-UFR is stated for β in {associate, strongly associate} only");
    }
    if (!opt.beta) bs = {Assoc::assoc, Assoc::strong};
  }
  for (auto g : gs) {
    for (auto b : bs) product_iff(acc, p, g, b);
  }
}

// ---- open questions ----

void check_q_uatomic(Acc& acc, const VerifyOptions& opt) {
  auto& L = acc.L;
  for (auto g : grades(opt)) implication(acc, L.prop(Property::u_atomic, g), L.prop(Property::atomic, g));
  acc.note("finite rings have finitely many non-associate irreducibles, where U-atomic and atomic are equivalent");
}

void check_q_uaccp(Acc& acc, const VerifyOptions&) {
  auto& L = acc.L;
  implication(acc, L.prop(Property::u_accp), L.prop(Property::accp));
  acc.note("ACCP holds on every finite ring: finitely many principal ideals");
}

void dispatch(Acc& acc, const std::string& id, const VerifyOptions& opt) {
  auto numbered = [&](std::string_view prefix) -> int {
    if (id.size() > prefix.size() && id.compare(0, prefix.size(), prefix) == 0) {
      return std::stoi(id.substr(prefix.size()));
    }
    return 0;
  };
  if (id == "HIER-IRR") return check_hier(acc, opt);
  if (id == "REARRANGE") return check_rearrange(acc, opt);
  if (id == "REARRANGE-ALPHA") return check_rearrange_alpha(acc, opt);
  if (id == "IRR-ONE-ESS") return check_irr_one_ess(acc, opt);
  if (id == "PRES-CHAIN") return check_pres_chain(acc, opt);
  if (id == "BFR-SQUARE") return check_bfr_square(acc, opt);
  if (id == "SA-ESSENTIAL") return check_sa_essential(acc, opt);
  if (int n = numbered("GEN-REL-")) return check_gen_rel(acc, opt, n);
  if (int n = numbered("TAU-U-REL-")) return check_tau_u_rel(acc, opt, n);
  if (id == "FFR-WFFR") return check_ffr_wffr(acc, opt);
  if (id == "PROD-ASSOC") return check_prod_assoc(acc, opt);
  if (id == "PROD-ONE-NONUNIT") return check_prod_one_nonunit(acc, opt);
  if (id == "PROD-ATOMS") return check_prod_atoms(acc, opt);
  if (id == "PROD-LIFT") return check_prod_lift(acc, opt);
  if (id == "PROD-UATOMIC") return check_prod_iff(acc, opt, Property::u_atomic);
  if (id == "PROD-DF") return check_prod_iff(acc, opt, Property::u_df);
  if (id == "PROD-BFR") return check_prod_iff(acc, opt, Property::u_bfr);
  if (id == "PROD-HFR") return check_prod_iff(acc, opt, Property::u_hfr);
  if (id == "PROD-UFR") return check_prod_iff(acc, opt, Property::u_ufr);
  if (id == "Q-UATOMIC") return check_q_uatomic(acc, opt);
  if (id == "Q-UACCP") return check_q_uaccp(acc, opt);
  throw UnknownTheorem("unknown theorem id '" + id + "'");
}

VerificationReport run_one(Lab& L, const CorpusEntry& entry, const std::string& id, const VerifyOptions& opt) {
  VerificationReport rep;
  rep.theorem = theorem_info(id).id;
  rep.entry = entry;
  Acc acc{rep, L, {}};
  dispatch(acc, rep.theorem, opt);
  rep.antecedent_holds = rep.nonvacuous > 0;
  rep.hypotheses_satisfied = rep.instances > 0 || rep.skipped == 0;
  if (!rep.conclusion_holds) {
    rep.status = Status::fail;
  } else if (rep.nonvacuous > 0) {
    rep.status = Status::pass;
  } else if (rep.instances == 0 && rep.skipped > 0) {
    rep.status = Status::skip;
  } else {
    rep.status = Status::vacuous_pass;
  }
  return rep;
}

}  // namespace

VerificationReport verify(const Ring& r, const TauRelation& t, std::string_view id, const VerifyOptions& opt) {
  const std::string key(theorem_info(id).id);
  Lab L(r, t);
  return run_one(L, {r.name(), t.name()}, key, opt);
}

VerificationReport verify(const CorpusEntry& entry, std::string_view id, const VerifyOptions& opt) {
  const std::string key(theorem_info(id).id);
  const auto r = make_ring(entry.ring);
  Lab L(r, make_tau(r, entry.tau));
  return run_one(L, entry, key, opt);
}

CorpusReport run_corpus(const std::vector<CorpusEntry>& corpus, const std::vector<std::string>& ids,
                        const VerifyOptions& opt, unsigned threads) {
  const auto expanded = expand_ids(ids);
  // Parse everything up front so spec errors surface before any work.
  std::vector<std::pair<Ring, TauRelation>> parsed;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    try {
      auto r = make_ring(corpus[k].ring);
      auto t = make_tau(r, corpus[k].tau);
      parsed.emplace_back(std::move(r), std::move(t));
    } catch (const Error& e) {
      throw ParseError("corpus entry " + std::to_string(k + 1) + " (" + corpus[k].ring + " | " + corpus[k].tau +
                       "): " + e.what());
    }
  }

  std::vector<std::vector<VerificationReport>> per_entry(corpus.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (;;) {
      const auto k = next.fetch_add(1);
      if (k >= corpus.size()) return;
      try {
        Lab L(parsed[k].first, parsed[k].second);
        for (const auto& id : expanded) per_entry[k].push_back(run_one(L, corpus[k], id, opt));
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(corpus.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  CorpusReport out;
  for (const auto& id : expanded) out.coverage[id] = 0;
  for (auto& reps : per_entry) {
    for (auto& rep : reps) out.reports.push_back(std::move(rep));
  }
  std::stable_sort(out.reports.begin(), out.reports.end(), [](const auto& a, const auto& b) {
    return std::tie(a.entry.ring, a.entry.tau, a.theorem) < std::tie(b.entry.ring, b.entry.tau, b.theorem);
  });
  for (const auto& rep : out.reports) {
    switch (rep.status) {
      case Status::pass: ++out.pass; break;
      case Status::vacuous_pass: ++out.vacuous; break;
      case Status::skip: ++out.skip; break;
      case Status::fail: ++out.fail; break;
    }
    if (rep.status == Status::pass || rep.status == Status::fail) ++out.coverage[rep.theorem];
  }
  for (const auto& [id, n] : out.coverage) {
    if (n == 0) out.uncovered.push_back(id);
  }
  return out;
}

OpenQuestionReport search_open_question(std::string_view which, const std::vector<CorpusEntry>& samples,
                                        std::size_t budget) {
  const std::string id(theorem_info(which).id);
  if (id != "Q-UATOMIC" && id != "Q-UACCP") throw InvalidInput(id + " is not an open question");
  OpenQuestionReport out;
  out.question = id;
  for (const auto& entry : samples) {
    if (out.sampled >= budget) break;
    ++out.sampled;
    out.entries.push_back(entry);
    const auto r = make_ring(entry.ring);
    Lab L(r, make_tau(r, entry.tau));
    std::string obs = entry.ring + " | " + entry.tau + ":";
    if (id == "Q-UATOMIC") {
      for (auto g : kGrades) {
        const auto& u = L.prop(Property::u_atomic, g);
        const auto& p = L.prop(Property::atomic, g);
        obs += " " + std::string(to_string(g)) + " U=" + (u.holds ? "1" : "0") + " plain=" + (p.holds ? "1" : "0");
        if (u.holds && !p.holds && !out.separation) {
          CxBuilder b(r, L.t, "τ-U-" + std::string(to_string(g)) + " but not τ-" + std::string(to_string(g)));
          b.param("ring", entry.ring).param("tau", entry.tau);
          if (p.witness) b.element(p.witness->element).detail(p.witness->detail);
          out.separation = b.done();
        }
      }
    } else {
      const auto& u = L.prop(Property::u_accp);
      const auto& p = L.prop(Property::accp);
      obs += std::string(" U-ACCP=") + (u.holds ? "1" : "0") + " ACCP=" + (p.holds ? "1" : "0");
      if (u.holds && !p.holds && !out.separation) {
        out.separation = CxBuilder(r, L.t, "τ-U-ACCP but not τ-ACCP").param("ring", entry.ring).done();
      }
    }
    out.observations.push_back(std::move(obs));
  }
  if (!out.separation) {
    out.note = id == "Q-UATOMIC"
                   ? "no separation found: a finite ring has finitely many non-associate irreducibles, and then "
                     "U-atomic and atomic are equivalent, so no finite ring can separate them"
                   : "no separation found: a finite ring has finitely many principal ideals, so ACCP holds and "
                     "no finite ring can separate U-ACCP from ACCP";
  } else {
    out.note = "separation candidate found; see the witness";
  }
  return out;
}

}  // namespace tauu
