#include "tauu/report.hpp"

#include <iomanip>
#include <sstream>

namespace tauu {

namespace {

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string join(const Ring& r, const std::vector<Element>& xs, std::string_view sep = ", ") {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += sep;
    s += r.format(xs[i]);
  }
  return s;
}

Json triple(const Ring& r, const std::optional<RelationReport::Triple>& t) {
  if (!t) return nullptr;
  return to_json(r, std::vector<Element>{(*t)[0], (*t)[1], (*t)[2]});
}

}  // namespace

Json to_json(const Ring& r, const std::vector<Element>& xs) {
  Json out = Json::array();
  for (auto x : xs) out.push_back(r.format(x));
  return out;
}

Json to_json(const Ring& r, const Factorization& f) {
  return Json{{"unit", r.format(f.unit)}, {"factors", to_json(r, f.factors)}, {"text", render(r, f)}};
}

Json to_json(const Ring& r, const UFactorization& uf) {
  return Json{{"unit", r.format(uf.unit)},
              {"inessential", to_json(r, uf.inessential)},
              {"essential", to_json(r, uf.essential)},
              {"text", render(r, uf)}};
}

Json to_json(const Ring& r, const PumpCycle& p) {
  return Json{{"base", to_json(r, p.base)},
              {"prefix_length", p.prefix_length},
              {"partial_product", r.format(p.partial_product)},
              {"cycle", to_json(r, p.cycle)},
              {"pumped_once", to_json(r, p.pumped(1))}};
}

Json to_json(const Ring& r, const IrreducibilityReport& rep) {
  Json flags = Json::object();
  Json witnesses = Json::object();
  for (auto g : kGrades) {
    const auto k = std::string(to_string(g));
    flags[k] = rep.holds(g);
    const auto& w = rep.witnesses[static_cast<std::size_t>(g)];
    witnesses[k] = w ? to_json(r, *w) : Json(nullptr);
  }
  return Json{{"element", r.format(rep.element)},
              {"flags", flags},
              {"witnesses", witnesses},
              {"self_very_strong", rep.self_very_strong},
              {"self_cofactor", rep.self_cofactor ? Json(r.format(*rep.self_cofactor)) : Json(nullptr)}};
}

Json to_json(const Ring& r, const RelationReport& rep) {
  Json out;
  out["multiplicative"] = {{"holds", rep.multiplicative}, {"witness", triple(r, rep.multiplicative_witness)}};
  out["divisive"] = {{"holds", rep.divisive}, {"witness", triple(r, rep.divisive_witness)}};
  Json ap = Json::object();
  for (std::size_t m = 0; m < 3; ++m) {
    ap[std::string(to_string(kAssocs[m]))] = {{"holds", rep.associate_preserving[m]},
                                              {"witness", triple(r, rep.associate_preserving_witness[m])}};
  }
  out["associate_preserving"] = ap;
  Json comb{{"holds", rep.combinable}, {"witness", nullptr}};
  if (const auto& w = rep.combinable_witness) {
    comb["witness"] = {{"factors", to_json(r, w->factors)}, {"position", w->position}, {"reason", w->reason}};
  }
  out["combinable"] = comb;
  Json ref{{"holds", rep.refinable}, {"witness", nullptr}};
  if (const auto& w = rep.refinable_witness) {
    Json subs = Json::array();
    for (std::size_t i = 0; i < w->subs.size(); ++i) {
      subs.push_back(to_json(r, Factorization{w->sub_units[i], w->subs[i]}));
    }
    ref["witness"] = {{"factors", to_json(r, w->factors)},
                      {"refinements", subs},
                      {"incompatible", to_json(r, std::vector<Element>{w->b, w->c})}};
  }
  out["refinable"] = ref;
  Json uref{{"holds", rep.tau_u_refinable}, {"witness", nullptr}};
  if (const auto& w = rep.tau_u_refinable_witness) {
    uref["witness"] = {{"element", r.format(w->target_element)},
                       {"outer", to_json(r, UFactorization{w->unit, w->inessential, w->essential})},
                       {"refined", r.format(w->refined)},
                       {"inner", to_json(r, UFactorization{w->sub_unit, w->sub_inessential, w->sub_essential})},
                       {"reason", w->reason}};
  }
  out["tau_u_refinable"] = uref;
  return out;
}

Json to_json(const Ring& r, const PropertyVerdict& v) {
  Json out{{"property", std::string(to_string(v.property))},
           {"alpha", v.alpha ? Json(std::string(to_string(*v.alpha))) : Json(nullptr)},
           {"beta", v.beta ? Json(std::string(to_string(*v.beta))) : Json(nullptr)},
           {"holds", v.holds},
           {"holds_nonzero", v.holds_nonzero},
           {"bound", v.bound ? Json(*v.bound) : Json(nullptr)},
           {"bound_element", v.bound_element ? Json(r.format(*v.bound_element)) : Json(nullptr)},
           {"note", v.note},
           {"witness", nullptr}};
  if (!v.chain.empty()) out["chain"] = to_json(r, v.chain);
  if (const auto& w = v.witness) {
    Json fs = Json::array();
    for (const auto& f : w->factorizations) fs.push_back(to_json(r, f));
    Json ufs = Json::array();
    for (const auto& uf : w->u_factorizations) ufs.push_back(to_json(r, uf));
    out["witness"] = {{"element", r.format(w->element)},
                      {"detail", w->detail},
                      {"factorizations", fs},
                      {"u_factorizations", ufs},
                      {"pump", w->pump ? to_json(r, *w->pump) : Json(nullptr)}};
  }
  return out;
}

Json to_json(const Counterexample& cx) {
  Json params = Json::object();
  for (const auto& [k, v] : cx.params) params[k] = v;
  return Json{{"summary", cx.summary},
              {"element", cx.element.empty() ? Json(nullptr) : Json(cx.element)},
              {"params", params},
              {"factorizations", cx.factorizations},
              {"details", cx.details},
              {"revalidated", cx.revalidated}};
}

Json to_json(const VerificationReport& rep) {
  return Json{{"theorem", rep.theorem},
              {"ring", rep.entry.ring},
              {"tau", rep.entry.tau},
              {"status", std::string(to_string(rep.status))},
              {"hypotheses_satisfied", rep.hypotheses_satisfied},
              {"antecedent_holds", rep.antecedent_holds},
              {"conclusion_holds", rep.conclusion_holds},
              {"instances", rep.instances},
              {"nonvacuous", rep.nonvacuous},
              {"skipped", rep.skipped},
              {"notes", rep.notes},
              {"counterexample", rep.counterexample ? to_json(*rep.counterexample) : Json(nullptr)}};
}

Json to_json(const CorpusReport& rep) {
  Json reports = Json::array();
  for (const auto& r : rep.reports) reports.push_back(to_json(r));
  Json coverage = Json::object();
  for (const auto& [id, n] : rep.coverage) coverage[id] = n;
  return Json{{"totals", {{"pass", rep.pass}, {"vacuous_pass", rep.vacuous}, {"skip", rep.skip}, {"fail", rep.fail}}},
              {"coverage", coverage},
              {"uncovered", rep.uncovered},
              {"reports", reports}};
}

Json to_json(const OpenQuestionReport& rep) {
  Json entries = Json::array();
  for (const auto& e : rep.entries) entries.push_back({{"ring", e.ring}, {"tau", e.tau}});
  return Json{{"question", rep.question},
              {"sampled", rep.sampled},
              {"entries", entries},
              {"observations", rep.observations},
              {"separation", rep.separation ? to_json(*rep.separation) : Json(nullptr)},
              {"note", rep.note}};
}

Json ring_info_json(const Ring& r) {
  const auto flags = ring_flags(r);
  const auto part = r.partition();
  Json factors = Json::array();
  for (const auto& f : r.factors()) factors.push_back(f.name());
  Json out{{"name", r.name()},
           {"size", r.size()},
           {"units", to_json(r, part.units)},
           {"r_sharp", to_json(r, part.r_sharp)},
           {"principal_ideals", r.ideal_count()},
           {"ideal_chain_height", r.ideal_chain_height()},
           {"strongly_associate", flags.strongly_associate},
           {"presimplifiable", flags.presimplifiable},
           {"factors", factors}};
  if (flags.strongly_associate_witness) {
    out["strongly_associate_witness"] =
        to_json(r, std::vector<Element>{flags.strongly_associate_witness->first, flags.strongly_associate_witness->second});
  }
  if (flags.presimplifiable_witness) {
    out["presimplifiable_witness"] =
        to_json(r, std::vector<Element>{flags.presimplifiable_witness->first, flags.presimplifiable_witness->second});
  }
  return out;
}

std::string render_text(const Ring& r, const IrreducibilityReport& rep) {
  std::ostringstream os;
  os << r.format(rep.element) << ":";
  for (auto g : kGrades) os << " " << to_string(g) << "=" << (rep.holds(g) ? "yes" : "no");
  os << "\n";
  for (auto g : kGrades) {
    if (const auto& w = rep.witnesses[static_cast<std::size_t>(g)]) {
      os << "  not " << to_string(g) << ": " << render(r, *w) << "\n";
    }
  }
  if (!rep.self_very_strong && rep.self_cofactor) {
    os << "  not very strongly associate to itself: " << r.format(rep.element) << " = "
       << r.format(*rep.self_cofactor) << " * " << r.format(rep.element) << "\n";
  }
  return os.str();
}

std::string render_text(const Ring& r, const RelationReport& rep) {
  std::ostringstream os;
  auto line = [&](std::string_view name, bool holds, const std::optional<RelationReport::Triple>& w) {
    os << std::left << std::setw(28) << name << yes(holds);
    if (w) os << "  (" << join(r, {(*w)[0], (*w)[1], (*w)[2]}) << ")";
    os << "\n";
  };
  line("multiplicative", rep.multiplicative, rep.multiplicative_witness);
  line("divisive", rep.divisive, rep.divisive_witness);
  for (std::size_t m = 0; m < 3; ++m) {
    line(std::string(to_string(kAssocs[m])) + " preserving", rep.associate_preserving[m],
         rep.associate_preserving_witness[m]);
  }
  os << std::left << std::setw(28) << "combinable" << yes(rep.combinable);
  if (const auto& w = rep.combinable_witness) os << "  (" << join(r, w->factors, " * ") << ": " << w->reason << ")";
  os << "\n" << std::setw(28) << "refinable" << yes(rep.refinable);
  if (const auto& w = rep.refinable_witness) {
    os << "  (" << join(r, w->factors, " * ") << " refines to incompatible " << r.format(w->b) << ", "
       << r.format(w->c) << ")";
  }
  os << "\n" << std::setw(28) << "tau-U-refinable" << yes(rep.tau_u_refinable);
  if (const auto& w = rep.tau_u_refinable_witness) {
    os << "  (" << render(r, UFactorization{w->unit, w->inessential, w->essential}) << " with "
       << r.format(w->refined) << " = " << render(r, UFactorization{w->sub_unit, w->sub_inessential, w->sub_essential})
       << ": " << w->reason << ")";
  }
  os << "\n";
  return os.str();
}

std::string render_text(const Ring& r, const PropertyVerdict& v) {
  std::ostringstream os;
  os << to_string(v.property);
  if (v.alpha) os << " alpha=" << to_string(*v.alpha);
  if (v.beta) os << " beta=" << to_string(*v.beta);
  os << ": " << (v.holds ? "holds" : "fails");
  if (v.holds != v.holds_nonzero) os << " (over nonzero non-units: " << (v.holds_nonzero ? "holds" : "fails") << ")";
  if (v.bound) {
    os << ", bound " << *v.bound;
    if (v.bound_element) os << " at " << r.format(*v.bound_element);
  }
  os << "\n";
  if (!v.note.empty()) os << "  " << v.note << "\n";
  if (!v.chain.empty()) os << "  longest chain: " << join(r, v.chain, " -> ") << "\n";
  if (const auto& w = v.witness) {
    os << "  witness " << r.format(w->element) << ": " << w->detail << "\n";
    for (const auto& f : w->factorizations) os << "    " << render(r, f) << "\n";
    for (const auto& uf : w->u_factorizations) os << "    " << render(r, uf) << "\n";
    if (w->pump) os << "    pump cycle " << join(r, w->pump->cycle, " * ") << "\n";
  }
  return os.str();
}

std::string render_text(const VerificationReport& rep) {
  std::ostringstream os;
  os << rep.theorem << " on " << rep.entry.ring << " | " << rep.entry.tau << ": " << to_string(rep.status) << " ("
     << rep.nonvacuous << "/" << rep.instances << " non-vacuous";
  if (rep.skipped > 0) os << ", " << rep.skipped << " skipped";
  os << ")\n";
  for (const auto& n : rep.notes) os << "  note: " << n << "\n";
  if (const auto& cx = rep.counterexample) {
    os << "  counterexample: " << cx->summary;
    if (!cx->element.empty()) os << " at " << cx->element;
    os << (cx->revalidated ? " [revalidated]" : " [NOT revalidated]") << "\n";
    for (const auto& [k, v] : cx->params) os << "    " << k << " = " << v << "\n";
    for (const auto& f : cx->factorizations) os << "    " << f << "\n";
    for (const auto& d : cx->details) os << "    " << d << "\n";
  }
  return os.str();
}

std::string render_text(const CorpusReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "ring" << std::setw(18) << "relation" << std::setw(18) << "theorem"
     << std::setw(16) << "status" << "instances\n";
  for (const auto& r : rep.reports) {
    os << std::setw(16) << r.entry.ring << std::setw(18) << r.entry.tau << std::setw(18) << r.theorem
       << std::setw(16) << to_string(r.status) << r.nonvacuous << "/" << r.instances << "\n";
  }
  for (const auto& r : rep.reports) {
    if (r.status == Status::fail) os << "\n" << render_text(r);
  }
  os << "\nPASS " << rep.pass << "  vacuous PASS " << rep.vacuous << "  SKIP " << rep.skip << "  FAIL " << rep.fail
     << "\n";
  if (rep.uncovered.empty()) {
    os << "coverage: every theorem has a non-vacuous instance\n";
  } else {
    os << "coverage: no non-vacuous instance for";
    for (const auto& id : rep.uncovered) os << " " << id;
    os << "\n";
  }
  return os.str();
}

std::string render_text(const OpenQuestionReport& rep) {
  std::ostringstream os;
  os << rep.question << ": sampled " << rep.sampled << " (ring, relation) pairs\n";
  for (const auto& o : rep.observations) os << "  " << o << "\n";
  if (rep.separation) {
    os << "separation: " << rep.separation->summary;
    if (!rep.separation->element.empty()) os << " at " << rep.separation->element;
    os << "\n";
  }
  os << rep.note << "\n";
  return os.str();
}

std::string ring_info_text(const Ring& r) {
  const auto flags = ring_flags(r);
  const auto part = r.partition();
  std::ostringstream os;
  os << r.name() << ": " << r.size() << " elements\n";
  os << "units:              " << join(r, part.units) << "\n";
  os << "nonzero non-units:  " << join(r, part.r_sharp) << "\n";
  os << "principal ideals:   " << r.ideal_count() << ", chain height " << r.ideal_chain_height() << "\n";
  os << "strongly associate: " << yes(flags.strongly_associate) << "\n";
  os << "presimplifiable:    " << yes(flags.presimplifiable);
  if (const auto& w = flags.presimplifiable_witness) {
    os << "  (" << r.format(w->first) << " = " << r.format(w->first) << " * " << r.format(w->second) << ")";
  }
  os << "\n";
  return os.str();
}

}  // namespace tauu
