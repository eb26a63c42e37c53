// tauu: command-line front end for the τ-U-factorization library.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tauu/errors.hpp"
#include "tauu/report.hpp"

using namespace tauu;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Args {
  std::string ring;
  std::string tau = "full";
  std::string elem;
  std::string alpha;
  std::string beta;
  std::string prop;
  std::string format = "text";
  std::string corpus;
  std::vector<std::string> ids;
  std::string moduli;
  std::string question;
  std::size_t budget = 1000;
  std::size_t cap = 0;
  unsigned threads = 0;
  /// Bare operands, assigned in order to ring, tau and elem slots not set by flags.
  std::vector<std::string> operands;
};

/// Thrown for bad arguments that CLI11 cannot catch itself.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Context {
  Ring r;
  TauRelation t;
  Analyzer an;
};

std::unique_ptr<Context> open(const Args& a) {
  if (a.ring.empty()) throw Usage("--ring is required");
  auto r = make_ring(a.ring);
  auto t = make_tau(r, a.tau);
  AnalyzerOptions opt;
  if (a.cap > 0) opt.cap = a.cap;
  auto ctx = std::make_unique<Context>(Context{r, t, Analyzer(r, t, opt)});
  for (const auto& w : t.warnings()) std::cerr << "warning: " << w << "\n";
  return ctx;
}

Element element(const Context& c, const Args& a) {
  if (a.elem.empty()) throw Usage("--elem is required");
  return c.r.parse_element(a.elem);
}

std::optional<Grade> alpha_of(const Args& a) {
  if (a.alpha.empty()) return std::nullopt;
  return parse_grade(a.alpha);
}
std::optional<Assoc> beta_of(const Args& a) {
  if (a.beta.empty()) return std::nullopt;
  return parse_assoc(a.beta);
}

std::string product_text(const Ring& r, const std::vector<Element>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? " * " : "") + r.format(xs[i]);
  return s;
}

Json header(const std::string& verb, const Args& a) {
  Json doc{{"schema", kSchemaVersion}, {"command", verb}};
  if (!a.ring.empty()) doc["ring"] = a.ring;
  return doc;
}

struct Output {
  Json doc;
  std::string text;
  int code = kExitOk;
};

Output ring_info(const Args& a) {
  if (a.ring.empty()) throw Usage("--ring is required");
  const auto r = make_ring(a.ring);
  Output o{header("ring-info", a), ring_info_text(r)};
  o.doc["result"] = ring_info_json(r);
  return o;
}

Output factorize(const Args& a) {
  auto c = open(a);
  const auto x = element(*c, a);
  const auto beta = beta_of(a).value_or(Assoc::assoc);
  const auto res = c->an.enumerate(x, beta);
  const auto& prof = c->an.length_profile(x);

  Output o{header("factorize", a), {}};
  Json entries = Json::array();
  std::ostringstream os;
  os << "τ-factorizations of " << c->r.format(x) << " up to rearrangement and " << to_string(beta) << ":\n";
  for (const auto& e : res.entries) {
    entries.push_back({{"key", to_json(c->r, e.key)}, {"witness", to_json(c->r, e.witness)}});
    os << "  " << render(c->r, e.witness) << "\n";
  }
  if (res.entries.empty()) os << "  none\n";
  o.doc["tau"] = a.tau;
  o.doc["element"] = c->r.format(x);
  o.doc["beta"] = std::string(to_string(beta));
  o.doc["result"] = {{"entries", entries},
                     {"exact", res.exact},
                     {"cap", res.cap_used},
                     {"truncated", res.truncated},
                     {"max_length", prof.max_length ? Json(*prof.max_length) : Json(nullptr)},
                     {"unbounded", prof.pump ? to_json(c->r, *prof.pump) : Json(nullptr)}};
  if (prof.pump) {
    os << "unbounded: inserting " << product_text(c->r, prof.pump->cycle)
       << " after position " << prof.pump->prefix_length << " of " << render(c->r, prof.pump->base)
       << " repeats forever\n";
    os << "listing capped at length " << res.cap_used << "\n";
  } else if (prof.factorable) {
    os << "lengths " << prof.min_length << ".." << *prof.max_length << (res.exact ? ", complete" : "") << "\n";
  }
  if (res.truncated) os << "enumeration budget exhausted; listing is partial\n";
  o.text = os.str();
  return o;
}

Output ufactorize(const Args& a) {
  auto c = open(a);
  const auto x = element(*c, a);
  const auto beta = beta_of(a).value_or(Assoc::assoc);
  const auto res = c->an.enumerate_u(x, beta);
  const auto& iness = c->an.inessential_profile(x);

  Output o{header("ufactorize", a), {}};
  std::ostringstream os;
  os << "τ-U-factorizations of " << c->r.format(x) << " by essential part up to " << to_string(beta) << ":\n";
  Json entries = Json::array();
  for (const auto& e : res.entries) {
    entries.push_back({{"key", to_json(c->r, e.key)}, {"witness", to_json(c->r, e.witness)}});
    os << "  " << render(c->r, e.witness) << "\n";
  }
  if (res.entries.empty()) os << "  none\n";
  os << "max essential divisors: " << res.max_essential << "\n";
  if (iness.max_inessential) {
    os << "max inessential divisors: " << *iness.max_inessential << "\n";
  } else if (iness.pump_base) {
    auto longer = *iness.pump_base;
    longer.inessential.insert(longer.inessential.end(), iness.pump_cycle.begin(), iness.pump_cycle.end());
    os << "inessential divisors unbounded: " << render(c->r, *iness.pump_base) << " -> " << render(c->r, longer)
       << " -> ... (repeat " << product_text(c->r, iness.pump_cycle) << ")\n";
  }
  o.doc["tau"] = a.tau;
  o.doc["element"] = c->r.format(x);
  o.doc["beta"] = std::string(to_string(beta));
  o.doc["result"] = {
      {"entries", entries},
      {"max_essential", res.max_essential},
      {"max_inessential", iness.max_inessential ? Json(*iness.max_inessential) : Json(nullptr)},
      {"inessential_pump",
       iness.pump_base ? Json{{"base", to_json(c->r, *iness.pump_base)}, {"cycle", to_json(c->r, iness.pump_cycle)}}
                       : Json(nullptr)}};
  o.text = os.str();
  return o;
}

Output classify(const Args& a) {
  auto c = open(a);
  std::vector<Element> xs;
  if (a.elem.empty()) {
    xs = c->r.non_units();
  } else {
    xs = {element(*c, a)};
  }
  Output o{header("classify", a), {}};
  o.doc["tau"] = a.tau;
  Json out = Json::array();
  for (auto x : xs) {
    const auto& rep = c->an.irreducibility(x);
    out.push_back(to_json(c->r, rep));
    o.text += render_text(c->r, rep);
  }
  o.doc["result"] = out;
  return o;
}

Output inventory(const Args& a) {
  auto c = open(a);
  const auto x = element(*c, a);
  const auto beta = beta_of(a).value_or(Assoc::assoc);
  const auto alpha = alpha_of(a);
  const auto inv = c->an.essential_inventory(x, beta, alpha);
  Output o{header("inventory", a), {}};
  o.doc["tau"] = a.tau;
  o.doc["element"] = c->r.format(x);
  o.doc["beta"] = std::string(to_string(beta));
  o.doc["alpha"] = alpha ? Json(std::string(to_string(*alpha))) : Json(nullptr);
  o.doc["result"] = to_json(c->r, inv);
  std::ostringstream os;
  os << "essential divisors of " << c->r.format(x) << " up to " << to_string(beta);
  if (alpha) os << ", " << to_string(*alpha) << " only";
  os << ": {";
  for (std::size_t i = 0; i < inv.size(); ++i) os << (i ? ", " : "") << c->r.format(inv[i]);
  os << "}\n";
  o.text = os.str();
  return o;
}

Output check_relation(const Args& a) {
  auto c = open(a);
  const auto& rep = c->an.relation_report();
  Output o{header("check-relation", a), render_text(c->r, rep)};
  o.doc["tau"] = a.tau;
  o.doc["result"] = to_json(c->r, rep);
  return o;
}

Output check_ring(const Args& a) {
  auto c = open(a);
  Output o{header("check-ring", a), {}};
  o.doc["tau"] = a.tau;
  std::vector<Property> props;
  if (a.prop.empty()) {
    props.assign(kProperties.begin(), kProperties.end());
  } else {
    props = {parse_property(a.prop)};
  }
  Json out = Json::array();
  for (auto p : props) {
    const auto v = check_property(c->an, p, alpha_of(a), beta_of(a));
    out.push_back(to_json(c->r, v));
    o.text += render_text(c->r, v);
    if (!a.prop.empty() && !v.holds) o.code = kExitFail;
  }
  o.doc["result"] = out;
  return o;
}

std::vector<CorpusEntry> corpus_of(const Args& a) {
  if (!a.moduli.empty()) {
    const auto dash = a.moduli.find('-');
    if (dash == std::string::npos) throw Usage("--moduli expects FROM-TO");
    std::size_t lo = 0, hi = 0;
    try {
      lo = std::stoul(a.moduli.substr(0, dash));
      hi = std::stoul(a.moduli.substr(dash + 1));
    } catch (const std::exception&) {
      throw Usage("--moduli expects FROM-TO");
    }
    if (lo < 2 || hi < lo) throw Usage("--moduli needs 2 <= FROM <= TO");
    std::vector<CorpusEntry> out;
    for (auto n = lo; n <= hi; ++n) out.push_back({"Z" + std::to_string(n), a.tau});
    return out;
  }
  if (a.corpus.empty() || a.corpus == "default") return default_corpus();
  return load_corpus(a.corpus);
}

Output verify_cmd(const Args& a) {
  std::vector<CorpusEntry> corpus;
  if (!a.ring.empty()) {
    const auto r = make_ring(a.ring);
    make_tau(r, a.tau);
    corpus = {{a.ring, a.tau}};
  } else {
    corpus = corpus_of(a);
  }
  const auto ids = a.ids.empty() ? std::vector<std::string>{"all"} : a.ids;
  VerifyOptions opt{alpha_of(a), beta_of(a)};
  const auto rep = run_corpus(corpus, ids, opt, a.threads);
  Output o{header("verify", a), {}};
  if (!a.ring.empty()) o.doc["tau"] = a.tau;
  o.doc["result"] = to_json(rep);
  if (corpus.size() == 1) {
    for (const auto& r : rep.reports) o.text += render_text(r);
  } else {
    o.text = render_text(rep);
  }
  o.code = rep.fail > 0 ? kExitFail : kExitOk;
  return o;
}

Output corpus_cmd(const Args& a) {
  const auto corpus = corpus_of(a);
  Output o{header("corpus", a), {}};
  if (!a.question.empty()) {
    if (a.budget == 0) throw Usage("--budget must be at least 1");
    const auto rep = search_open_question(a.question, corpus, a.budget);
    o.doc["result"] = to_json(rep);
    o.text = render_text(rep);
    o.code = rep.separation ? kExitFail : kExitOk;
    return o;
  }
  Json entries = Json::array();
  for (const auto& e : corpus) {
    entries.push_back({{"ring", e.ring}, {"tau", e.tau}});
    o.text += e.ring + " | " + e.tau + "\n";
  }
  o.doc["result"] = entries;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Factorization with respect to a relation τ in finite commutative rings"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* sub, bool with_tau) {
    sub->add_option("--ring", a.ring, "ring spec: Zn, A x B, table:<path>");
    sub->add_option("operands", a.operands, "RING [TAU [ELEM]] given without flags");
    if (with_tau) {
      sub->add_option("--tau", a.tau, "relation spec: full, comaximal, empty, pairs:<path>, prod(...)")
          ->capture_default_str();
      sub->add_option("--cap", a.cap, "length cap for capped searches (default |R|+2 or TAUU_CAP)");
    }
    sub->add_option("--format", a.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };
  auto elem = [&](CLI::App* sub) { sub->add_option("--elem", a.elem, "element: integer or (x,y,...) tuple"); };
  auto alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", a.alpha, "irreducible, strong, m or very-strong");
  };
  auto beta = [&](CLI::App* sub) { sub->add_option("--beta", a.beta, "assoc, strong or very-strong"); };

  auto* ring_info_app = app.add_subcommand("ring-info", "units, ideals and ring-level flags");
  common(ring_info_app, false);
  auto* factorize_app = app.add_subcommand("factorize", "τ-factorizations of an element");
  common(factorize_app, true);
  elem(factorize_app);
  beta(factorize_app);
  auto* ufactorize_app = app.add_subcommand("ufactorize", "τ-U-factorizations of an element");
  common(ufactorize_app, true);
  elem(ufactorize_app);
  beta(ufactorize_app);
  auto* classify_app = app.add_subcommand("classify", "irreducibility grades of one or all non-units");
  common(classify_app, true);
  elem(classify_app);
  auto* inventory_app = app.add_subcommand("inventory", "essential divisors of an element");
  common(inventory_app, true);
  elem(inventory_app);
  alpha(inventory_app);
  beta(inventory_app);
  auto* relation_app = app.add_subcommand("check-relation", "structural flags of τ");
  common(relation_app, true);
  auto* ring_app = app.add_subcommand("check-ring", "factorization properties of (R, τ)");
  common(ring_app, true);
  ring_app->add_option("--prop", a.prop, "property name, e.g. U-BFR; all when omitted");
  alpha(ring_app);
  beta(ring_app);
  auto* verify_app = app.add_subcommand("verify", "check theorems on one pair or a corpus");
  common(verify_app, true);
  verify_app->add_option("--corpus", a.corpus, "corpus file, or 'default'");
  verify_app->add_option("--ids", a.ids, "theorem IDs, group prefixes or 'all'")->delimiter(',');
  verify_app->add_option("--threads", a.threads, "worker threads (default: hardware)");
  alpha(verify_app);
  beta(verify_app);
  auto* corpus_app = app.add_subcommand("corpus", "list a corpus or search it for an open-question separation");
  common(corpus_app, false);
  corpus_app->add_option("--tau", a.tau, "relation used with --moduli")->capture_default_str();
  corpus_app->add_option("--corpus", a.corpus, "corpus file, or 'default'");
  corpus_app->add_option("--moduli", a.moduli, "generate Zn for n in FROM-TO");
  corpus_app->add_option("--question", a.question, "Q-UATOMIC or Q-UACCP");
  corpus_app->add_option("--budget", a.budget, "maximum number of sampled pairs")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const bool json = a.format == "json";
  {
    auto* sub = app.get_subcommands().front();
    std::vector<std::pair<std::string*, const char*>> slots{{&a.ring, "--ring"}};
    if (sub->get_option_no_throw("--tau") != nullptr && sub->get_name() != "corpus") slots.push_back({&a.tau, "--tau"});
    if (sub->get_option_no_throw("--elem") != nullptr) slots.push_back({&a.elem, "--elem"});
    std::size_t next = 0;
    for (auto [dst, flag] : slots) {
      if (next == a.operands.size()) break;
      if (sub->get_option(flag)->count() == 0) *dst = a.operands[next++];
    }
    if (next != a.operands.size()) {
      std::cerr << "error: unexpected operand '" << a.operands[next] << "'\n";
      return kExitUsage;
    }
  }
  auto report_error = [&](std::string_view kind, const std::string& msg, int code) {
    if (json) {
      Json doc{{"schema", kSchemaVersion}, {"error", {{"type", kind}, {"message", msg}}}};
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cerr << "error: " << msg << "\n";
    }
    return code;
  };

  try {
    Output out;
    auto* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();
    if (verb == "ring-info") out = ring_info(a);
    else if (verb == "factorize") out = factorize(a);
    else if (verb == "ufactorize") out = ufactorize(a);
    else if (verb == "classify") out = classify(a);
    else if (verb == "inventory") out = inventory(a);
    else if (verb == "check-relation") out = check_relation(a);
    else if (verb == "check-ring") out = check_ring(a);
    else if (verb == "verify") out = verify_cmd(a);
    else out = corpus_cmd(a);

    if (json) {
      std::cout << out.doc.dump(2) << "\n";
    } else {
      std::cout << out.text;
    }
    return out.code;
  } catch (const Usage& e) {
    return report_error("usage", e.what(), kExitUsage);
  } catch (const InvalidSpec& e) {
    return report_error("InvalidSpec", e.what(), kExitUsage);
  } catch (const ParseError& e) {
    return report_error("ParseError", e.what(), kExitUsage);
  } catch (const RangeError& e) {
    return report_error("RangeError", e.what(), kExitUsage);
  } catch (const InvalidCoordinate& e) {
    return report_error("InvalidCoordinate", e.what(), kExitUsage);
  } catch (const UnknownTheorem& e) {
    return report_error("UnknownTheorem", e.what(), kExitUsage);
  } catch (const InvalidInput& e) {
    return report_error("InvalidInput", e.what(), kExitUsage);
  } catch (const Error& e) {
    return report_error("Error", e.what(), kExitFail);
  }
}
