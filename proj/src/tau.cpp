#include "tauu/tau.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tauu {

namespace detail {

struct TauData {
  Ring ring;
  TauKind kind = TauKind::full;
  std::string name;
  std::vector<ElementSet> nbr;
  std::vector<TauRelation> components;
  std::vector<std::string> warnings;
  ElementSet empty;
};

}  // namespace detail

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// Element literals on one line of a pairs file: tuples `(x,y)` or plain tokens.
std::vector<std::string> split_literals(const std::string& line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == ';') {
      ++i;
      continue;
    }
    if (c == '(') {
      const auto close = line.find(')', i);
      if (close == std::string::npos) throw ParseError("unbalanced '(' in pairs line: " + line);
      out.push_back(line.substr(i, close - i + 1));
      i = close + 1;
      continue;
    }
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != ',' && line[j] != ';') ++j;
    out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::pair<Element, Element>> read_pairs_file(const Ring& r, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot open pairs file '" + path + "'");
  std::vector<std::pair<Element, Element>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto lits = split_literals(line);
    if (lits.size() != 2) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected two elements, got " + std::to_string(lits.size()));
    }
    out.emplace_back(r.parse_element(lits[0]), r.parse_element(lits[1]));
  }
  return out;
}

// Splits `a,b(c,d),e` on top-level commas.
std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (s[i] == ',' && depth == 0) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  out.push_back(trim(s.substr(start)));
  return out;
}

}  // namespace

TauSpec TauSpec::full() { return TauSpec{}; }

TauSpec TauSpec::comaximal() {
  TauSpec s;
  s.kind = TauKind::comaximal;
  s.source = "comaximal";
  return s;
}

TauSpec TauSpec::from_pairs(std::vector<std::pair<Element, Element>> pairs, std::string label) {
  TauSpec s;
  s.kind = TauKind::pairs;
  s.pairs = std::move(pairs);
  s.source = std::move(label);
  return s;
}

TauSpec TauSpec::product(std::vector<TauSpec> components) {
  TauSpec s;
  s.kind = TauKind::product;
  s.source = "prod(";
  for (std::size_t i = 0; i < components.size(); ++i) s.source += (i ? "," : "") + components[i].source;
  s.source += ")";
  s.components = std::move(components);
  return s;
}

TauSpec TauSpec::parse(std::string_view raw) {
  const std::string text = trim(raw);
  if (text == "full") return full();
  if (text == "comaximal") return comaximal();
  if (text == "empty") return from_pairs({}, "empty");
  if (text.rfind("pairs:", 0) == 0) {
    TauSpec s;
    s.kind = TauKind::pairs;
    s.path = text.substr(6);
    if (s.path.empty()) throw ParseError("malformed relation spec at position 6: missing path after 'pairs:'");
    s.source = text;
    return s;
  }
  if (text.rfind("prod(", 0) == 0) {
    if (text.back() != ')') {
      throw ParseError("malformed relation spec at position " + std::to_string(text.size()) + ": missing ')'");
    }
    std::vector<TauSpec> comps;
    for (const auto& part : split_top_level(std::string_view(text).substr(5, text.size() - 6))) {
      if (part.empty()) throw ParseError("malformed relation spec '" + text + "': empty component");
      comps.push_back(parse(part));
    }
    auto s = product(std::move(comps));
    return s;
  }
  throw ParseError("malformed relation spec at position 0: '" + text + "' (expected full|comaximal|empty|pairs:<path>|prod(...))");
}

const Ring& TauRelation::ring() const noexcept { return data_->ring; }
TauKind TauRelation::kind() const noexcept { return data_->kind; }
const std::string& TauRelation::name() const noexcept { return data_->name; }

bool TauRelation::holds(Element a, Element b) const noexcept {
  return a.id < data_->nbr.size() && data_->nbr[a.id].contains(b);
}

const ElementSet& TauRelation::neighbors(Element x) const noexcept {
  return x.id < data_->nbr.size() ? data_->nbr[x.id] : data_->empty;
}

const std::vector<TauRelation>& TauRelation::components() const noexcept { return data_->components; }
const std::vector<std::string>& TauRelation::warnings() const noexcept { return data_->warnings; }

std::vector<std::pair<Element, Element>> TauRelation::pair_list() const {
  std::vector<std::pair<Element, Element>> out;
  for (auto a : ring().r_sharp_list()) {
    neighbors(a).for_each([&](Element b) {
      if (a <= b) out.emplace_back(a, b);
    });
  }
  return out;
}

TauRelation make_tau(const Ring& r, const TauSpec& spec) {
  auto d = std::make_shared<detail::TauData>(detail::TauData{r, spec.kind, spec.source, {}, {}, {}, ElementSet(r.size())});
  const std::size_t n = r.size();
  d->nbr.assign(n, ElementSet(n));
  const auto& rs = r.r_sharp_list();

  switch (spec.kind) {
    case TauKind::full:
      for (auto a : rs) d->nbr[a.id] = r.r_sharp();
      break;
    case TauKind::comaximal:
      for (auto a : rs) {
        for (auto b : rs) {
          bool unit_found = false;
          r.ideal(a).for_each([&](Element x) {
            if (unit_found) return;
            r.ideal(b).for_each([&](Element y) {
              if (!unit_found && r.is_unit(r.add(x, y))) unit_found = true;
            });
          });
          if (unit_found) d->nbr[a.id].insert(b);
        }
      }
      break;
    case TauKind::pairs: {
      auto pairs = spec.pairs ? *spec.pairs : read_pairs_file(r, spec.path);
      bool asymmetric = false;
      for (auto [a, b] : pairs) {
        r.check(a);
        r.check(b);
        if (!r.in_r_sharp(a) || !r.in_r_sharp(b)) {
          throw InvalidPair("pair (" + r.format(a) + ", " + r.format(b) + ") leaves R^# of " + r.name());
        }
      }
      for (auto [a, b] : pairs) {
        if (a != b && std::find(pairs.begin(), pairs.end(), std::make_pair(b, a)) == pairs.end()) asymmetric = true;
        d->nbr[a.id].insert(b);
        d->nbr[b.id].insert(a);
      }
      if (asymmetric) d->warnings.push_back("pairs relation '" + spec.source + "' was not symmetric; symmetrized");
      break;
    }
    case TauKind::product: {
      if (r.kind() != RingKind::product) throw InvalidSpec("relation '" + spec.source + "' needs a product ring, got " + r.name());
      if (spec.components.size() != r.arity()) {
        throw InvalidSpec("relation '" + spec.source + "' has " + std::to_string(spec.components.size()) +
                          " components but " + r.name() + " has arity " + std::to_string(r.arity()));
      }
      for (std::size_t i = 0; i < r.arity(); ++i) {
        if (spec.components[i].kind == TauKind::product) throw InvalidSpec("nested prod(...) inside '" + spec.source + "'");
        d->components.push_back(make_tau(r.factors()[i], spec.components[i]));
        for (const auto& w : d->components.back().warnings()) d->warnings.push_back(w);
      }
      std::vector<std::vector<Element>> coords(n);
      for (auto a : rs) coords[a.id] = r.coordinates(a);
      for (auto a : rs) {
        for (auto b : rs) {
          bool ok = true;
          for (std::size_t i = 0; i < r.arity() && ok; ++i) {
            const auto& fi = r.factors()[i];
            const auto x = coords[a.id][i];
            const auto y = coords[b.id][i];
            if (!fi.is_unit(x) && !fi.is_unit(y)) ok = d->components[i].holds(x, y);
          }
          if (ok) d->nbr[a.id].insert(b);
        }
      }
      break;
    }
  }
  return TauRelation(std::move(d));
}

TauRelation make_tau(const Ring& r, std::string_view spec_text) { return make_tau(r, TauSpec::parse(spec_text)); }

bool tau_holds(const TauRelation& t, Element a, Element b) { return t.holds(a, b); }

}  // namespace tauu
