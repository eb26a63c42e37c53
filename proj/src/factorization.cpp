#include "tauu/factorization.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

namespace tauu {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string join(const Ring& r, const std::vector<Element>& xs, std::string_view sep = " * ") {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += r.format(xs[i]);
  }
  return out;
}

std::vector<Element> parse_product(const Ring& r, std::string_view text) {
  std::vector<Element> out;
  if (trim(text).empty()) return out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '*') {
      auto tok = trim(text.substr(start, i - start));
      if (tok.empty()) throw ParseError("missing factor at position " + std::to_string(start) + " of '" + std::string(text) + "'");
      out.push_back(r.parse_element(tok));
      start = i + 1;
    }
  }
  return out;
}

Element product_without_one(const Ring& r, const std::vector<Element>& xs, std::size_t skip) {
  Element p = r.one();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i != skip) p = r.mul(p, xs[i]);
  }
  return p;
}

}  // namespace

Factorization UFactorization::flatten() const {
  Factorization f{unit, inessential};
  f.factors.insert(f.factors.end(), essential.begin(), essential.end());
  return f;
}

Element evaluate(const Ring& r, const Factorization& f) { return r.mul(f.unit, r.product_of(f.factors)); }
Element evaluate(const Ring& r, const UFactorization& uf) { return evaluate(r, uf.flatten()); }

Diagnosis check_tau_factorization(const Ring& r, const TauRelation& t, Element a, const Factorization& f) {
  if (!r.contains(a)) return Diagnosis::fail("target outside carrier");
  if (!r.contains(f.unit) || !r.is_unit(f.unit)) return Diagnosis::fail("leading factor is not a unit");
  if (f.factors.empty()) return Diagnosis::fail("no factors");
  for (auto x : f.factors) {
    if (!r.contains(x) || !r.in_r_sharp(x)) {
      return Diagnosis::fail("factor " + (r.contains(x) ? r.format(x) : std::to_string(x.id)) + " is not a nonzero non-unit", x);
    }
  }
  const auto value = evaluate(r, f);
  if (value != a) return Diagnosis::fail("evaluates to " + r.format(value) + ", not " + r.format(a));
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    for (std::size_t j = i + 1; j < f.factors.size(); ++j) {
      if (!t.holds(f.factors[i], f.factors[j])) {
        return Diagnosis::fail("factors " + r.format(f.factors[i]) + " and " + r.format(f.factors[j]) + " (positions " +
                                   std::to_string(i + 1) + ", " + std::to_string(j + 1) + ") are not τ-related",
                               f.factors[j]);
      }
    }
  }
  return Diagnosis::pass();
}

Diagnosis check_u_conditions(const Ring& r, const UFactorization& uf) {
  if (!r.contains(uf.unit) || !r.is_unit(uf.unit)) return Diagnosis::fail("leading factor is not a unit");
  if (uf.essential.empty()) return Diagnosis::fail("no essential divisors");
  for (const auto* part : {&uf.inessential, &uf.essential}) {
    for (auto x : *part) {
      if (!r.contains(x) || !r.in_r_sharp(x)) return Diagnosis::fail("factor is not a nonzero non-unit", x);
    }
  }
  const auto b = r.product_of(uf.essential);
  for (auto x : uf.inessential) {
    if (r.ideal_id(r.mul(x, b)) != r.ideal_id(b)) {
      return Diagnosis::fail("condition (1) fails: inessential divisor " + r.format(x) + " shrinks the essential ideal", x);
    }
  }
  for (std::size_t j = 0; j < uf.essential.size(); ++j) {
    const auto rest = product_without_one(r, uf.essential, j);
    if (r.ideal_id(r.mul(uf.essential[j], rest)) == r.ideal_id(rest)) {
      return Diagnosis::fail("condition (2) fails: essential divisor " + r.format(uf.essential[j]) + " is inessential",
                             uf.essential[j]);
    }
  }
  return Diagnosis::pass();
}

Diagnosis check_u_factorization(const Ring& r, const TauRelation& t, Element a, const UFactorization& uf) {
  if (auto d = check_tau_factorization(r, t, a, uf.flatten()); !d) return d;
  return check_u_conditions(r, uf);
}

std::vector<UFactorization> u_split(const Ring& r, const Factorization& f) {
  std::map<Element, std::size_t> counts;
  for (auto x : f.factors) ++counts[x];
  std::vector<std::pair<Element, std::size_t>> distinct(counts.begin(), counts.end());
  std::vector<std::size_t> take(distinct.size(), 0);  // copies placed in the inessential part
  std::set<std::pair<std::vector<Element>, std::vector<Element>>> seen;
  std::vector<UFactorization> out;
  while (true) {
    UFactorization uf{f.unit, {}, {}};
    for (std::size_t i = 0; i < distinct.size(); ++i) {
      uf.inessential.insert(uf.inessential.end(), take[i], distinct[i].first);
      uf.essential.insert(uf.essential.end(), distinct[i].second - take[i], distinct[i].first);
    }
    if (!uf.essential.empty() && check_u_conditions(r, uf)) {
      if (seen.emplace(uf.inessential, uf.essential).second) out.push_back(uf);
    }
    std::size_t i = 0;
    while (i < distinct.size() && take[i] == distinct[i].second) take[i++] = 0;
    if (i == distinct.size()) break;
    ++take[i];
  }
  std::sort(out.begin(), out.end(), [](const UFactorization& a, const UFactorization& b) {
    return std::tie(a.inessential, a.essential) < std::tie(b.inessential, b.essential);
  });
  return out;
}

UFactorization to_u_factorization(const Ring& r, const Factorization& f) {
  UFactorization uf{f.unit, {}, f.factors};
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t i = 0; i < uf.essential.size() && uf.essential.size() > 1;) {
      const auto rest = product_without_one(r, uf.essential, i);
      if (r.ideal_id(r.mul(uf.essential[i], rest)) == r.ideal_id(rest)) {
        uf.inessential.push_back(uf.essential[i]);
        uf.essential.erase(uf.essential.begin() + static_cast<std::ptrdiff_t>(i));
        moved = true;
      } else {
        ++i;
      }
    }
  }
  if (auto d = check_u_conditions(r, uf); !d) {
    throw FixpointFailure("rearrangement of " + render(r, f) + " did not reach a U-factorization: " + d.reason);
  }
  return uf;
}

RefinementResult apply_refinement(const Ring& r, const TauRelation& t, const Factorization& f, std::size_t position,
                                  const Factorization& sub) {
  if (position >= f.factors.size()) {
    throw InvalidRefinement("position " + std::to_string(position) + " out of range for " + render(r, f));
  }
  const auto target = f.factors[position];
  if (auto d = check_tau_factorization(r, t, target, sub); !d) {
    throw InvalidRefinement(render(r, sub) + " is not a τ-factorization of " + r.format(target) + ": " + d.reason);
  }
  RefinementResult out;
  out.result.unit = r.mul(f.unit, sub.unit);
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    if (i == position) {
      out.result.factors.insert(out.result.factors.end(), sub.factors.begin(), sub.factors.end());
    } else {
      out.result.factors.push_back(f.factors[i]);
    }
  }
  auto d = check_tau_factorization(r, t, evaluate(r, f), out.result);
  out.valid = d.ok;
  out.reason = d.reason;
  return out;
}

URefinementResult apply_u_refinement(const Ring& r, const TauRelation& t, const UFactorization& uf, Element target,
                                     const UFactorization& sub) {
  auto it = std::find(uf.essential.begin(), uf.essential.end(), target);
  if (it == uf.essential.end()) {
    throw InvalidTarget(r.format(target) + " is not an essential divisor of " + render(r, uf));
  }
  if (auto d = check_u_factorization(r, t, target, sub); !d) {
    throw InvalidRefinement(render(r, sub) + " is not a τ-U-factorization of " + r.format(target) + ": " + d.reason);
  }
  URefinementResult out;
  out.result.unit = r.mul(uf.unit, sub.unit);
  out.result.inessential = uf.inessential;
  out.result.inessential.insert(out.result.inessential.end(), sub.inessential.begin(), sub.inessential.end());
  for (auto e = uf.essential.begin(); e != uf.essential.end(); ++e) {
    if (e == it) {
      out.result.essential.insert(out.result.essential.end(), sub.essential.begin(), sub.essential.end());
    } else {
      out.result.essential.push_back(*e);
    }
  }
  auto d = check_u_factorization(r, t, evaluate(r, uf), out.result);
  out.valid = d.ok;
  out.reason = d.reason;
  out.culprit = d.culprit;
  return out;
}

std::string render(const Ring& r, const Factorization& f) {
  std::string out = r.format(f.unit);
  if (!f.factors.empty()) out += " * " + join(r, f.factors);
  return out;
}

std::string render(const Ring& r, const UFactorization& uf) {
  std::string out = r.format(uf.unit);
  if (!uf.inessential.empty()) out += " * " + join(r, uf.inessential);
  return out + " [ " + join(r, uf.essential) + " ]";
}

Factorization parse_factorization(const Ring& r, std::string_view text) {
  auto xs = parse_product(r, text);
  if (xs.empty()) throw ParseError("empty factorization");
  Factorization f{xs.front(), {}};
  f.factors.assign(xs.begin() + 1, xs.end());
  return f;
}

UFactorization parse_u_factorization(const Ring& r, std::string_view text) {
  const auto open = text.find('[');
  const auto close = text.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
    throw ParseError("U-factorization needs a bracketed essential part: '" + std::string(text) + "'");
  }
  if (!trim(text.substr(close + 1)).empty()) throw ParseError("trailing text after ']'");
  auto head = parse_product(r, text.substr(0, open));
  if (head.empty()) throw ParseError("U-factorization is missing its unit");
  UFactorization uf{head.front(), {}, parse_product(r, text.substr(open + 1, close - open - 1))};
  uf.inessential.assign(head.begin() + 1, head.end());
  return uf;
}

}  // namespace tauu
