#include "tauu/ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>

namespace tauu {

namespace detail {

struct RingData {
  RingKind kind = RingKind::modular;
  std::size_t n = 0;
  std::string name;
  std::vector<Ring> factors;
  std::vector<std::uint32_t> add;
  std::vector<std::uint32_t> mul;
  Element zero;
  Element one;

  ElementSet units;
  ElementSet r_sharp;
  std::vector<Element> r_sharp_list;
  std::vector<Element> non_units;
  std::vector<Element> unit_list;
  std::vector<Element> inverse;

  std::vector<std::size_t> ideal_id;
  std::vector<ElementSet> ideals;
  std::vector<Element> strong_rep;
  // vs_bad[x * n + y]: x = r y for some non-unit r.
  std::vector<std::uint8_t> vs_bad;
  std::size_t chain_height = 0;
};

}  // namespace detail

namespace {

constexpr std::size_t kMaxCarrier = 4096;

Element el(std::size_t i) { return Element{static_cast<std::uint32_t>(i)}; }

void finalize(detail::RingData& d) {
  const std::size_t n = d.n;
  auto mul = [&](std::size_t a, std::size_t b) { return d.mul[a * n + b]; };

  d.units = ElementSet(n);
  d.r_sharp = ElementSet(n);
  d.inverse.assign(n, d.zero);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (mul(a, b) == d.one.id) {
        d.units.insert(el(a));
        d.inverse[a] = el(b);
        break;
      }
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (d.units.contains(el(a))) {
      d.unit_list.push_back(el(a));
      continue;
    }
    d.non_units.push_back(el(a));
    if (el(a) != d.zero) {
      d.r_sharp.insert(el(a));
      d.r_sharp_list.push_back(el(a));
    }
  }

  // Principal ideals, deduplicated.
  d.ideal_id.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    ElementSet members(n);
    for (std::size_t r = 0; r < n; ++r) members.insert(el(mul(r, a)));
    auto it = std::find(d.ideals.begin(), d.ideals.end(), members);
    if (it == d.ideals.end()) {
      d.ideal_id[a] = d.ideals.size();
      d.ideals.push_back(std::move(members));
    } else {
      d.ideal_id[a] = static_cast<std::size_t>(it - d.ideals.begin());
    }
  }

  d.strong_rep.assign(n, d.zero);
  for (std::size_t a = 0; a < n; ++a) {
    std::uint32_t best = static_cast<std::uint32_t>(a);
    for (auto u : d.unit_list) best = std::min(best, mul(u.id, a));
    d.strong_rep[a] = Element{best};
  }

  d.vs_bad.assign(n * n, 0);
  for (std::size_t y = 0; y < n; ++y) {
    for (auto r : d.non_units) d.vs_bad[mul(r.id, y) * n + y] = 1;
  }

  // Longest chain of proper principal ideals; ideals ordered by size first.
  const std::size_t unit_ideal = d.ideal_id[d.one.id];
  std::vector<std::size_t> order(d.ideals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return d.ideals[a].size() < d.ideals[b].size(); });
  std::vector<std::size_t> height(d.ideals.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto id = order[i];
    std::size_t best = 0;
    for (std::size_t j = 0; j < i; ++j) {
      const auto sub = order[j];
      if (d.ideals[sub].size() < d.ideals[id].size() && d.ideals[sub].is_subset_of(d.ideals[id])) {
        best = std::max(best, height[sub]);
      }
    }
    height[id] = best + 1;
    if (id != unit_ideal) d.chain_height = std::max(d.chain_height, height[id]);
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

RingSpec read_table_file(const std::string& path, const std::string& source) {
  std::ifstream in(path);
  if (!in) throw InvalidSpec("cannot open table file '" + path + "'");
  long long k = 0;
  if (!(in >> k) || k < 2) throw InvalidSpec("table file '" + path + "': carrier size must be an integer >= 2");
  const auto kk = static_cast<std::size_t>(k);
  if (kk > kMaxCarrier) throw InvalidSpec("table file '" + path + "': carrier too large");
  auto read_table = [&](const char* which) {
    std::vector<std::uint32_t> t(kk * kk);
    for (std::size_t i = 0; i < t.size(); ++i) {
      long long v = 0;
      if (!(in >> v)) {
        throw InvalidSpec("table file '" + path + "': " + which + " table truncated at entry " + std::to_string(i));
      }
      if (v < 0 || v >= k) {
        throw InvalidSpec("table file '" + path + "': " + which + " entry " + std::to_string(i) + " out of range");
      }
      t[i] = static_cast<std::uint32_t>(v);
    }
    return t;
  };
  auto add = read_table("addition");
  auto mul = read_table("multiplication");
  auto spec = RingSpec::table(kk, std::move(add), std::move(mul));
  spec.source = source;
  return spec;
}

RingSpec parse_factor(const std::string& text, std::size_t offset) {
  if (text.rfind("table:", 0) == 0) return read_table_file(text.substr(6), text);
  if (text.size() >= 2 && (text[0] == 'Z' || text[0] == 'z')) {
    std::string digits = text.substr(1);
    if (!digits.empty() && digits[0] == '/') digits = digits.substr(1);
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc{} && ptr == digits.data() + digits.size()) {
      if (n < 2) throw InvalidSpec("Z" + digits + ": modulus must be at least 2");
      if (n > kMaxCarrier) throw InvalidSpec("Z" + digits + ": modulus too large");
      return RingSpec::modular(static_cast<std::uint32_t>(n));
    }
  }
  throw ParseError("malformed ring spec at position " + std::to_string(offset) + ": '" + text + "'");
}

}  // namespace

std::string_view to_string(Assoc mode) {
  switch (mode) {
    case Assoc::assoc: return "assoc";
    case Assoc::strong: return "strong";
    case Assoc::very_strong: return "very_strong";
  }
  return "?";
}

Assoc parse_assoc(std::string_view text) {
  if (text == "assoc" || text == "associate" || text == "~") return Assoc::assoc;
  if (text == "strong" || text == "strongly_associate" || text == "strongly-associate") return Assoc::strong;
  if (text == "very_strong" || text == "very-strong" || text == "very_strongly_associate") return Assoc::very_strong;
  throw ParseError("unknown associate mode '" + std::string(text) + "' (expected assoc|strong|very_strong)");
}

RingSpec RingSpec::modular(std::uint32_t n) {
  RingSpec s;
  s.kind = RingKind::modular;
  s.modulus = n;
  s.source = "Z" + std::to_string(n);
  return s;
}

RingSpec RingSpec::product(std::vector<RingSpec> factors) {
  RingSpec s;
  s.kind = RingKind::product;
  for (std::size_t i = 0; i < factors.size(); ++i) s.source += (i ? "x" : "") + factors[i].source;
  s.factors = std::move(factors);
  return s;
}

RingSpec RingSpec::table(std::size_t k, std::vector<std::uint32_t> add, std::vector<std::uint32_t> mul) {
  RingSpec s;
  s.kind = RingKind::table;
  s.table_size = k;
  s.add_table = std::move(add);
  s.mul_table = std::move(mul);
  s.source = "T" + std::to_string(k);
  return s;
}

RingSpec RingSpec::parse(std::string_view raw) {
  const std::string text(raw);
  // Split on 'x' separators that introduce another factor.
  std::vector<std::pair<std::string, std::size_t>> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'x' && text[i] != 'X') continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    const bool next_factor = j < text.size() && (text[j] == 'Z' || text.compare(j, 6, "table:") == 0);
    if (!next_factor || i == start) continue;
    parts.emplace_back(trim(std::string_view(text).substr(start, i - start)), start);
    start = i + 1;
  }
  parts.emplace_back(trim(std::string_view(text).substr(start)), start);
  for (const auto& [part, pos] : parts) {
    if (part.empty()) throw ParseError("malformed ring spec at position " + std::to_string(pos) + ": empty factor");
  }
  if (parts.size() == 1) {
    auto s = parse_factor(parts[0].first, parts[0].second);
    return s;
  }
  std::vector<RingSpec> factors;
  for (const auto& [part, pos] : parts) factors.push_back(parse_factor(part, pos));
  auto s = RingSpec::product(std::move(factors));
  s.source = trim(text);
  s.source.erase(std::remove_if(s.source.begin(), s.source.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
                 s.source.end());
  return s;
}

Ring Ring::modular(std::uint32_t n) {
  if (n < 2) throw InvalidSpec("Z" + std::to_string(n) + ": modulus must be at least 2");
  if (n > kMaxCarrier) throw InvalidSpec("Z" + std::to_string(n) + ": modulus too large");
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::modular;
  d->n = n;
  d->name = "Z" + std::to_string(n);
  d->add.resize(std::size_t{n} * n);
  d->mul.resize(std::size_t{n} * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    for (std::uint32_t b = 0; b < n; ++b) {
      d->add[a * n + b] = (a + b) % n;
      d->mul[a * n + b] = static_cast<std::uint32_t>((std::uint64_t{a} * b) % n);
    }
  }
  d->zero = Element{0};
  d->one = Element{1};
  finalize(*d);
  return Ring(std::move(d));
}

Ring Ring::product(const std::vector<Ring>& input) {
  if (input.empty()) throw InvalidSpec("product of zero rings");
  std::vector<Ring> flat;
  for (const auto& r : input) {
    if (r.kind() == RingKind::product) {
      flat.insert(flat.end(), r.factors().begin(), r.factors().end());
    } else {
      flat.push_back(r);
    }
  }
  if (flat.size() == 1) return flat.front();
  std::size_t n = 1;
  for (const auto& r : flat) {
    n *= r.size();
    if (n > kMaxCarrier) throw InvalidSpec("product ring too large");
  }
  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::product;
  d->n = n;
  for (std::size_t i = 0; i < flat.size(); ++i) d->name += (i ? "x" : "") + flat[i].name();
  d->factors = flat;

  auto decode = [&](std::size_t idx) {
    std::vector<Element> c(flat.size());
    for (std::size_t i = flat.size(); i-- > 0;) {
      c[i] = el(idx % flat[i].size());
      idx /= flat[i].size();
    }
    return c;
  };
  auto encode = [&](const std::vector<Element>& c) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < flat.size(); ++i) idx = idx * flat[i].size() + c[i].id;
    return static_cast<std::uint32_t>(idx);
  };
  std::vector<std::vector<Element>> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = decode(i);
  d->add.resize(n * n);
  d->mul.resize(n * n);
  std::vector<Element> tmp(flat.size());
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < flat.size(); ++i) tmp[i] = flat[i].add(coords[a][i], coords[b][i]);
      d->add[a * n + b] = encode(tmp);
      for (std::size_t i = 0; i < flat.size(); ++i) tmp[i] = flat[i].mul(coords[a][i], coords[b][i]);
      d->mul[a * n + b] = encode(tmp);
    }
  }
  for (std::size_t i = 0; i < flat.size(); ++i) tmp[i] = flat[i].zero();
  d->zero = Element{encode(tmp)};
  for (std::size_t i = 0; i < flat.size(); ++i) tmp[i] = flat[i].one();
  d->one = Element{encode(tmp)};
  finalize(*d);
  return Ring(std::move(d));
}

Ring Ring::table(std::size_t k, std::span<const std::uint32_t> add, std::span<const std::uint32_t> mul) {
  if (k < 2) throw InvalidSpec("table ring needs at least 2 symbols");
  if (k > kMaxCarrier) throw InvalidSpec("table ring too large");
  if (add.size() != k * k || mul.size() != k * k) throw InvalidSpec("table ring: tables must be k x k");
  for (std::size_t i = 0; i < k * k; ++i) {
    if (add[i] >= k || mul[i] >= k) throw RingAxiomViolation("closure: table entry " + std::to_string(i) + " out of range");
  }
  auto A = [&](std::size_t a, std::size_t b) -> std::size_t { return add[a * k + b]; };
  auto M = [&](std::size_t a, std::size_t b) -> std::size_t { return mul[a * k + b]; };
  auto triple = [](std::size_t a, std::size_t b, std::size_t c) {
    return " at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
  };
  auto pair = [](std::size_t a, std::size_t b) { return " at (" + std::to_string(a) + "," + std::to_string(b) + ")"; };

  std::optional<std::size_t> zero;
  for (std::size_t z = 0; z < k && !zero; ++z) {
    bool ok = true;
    for (std::size_t x = 0; x < k && ok; ++x) ok = A(z, x) == x && A(x, z) == x;
    if (ok) zero = z;
  }
  if (!zero) throw RingAxiomViolation("additive identity: no element z with z+x = x for all x");
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (A(a, b) != A(b, a)) throw RingAxiomViolation("additive commutativity" + pair(a, b));
      if (M(a, b) != M(b, a)) throw RingAxiomViolation("multiplicative commutativity" + pair(a, b));
    }
  }
  for (std::size_t a = 0; a < k; ++a) {
    bool has_neg = false;
    for (std::size_t b = 0; b < k && !has_neg; ++b) has_neg = A(a, b) == *zero;
    if (!has_neg) throw RingAxiomViolation("additive inverse: element " + std::to_string(a) + " has none");
  }
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      for (std::size_t c = 0; c < k; ++c) {
        if (A(A(a, b), c) != A(a, A(b, c))) throw RingAxiomViolation("additive associativity" + triple(a, b, c));
        if (M(M(a, b), c) != M(a, M(b, c))) throw RingAxiomViolation("multiplicative associativity" + triple(a, b, c));
        if (M(a, A(b, c)) != A(M(a, b), M(a, c))) throw RingAxiomViolation("distributivity" + triple(a, b, c));
      }
    }
  }
  std::optional<std::size_t> one;
  for (std::size_t o = 0; o < k && !one; ++o) {
    bool ok = true;
    for (std::size_t x = 0; x < k && ok; ++x) ok = M(o, x) == x;
    if (ok) one = o;
  }
  if (!one) throw RingAxiomViolation("multiplicative identity: no element e with e*x = x for all x");
  if (*one == *zero) throw RingAxiomViolation("nontriviality: 1 = 0");

  auto d = std::make_shared<detail::RingData>();
  d->kind = RingKind::table;
  d->n = k;
  d->name = "T" + std::to_string(k);
  d->add.assign(add.begin(), add.end());
  d->mul.assign(mul.begin(), mul.end());
  d->zero = el(*zero);
  d->one = el(*one);
  finalize(*d);
  return Ring(std::move(d));
}

Ring Ring::make(const RingSpec& spec) {
  switch (spec.kind) {
    case RingKind::modular: return modular(spec.modulus);
    case RingKind::product: {
      if (spec.factors.empty()) throw InvalidSpec("product spec needs at least one factor");
      std::vector<Ring> fs;
      for (const auto& f : spec.factors) fs.push_back(make(f));
      return product(fs);
    }
    case RingKind::table: {
      auto r = table(spec.table_size, spec.add_table, spec.mul_table);
      if (!spec.source.empty() && spec.source.rfind("table:", 0) == 0) {
        auto d = std::make_shared<detail::RingData>(*r.data_);
        d->name = spec.source;
        return Ring(std::move(d));
      }
      return r;
    }
  }
  throw InvalidSpec("unknown ring kind");
}

RingKind Ring::kind() const noexcept { return data_->kind; }
std::size_t Ring::size() const noexcept { return data_->n; }
std::string Ring::name() const { return data_->name; }
Element Ring::zero() const noexcept { return data_->zero; }
Element Ring::one() const noexcept { return data_->one; }

std::vector<Element> Ring::elements() const {
  std::vector<Element> out(size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = el(i);
  return out;
}

void Ring::check(Element e) const {
  if (!contains(e)) throw RangeError("element index " + std::to_string(e.id) + " outside carrier of " + name());
}

Element Ring::add(Element a, Element b) const noexcept { return Element{data_->add[a.id * data_->n + b.id]}; }
Element Ring::mul(Element a, Element b) const noexcept { return Element{data_->mul[a.id * data_->n + b.id]}; }

Element Ring::product_of(std::span<const Element> xs) const noexcept {
  Element p = one();
  for (auto x : xs) p = mul(p, x);
  return p;
}

bool Ring::is_unit(Element e) const noexcept { return data_->units.contains(e); }
bool Ring::in_r_sharp(Element e) const noexcept { return data_->r_sharp.contains(e); }

Element Ring::inverse(Element unit) const {
  check(unit);
  if (!is_unit(unit)) throw InvalidInput(format(unit) + " is not a unit of " + name());
  return data_->inverse[unit.id];
}

const ElementSet& Ring::units() const noexcept { return data_->units; }
const ElementSet& Ring::r_sharp() const noexcept { return data_->r_sharp; }
const std::vector<Element>& Ring::r_sharp_list() const noexcept { return data_->r_sharp_list; }
const std::vector<Element>& Ring::non_units() const noexcept { return data_->non_units; }

Ring::Partition Ring::partition() const { return {data_->unit_list, data_->r_sharp_list}; }

const ElementSet& Ring::ideal(Element a) const noexcept { return data_->ideals[data_->ideal_id[a.id]]; }
std::size_t Ring::ideal_id(Element a) const noexcept { return data_->ideal_id[a.id]; }
std::size_t Ring::ideal_count() const noexcept { return data_->ideals.size(); }
Element Ring::strong_rep(Element a) const noexcept { return data_->strong_rep[a.id]; }

std::optional<Element> Ring::unit_between(Element a, Element b) const {
  for (auto u : data_->unit_list) {
    if (mul(u, b) == a) return u;
  }
  return std::nullopt;
}

bool Ring::associated(Element a, Element b, Assoc mode) const noexcept {
  switch (mode) {
    case Assoc::assoc: return ideal_id(a) == ideal_id(b);
    case Assoc::strong: return strong_rep(a) == strong_rep(b);
    case Assoc::very_strong:
      if (ideal_id(a) != ideal_id(b)) return false;
      if (a == zero() && b == zero()) return true;
      return data_->vs_bad[a.id * data_->n + b.id] == 0;
  }
  return false;
}

std::size_t Ring::ideal_chain_height() const noexcept { return data_->chain_height; }

std::size_t Ring::arity() const noexcept { return data_->factors.empty() ? 1 : data_->factors.size(); }
const std::vector<Ring>& Ring::factors() const noexcept { return data_->factors; }

std::vector<Element> Ring::coordinates(Element e) const {
  check(e);
  if (data_->factors.empty()) return {e};
  std::vector<Element> c(data_->factors.size());
  std::size_t idx = e.id;
  for (std::size_t i = c.size(); i-- > 0;) {
    c[i] = el(idx % data_->factors[i].size());
    idx /= data_->factors[i].size();
  }
  return c;
}

Element Ring::from_coordinates(std::span<const Element> coords) const {
  if (data_->factors.empty()) {
    if (coords.size() != 1) throw InvalidCoordinate("expected a single coordinate for " + name());
    check(coords[0]);
    return coords[0];
  }
  if (coords.size() != data_->factors.size()) {
    throw InvalidCoordinate("expected " + std::to_string(data_->factors.size()) + " coordinates for " + name());
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    data_->factors[i].check(coords[i]);
    idx = idx * data_->factors[i].size() + coords[i].id;
  }
  return el(idx);
}

std::string Ring::format(Element e) const {
  if (data_->factors.empty()) return std::to_string(e.id);
  auto c = coordinates(e);
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ",";
    out += data_->factors[i].format(c[i]);
  }
  return out + ")";
}

Element Ring::parse_element(std::string_view raw) const {
  const std::string text = trim(raw);
  if (data_->factors.empty()) {
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
      throw ParseError("malformed element literal '" + text + "' for " + name());
    }
    if (v < 0 || static_cast<unsigned long long>(v) >= size()) {
      throw RangeError("element " + text + " outside carrier of " + name());
    }
    return el(static_cast<std::size_t>(v));
  }
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw ParseError("product element must be a parenthesized tuple, got '" + text + "'");
  }
  std::vector<Element> coords;
  std::string inner = text.substr(1, text.size() - 2);
  std::stringstream ss(inner);
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= data_->factors.size()) throw RangeError("tuple '" + text + "' has too many coordinates for " + name());
    coords.push_back(data_->factors[i].parse_element(item));
    ++i;
  }
  if (coords.size() != data_->factors.size()) {
    throw RangeError("tuple '" + text + "' needs " + std::to_string(data_->factors.size()) + " coordinates for " + name());
  }
  return from_coordinates(coords);
}

Ring make_ring(const RingSpec& spec) { return Ring::make(spec); }
Ring make_ring(std::string_view spec_text) { return Ring::make(RingSpec::parse(spec_text)); }

Ring::Partition carrier_partition(const Ring& r) { return r.partition(); }

Ideal principal_ideal(const Ring& r, Element a) {
  r.check(a);
  return Ideal{a, r.ideal(a)};
}

bool associated(const Ring& r, Element a, Element b, Assoc mode) {
  r.check(a);
  r.check(b);
  return r.associated(a, b, mode);
}

RingFlags ring_flags(const Ring& r) {
  RingFlags f;
  const auto elems = r.elements();
  for (auto a : elems) {
    for (auto b : elems) {
      if (r.associated(a, b, Assoc::assoc) && !r.associated(a, b, Assoc::strong)) {
        f.strongly_associate = false;
        f.strongly_associate_witness = {a, b};
        break;
      }
    }
    if (!f.strongly_associate) break;
  }
  for (auto x : elems) {
    if (x == r.zero()) continue;
    for (auto y : r.non_units()) {
      if (r.mul(x, y) == x) {
        f.presimplifiable = false;
        f.presimplifiable_witness = {x, y};
        break;
      }
    }
    if (!f.presimplifiable) break;
  }
  return f;
}

std::size_t ideal_chain_height(const Ring& r) { return r.ideal_chain_height(); }

Element embed(const Ring& product, std::size_t coordinate, Element x) {
  if (coordinate < 1 || coordinate > product.arity()) {
    throw InvalidCoordinate("coordinate " + std::to_string(coordinate) + " out of range 1.." + std::to_string(product.arity()));
  }
  if (product.kind() != RingKind::product) {
    product.check(x);
    return x;
  }
  std::vector<Element> c;
  for (const auto& f : product.factors()) c.push_back(f.one());
  product.factors()[coordinate - 1].check(x);
  c[coordinate - 1] = x;
  return product.from_coordinates(c);
}

}  // namespace tauu
