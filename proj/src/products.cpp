#include "tauu/products.hpp"

namespace tauu {

namespace {

void require_product(const Ring& prod, const TauRelation& tprod) {
  if (prod.arity() < 2) throw InvalidInput(prod.name() + " is not a product ring");
  if (tprod.kind() != TauKind::product || tprod.components().size() != prod.arity()) {
    throw InvalidInput("relation " + tprod.name() + " is not a product relation over " + prod.name());
  }
}

void check_coordinate(const Ring& prod, std::size_t i) {
  if (i < 1 || i > prod.arity()) {
    throw InvalidCoordinate("coordinate " + std::to_string(i) + " outside 1.." + std::to_string(prod.arity()));
  }
}

}  // namespace

UFactorization lift_u_factorization(const Ring& prod, const TauRelation& tprod, const CoordinateFactorization& cf) {
  require_product(prod, tprod);
  check_coordinate(prod, cf.coordinate);
  const auto& ri = prod.factors()[cf.coordinate - 1];
  const auto& ti = tprod.components()[cf.coordinate - 1];
  if (!ri.contains(cf.inner.unit)) throw InvalidInput("unit outside " + ri.name());
  for (const auto* part : {&cf.inner.inessential, &cf.inner.essential}) {
    for (auto x : *part) {
      if (!ri.contains(x)) throw InvalidInput("factor outside " + ri.name());
    }
  }
  const auto value = evaluate(ri, cf.inner);
  if (auto d = check_u_factorization(ri, ti, value, cf.inner); !d) {
    throw InvalidInput(render(ri, cf.inner) + " is not a τ-U-factorization in " + ri.name() + ": " + d.reason);
  }
  auto up = [&](Element x) { return embed(prod, cf.coordinate, x); };
  UFactorization out{up(cf.inner.unit), {}, {}};
  for (auto x : cf.inner.inessential) out.inessential.push_back(up(x));
  for (auto x : cf.inner.essential) out.essential.push_back(up(x));
  return out;
}

UFactorization project_u_factorization(const Ring& prod, const TauRelation& tprod, const UFactorization& uf,
                                       std::size_t coordinate) {
  require_product(prod, tprod);
  check_coordinate(prod, coordinate);
  const auto value = evaluate(prod, uf);
  if (auto d = check_u_factorization(prod, tprod, value, uf); !d) {
    throw InvalidInput(render(prod, uf) + " is not a τ_×-U-factorization: " + d.reason);
  }
  const auto coords = prod.coordinates(value);
  for (std::size_t j = 0; j < coords.size(); ++j) {
    const auto& rj = prod.factors()[j];
    if (j + 1 == coordinate) {
      if (rj.is_unit(coords[j])) {
        throw NotProjectable(prod.format(value) + " is a unit at coordinate " + std::to_string(coordinate));
      }
    } else if (!rj.is_unit(coords[j])) {
      throw NotProjectable(prod.format(value) + " has a second non-unit coordinate " + std::to_string(j + 1));
    }
  }
  auto down = [&](Element x) { return prod.coordinates(x)[coordinate - 1]; };
  UFactorization out{down(uf.unit), {}, {}};
  for (auto x : uf.inessential) out.inessential.push_back(down(x));
  for (auto x : uf.essential) out.essential.push_back(down(x));
  return out;
}

Factorization decompose_product_factorization(const Ring& prod, const TauRelation& tprod, const Factorization& f) {
  require_product(prod, tprod);
  const auto value = evaluate(prod, f);
  if (auto d = check_tau_factorization(prod, tprod, value, f); !d) {
    throw InvalidInput(render(prod, f) + " is not a τ_×-factorization: " + d.reason);
  }
  Factorization out{f.unit, {}};
  for (auto x : f.factors) {
    const auto coords = prod.coordinates(x);
    for (std::size_t j = 0; j < coords.size(); ++j) {
      const auto e = embed(prod, j + 1, coords[j]);
      if (prod.factors()[j].is_unit(coords[j])) {
        out.unit = prod.mul(out.unit, e);
      } else {
        out.factors.push_back(e);
      }
    }
  }
  return out;
}

}  // namespace tauu
