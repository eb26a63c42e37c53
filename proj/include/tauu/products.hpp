#pragma once

#include <cstddef>

#include "tauu/factorization.hpp"
#include "tauu/ring.hpp"
#include "tauu/tau.hpp"

namespace tauu {

/// A τ_i-U-factorization living in coordinate i (1-based) of a product.
struct CoordinateFactorization {
  std::size_t coordinate = 1;
  UFactorization inner;
};

/// Embeds every part of a factor-ring U-factorization at its coordinate.
UFactorization lift_u_factorization(const Ring& prod, const TauRelation& tprod, const CoordinateFactorization& cf);

/// Takes coordinate i of every part of a τ_×-U-factorization of an element
/// that is a unit outside coordinate i.
UFactorization project_u_factorization(const Ring& prod, const TauRelation& tprod, const UFactorization& uf,
                                       std::size_t coordinate);

/// Splits each factor into its coordinate embeddings; unit embeddings are
/// collected into the leading unit.
Factorization decompose_product_factorization(const Ring& prod, const TauRelation& tprod, const Factorization& f);

}  // namespace tauu
