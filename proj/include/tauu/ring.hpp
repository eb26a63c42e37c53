#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tauu/element_set.hpp"
#include "tauu/errors.hpp"

namespace tauu {

/// The three associate relations on ring elements.
///
///  - assoc:       a ~ b    iff (a) = (b)
///  - strong:      a ≈ b    iff a = u b for a unit u
///  - very_strong: a ≅ b    iff a ~ b and (a = b = 0 or every r with a = r b is a unit)
enum class Assoc { assoc, strong, very_strong };

std::string_view to_string(Assoc mode);
Assoc parse_assoc(std::string_view text);

enum class RingKind { modular, product, table };

/// Textual ring description: `Z<n>`, `A x B x ...` or `table:<path>`.
struct RingSpec {
  RingKind kind = RingKind::modular;
  std::uint32_t modulus = 0;
  std::vector<RingSpec> factors;
  std::size_t table_size = 0;
  std::vector<std::uint32_t> add_table;
  std::vector<std::uint32_t> mul_table;
  std::string source;

  static RingSpec modular(std::uint32_t n);
  static RingSpec product(std::vector<RingSpec> factors);
  static RingSpec table(std::size_t k, std::vector<std::uint32_t> add, std::vector<std::uint32_t> mul);

  /// Parses the ring mini-language. Table files are read eagerly.
  static RingSpec parse(std::string_view text);
};

namespace detail {
struct RingData;
}

/// A finite commutative ring with identity.
///
/// Rings are immutable and cheap to copy; copies share the precomputed
/// Cayley tables, unit group, principal ideals and associate classes.
/// Elements are indices into the carrier. Product rings encode a tuple
/// (c_1, ..., c_N) in mixed radix with the first coordinate most
/// significant, so index order is lexicographic tuple order.
class Ring {
 public:
  struct Partition {
    std::vector<Element> units;
    std::vector<Element> r_sharp;
  };

  static Ring modular(std::uint32_t n);
  static Ring product(const std::vector<Ring>& factors);
  static Ring table(std::size_t k, std::span<const std::uint32_t> add, std::span<const std::uint32_t> mul);
  static Ring make(const RingSpec& spec);

  RingKind kind() const noexcept;
  std::size_t size() const noexcept;
  std::string name() const;

  Element zero() const noexcept;
  Element one() const noexcept;
  std::vector<Element> elements() const;
  bool contains(Element e) const noexcept { return e.id < size(); }
  void check(Element e) const;

  Element add(Element a, Element b) const noexcept;
  Element mul(Element a, Element b) const noexcept;
  Element product_of(std::span<const Element> xs) const noexcept;

  bool is_zero(Element e) const noexcept { return e == zero(); }
  bool is_unit(Element e) const noexcept;
  bool in_r_sharp(Element e) const noexcept;
  Element inverse(Element unit) const;

  const ElementSet& units() const noexcept;
  const ElementSet& r_sharp() const noexcept;
  const std::vector<Element>& r_sharp_list() const noexcept;
  const std::vector<Element>& non_units() const noexcept;
  Partition partition() const;

  /// Members of the principal ideal (a).
  const ElementSet& ideal(Element a) const noexcept;
  /// Dense id of the principal ideal (a); equal ids mean equal ideals.
  std::size_t ideal_id(Element a) const noexcept;
  std::size_t ideal_count() const noexcept;
  /// d | x, i.e. x lies in (d).
  bool divides(Element d, Element x) const noexcept { return ideal(d).contains(x); }

  /// Representative of the orbit U(R)·a; equal reps mean a ≈ b.
  Element strong_rep(Element a) const noexcept;
  /// Some unit u with a = u·b, if a ≈ b.
  std::optional<Element> unit_between(Element a, Element b) const;

  bool associated(Element a, Element b, Assoc mode) const noexcept;

  /// Longest strictly ascending chain of proper principal ideals, counted in ideals.
  std::size_t ideal_chain_height() const noexcept;

  // Product structure. A non-product ring has arity 1 and no factors.
  std::size_t arity() const noexcept;
  const std::vector<Ring>& factors() const noexcept;
  std::vector<Element> coordinates(Element e) const;
  Element from_coordinates(std::span<const Element> coords) const;

  std::string format(Element e) const;
  Element parse_element(std::string_view text) const;

  friend bool operator==(const Ring& a, const Ring& b) noexcept { return a.data_ == b.data_; }

 private:
  explicit Ring(std::shared_ptr<const detail::RingData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::RingData> data_;
};

struct RingFlags {
  bool strongly_associate = true;
  bool presimplifiable = true;
  /// (a, b) with a ~ b but not a ≈ b.
  std::optional<std::pair<Element, Element>> strongly_associate_witness;
  /// (x, y) with x = x·y, x != 0 and y not a unit.
  std::optional<std::pair<Element, Element>> presimplifiable_witness;
};

// Free-function surface of the ring core.
Ring make_ring(const RingSpec& spec);
Ring make_ring(std::string_view spec_text);
Ring::Partition carrier_partition(const Ring& r);
struct Ideal {
  Element generator;
  ElementSet members;
};
Ideal principal_ideal(const Ring& r, Element a);
bool associated(const Ring& r, Element a, Element b, Assoc mode);
RingFlags ring_flags(const Ring& r);
std::size_t ideal_chain_height(const Ring& r);
/// x^(i): x at coordinate i (1-based), the identity elsewhere.
Element embed(const Ring& product, std::size_t coordinate, Element x);

}  // namespace tauu
