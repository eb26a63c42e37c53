#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace tauu {

/// An element of a finite ring, identified by its index in the carrier.
///
/// Indices are only meaningful relative to the Ring that produced them; the
/// ring is responsible for range checks and for printing.
struct Element {
  std::uint32_t id = 0;

  friend constexpr auto operator<=>(Element, Element) = default;
};

/// Dense bitset over a ring carrier.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe)
      : universe_(universe), words_((universe + 63) / 64, 0) {}

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    for (std::size_t i = 0; i < universe; ++i) s.insert(Element{static_cast<std::uint32_t>(i)});
    return s;
  }

  std::size_t universe() const noexcept { return universe_; }

  bool contains(Element e) const noexcept {
    return e.id < universe_ && ((words_[e.id / 64] >> (e.id % 64)) & 1U) != 0;
  }
  void insert(Element e) { words_[e.id / 64] |= std::uint64_t{1} << (e.id % 64); }
  void erase(Element e) { words_[e.id / 64] &= ~(std::uint64_t{1} << (e.id % 64)); }

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool empty() const noexcept {
    for (auto w : words_) {
      if (w != 0) return false;
    }
    return true;
  }

  bool is_subset_of(const ElementSet& other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    }
    return true;
  }

  ElementSet& operator&=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ElementSet& operator|=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ElementSet& operator-=(const ElementSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  friend bool operator==(const ElementSet&, const ElementSet&) = default;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        auto b = static_cast<std::uint32_t>(std::countr_zero(bits));
        f(Element{static_cast<std::uint32_t>(w * 64 + b)});
        bits &= bits - 1;
      }
    }
  }

  std::vector<Element> to_vector() const {
    std::vector<Element> out;
    for_each([&](Element e) { out.push_back(e); });
    return out;
  }

  std::size_t hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto w : words_) {
      h ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace tauu
