#include "lcg/element_set.hpp"

#include <bit>

#include "lcg/errors.hpp"
#include "lcg/kernels.hpp"

namespace lcg {

ElementSet::ElementSet(std::uint32_t universe)
    : universe_(universe), words_((static_cast<std::size_t>(universe) + 63) / 64, 0) {}

ElementSet::ElementSet(std::uint32_t universe, std::initializer_list<std::uint32_t> elems)
    : ElementSet(universe) {
  for (auto x : elems) insert(x);
}

ElementSet::ElementSet(std::uint32_t universe, std::span<const std::uint32_t> elems)
    : ElementSet(universe) {
  for (auto x : elems) insert(x);
}

ElementSet ElementSet::full(std::uint32_t universe) {
  ElementSet s(universe);
  for (auto& w : s.words_) w = ~std::uint64_t{0};
  if (universe % 64 != 0) s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  return s;
}

ElementSet ElementSet::from_word(std::uint32_t universe, std::uint64_t word) {
  ElementSet s(universe);
  if (!s.words_.empty()) s.words_[0] = word;
  return s;
}

void ElementSet::check(std::uint32_t x) const {
  if (x >= universe_) {
    throw WindowError("element " + std::to_string(x) + " outside group of order " +
                      std::to_string(universe_));
  }
}

void ElementSet::insert(std::uint32_t x) {
  check(x);
  words_[x / 64] |= std::uint64_t{1} << (x % 64);
}

void ElementSet::erase(std::uint32_t x) {
  check(x);
  words_[x / 64] &= ~(std::uint64_t{1} << (x % 64));
}

void ElementSet::toggle(std::uint32_t x) {
  check(x);
  words_[x / 64] ^= std::uint64_t{1} << (x % 64);
}

bool ElementSet::contains(std::uint32_t x) const {
  return x < universe_ && ((words_[x / 64] >> (x % 64)) & 1u) != 0;
}

std::size_t ElementSet::size() const {
  if (words_.size() == 1) return static_cast<std::size_t>(std::popcount(words_[0]));
  return kernels::popcount(words_);
}

bool ElementSet::empty() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::uint32_t ElementSet::first() const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] != 0) {
      return static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w])));
    }
  }
  return universe_;
}

ElementSet& ElementSet::operator|=(const ElementSet& o) {
  if (o.universe_ != universe_) throw ModelError("set universes differ");
  kernels::or_into(words_, o.words_);
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& o) {
  if (o.universe_ != universe_) throw ModelError("set universes differ");
  kernels::and_into(words_, o.words_);
  return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& o) {
  if (o.universe_ != universe_) throw ModelError("set universes differ");
  kernels::andnot_into(words_, o.words_);
  return *this;
}

bool ElementSet::subset_of(const ElementSet& o) const {
  if (o.universe_ != universe_) throw ModelError("set universes differ");
  return !kernels::any_andnot(words_, o.words_);
}

bool ElementSet::intersects(const ElementSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if ((words_[i] & o.words_[i]) != 0) return true;
  }
  return false;
}

bool canonical_less(const ElementSet& a, const ElementSet& b) {
  // Lexicographic on ascending element lists: the first differing element
  // decides; the set containing it is smaller unless that element is missing
  // because the list ended.
  for (std::size_t w = 0; w < a.words_.size() && w < b.words_.size(); ++w) {
    std::uint64_t x = a.words_[w];
    std::uint64_t y = b.words_[w];
    if (x == y) continue;
    std::uint64_t diff = x ^ y;
    std::uint64_t low = diff & (~diff + 1);
    bool a_has = (x & low) != 0;
    // Elements below `low` agree. The set holding the element is smaller
    // iff the other set still has some larger element.
    if (a_has) {
      bool b_more = (y & ~(low | (low - 1))) != 0;
      for (std::size_t v = w + 1; !b_more && v < b.words_.size(); ++v) b_more = b.words_[v] != 0;
      return b_more;
    }
    bool a_more = (x & ~(low | (low - 1))) != 0;
    for (std::size_t v = w + 1; !a_more && v < a.words_.size(); ++v) a_more = a.words_[v] != 0;
    return !a_more;
  }
  return false;
}

std::vector<std::uint32_t> ElementSet::elements() const {
  std::vector<std::uint32_t> out;
  out.reserve(size());
  for_each([&](std::uint32_t x) { out.push_back(x); });
  return out;
}

std::string ElementSet::str() const {
  std::string s = "{";
  bool first = true;
  for_each([&](std::uint32_t x) {
    if (!first) s += ",";
    s += std::to_string(x);
    first = false;
  });
  return s + "}";
}

std::size_t ElementSetHash::operator()(const ElementSet& s) const {
  std::size_t h = 1469598103934665603ull;
  for (auto w : s.words()) {
    h ^= static_cast<std::size_t>(w);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace lcg
