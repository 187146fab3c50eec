#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace lcg {

// Subset of {0, ..., universe-1}, stored as a bitset. The canonical order
// compares ascending element lists lexicographically.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::uint32_t universe);
  ElementSet(std::uint32_t universe, std::initializer_list<std::uint32_t> elems);
  ElementSet(std::uint32_t universe, std::span<const std::uint32_t> elems);

  static ElementSet full(std::uint32_t universe);
  static ElementSet from_word(std::uint32_t universe, std::uint64_t word);

  std::uint32_t universe() const { return universe_; }
  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }
  // Lowest 64 members as a mask (the whole set when universe <= 64).
  std::uint64_t word0() const { return words_.empty() ? 0 : words_[0]; }

  void insert(std::uint32_t x);
  void erase(std::uint32_t x);
  void toggle(std::uint32_t x);
  bool contains(std::uint32_t x) const;
  std::size_t size() const;
  bool empty() const;
  // Smallest member; undefined on the empty set.
  std::uint32_t first() const;

  ElementSet& operator|=(const ElementSet& o);
  ElementSet& operator&=(const ElementSet& o);
  ElementSet& operator-=(const ElementSet& o);
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }

  bool subset_of(const ElementSet& o) const;
  bool intersects(const ElementSet& o) const;

  friend bool operator==(const ElementSet& a, const ElementSet& b) {
    return a.universe_ == b.universe_ && a.words_ == b.words_;
  }
  friend bool canonical_less(const ElementSet& a, const ElementSet& b);

  std::vector<std::uint32_t> elements() const;
  std::string str() const;

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        f(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))));
        bits &= bits - 1;
      }
    }
  }

 private:
  void check(std::uint32_t x) const;

  std::uint32_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const;
};

}  // namespace lcg
