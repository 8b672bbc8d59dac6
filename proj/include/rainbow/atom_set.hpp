#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rainbow {

/// Dense set of atom ids over a fixed universe size.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(std::size_t universe) : size_(universe), words_((universe + 63) / 64, 0) {}

  static AtomSet full(std::size_t universe) {
    AtomSet s(universe);
    for (auto& w : s.words_) w = ~0ull;
    s.trim();
    return s;
  }

  std::size_t universe() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= 1ull << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(1ull << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }
  bool subset_of(const AtomSet& o) const {
    check(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & ~o.words_[k]) return false;
    return true;
  }
  bool intersects(const AtomSet& o) const {
    check(o);
    for (std::size_t k = 0; k < words_.size(); ++k)
      if (words_[k] & o.words_[k]) return true;
    return false;
  }

  AtomSet& operator|=(const AtomSet& o) {
    check(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
    return *this;
  }
  AtomSet& operator&=(const AtomSet& o) {
    check(o);
    for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
    return *this;
  }
  AtomSet operator~() const {
    AtomSet r(*this);
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  friend AtomSet operator|(AtomSet a, const AtomSet& b) { return a |= b; }
  friend AtomSet operator&(AtomSet a, const AtomSet& b) { return a &= b; }
  bool operator==(const AtomSet&) const = default;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        int b = std::countr_zero(w);
        f(k * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }

  std::vector<std::size_t> members() const {
    std::vector<std::size_t> out;
    for_each([&](std::size_t i) { out.push_back(i); });
    return out;
  }

 private:
  void check(const AtomSet& o) const {
    if (o.size_ != size_) throw std::invalid_argument("atom sets over different universes");
  }
  void trim() {
    if (size_ % 64 && !words_.empty()) words_.back() &= (1ull << (size_ % 64)) - 1;
  }

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace rainbow
