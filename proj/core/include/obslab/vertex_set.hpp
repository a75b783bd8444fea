#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace obslab {

// Dense bitset over the vertex indices [0, capacity) of one graph.
//
// Binary operators require both operands to share the same capacity; this
// is the case for every set derived from the same Graph.
class VertexSet {
 public:
  class const_iterator {
   public:
    using value_type = int;
    using difference_type = std::ptrdiff_t;

    const_iterator() = default;
    const_iterator(const VertexSet* set, int v) : set_(set), v_(v) {}

    int operator*() const { return v_; }
    const_iterator& operator++() {
      v_ = set_->next(v_);
      return *this;
    }
    const_iterator operator++(int) {
      auto copy = *this;
      ++*this;
      return copy;
    }
    bool operator==(const const_iterator& other) const { return v_ == other.v_; }

   private:
    const VertexSet* set_ = nullptr;
    int v_ = -1;
  };

  VertexSet() = default;
  explicit VertexSet(int capacity)
      : capacity_(capacity), words_(static_cast<std::size_t>((capacity + 63) / 64), 0) {}
  VertexSet(int capacity, std::initializer_list<int> members) : VertexSet(capacity) {
    for (int v : members) insert(v);
  }
  VertexSet(int capacity, std::span<const int> members) : VertexSet(capacity) {
    for (int v : members) insert(v);
  }

  static VertexSet full(int capacity) {
    VertexSet s(capacity);
    for (int v = 0; v < capacity; ++v) s.insert(v);
    return s;
  }

  int capacity() const { return capacity_; }

  void insert(int v) { words_[word(v)] |= bit(v); }
  void erase(int v) { words_[word(v)] &= ~bit(v); }
  bool contains(int v) const {
    return v >= 0 && v < capacity_ && (words_[word(v)] & bit(v)) != 0;
  }
  void clear() {
    for (auto& w : words_) w = 0;
  }

  int size() const {
    int total = 0;
    for (auto w : words_) total += std::popcount(w);
    return total;
  }
  bool empty() const {
    for (auto w : words_)
      if (w != 0) return false;
    return true;
  }

  // Smallest member, or -1.
  int first() const { return scan_from(0); }
  // Smallest member strictly greater than v, or -1.
  int next(int v) const { return scan_from(v + 1); }

  bool intersects(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
  }
  bool is_subset_of(const VertexSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
  }
  int intersection_size(const VertexSet& other) const {
    int total = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) total += std::popcount(words_[i] & other.words_[i]);
    return total;
  }

  VertexSet& operator|=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
  }
  VertexSet& operator&=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }
  // Set difference.
  VertexSet& operator-=(const VertexSet& other) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
  }

  friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
  friend VertexSet operator&(VertexSet a, const VertexSet& b) { return a &= b; }
  friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }
  friend bool operator==(const VertexSet& a, const VertexSet& b) = default;

  const_iterator begin() const { return {this, first()}; }
  const_iterator end() const { return {this, -1}; }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int v : *this) out.push_back(v);
    return out;
  }

 private:
  static std::size_t word(int v) { return static_cast<std::size_t>(v) >> 6; }
  static std::uint64_t bit(int v) { return std::uint64_t{1} << (v & 63); }

  int scan_from(int v) const {
    if (v >= capacity_) return -1;
    std::size_t w = word(v);
    std::uint64_t cur = words_[w] & (~std::uint64_t{0} << (v & 63));
    while (true) {
      if (cur != 0) return static_cast<int>(w * 64) + std::countr_zero(cur);
      if (++w >= words_.size()) return -1;
      cur = words_[w];
    }
  }

  int capacity_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace obslab
