#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

#include "ibu/error.hpp"

namespace ibu {

// Index of a possible world inside a fixed finite universe.
using World = std::uint32_t;

// A set of worlds out of a fixed universe, stored as a bitmask. Universes of
// at most 64 worlds (the common case) live in a single inline word; larger
// alphabets (up to 16 atoms, 65536 worlds) spill to heap blocks. All binary
// operations require both operands to come from the same universe.
class WorldSet {
 public:
  WorldSet() = default;  // empty set over the empty universe
  explicit WorldSet(std::uint32_t universe_size) : n_(universe_size) {
    if (block_count() > 1) big_.resize(block_count(), 0);
  }

  static WorldSet full(std::uint32_t universe_size) {
    WorldSet s(universe_size);
    for (std::uint32_t b = 0; b < s.block_count(); ++b)
      s.block(b) = ~std::uint64_t{0};
    s.trim();
    return s;
  }

  static WorldSet of(std::uint32_t universe_size,
                     std::initializer_list<World> worlds) {
    WorldSet s(universe_size);
    for (World w : worlds) s.insert(w);
    return s;
  }

  // Builds a set from a raw bitmask; only for universes of <= 64 worlds.
  static WorldSet from_word(std::uint32_t universe_size, std::uint64_t bits) {
    if (universe_size > 64)
      throw Error("from_word needs a universe of at most 64 worlds");
    WorldSet s(universe_size);
    s.small_ = bits;
    s.trim();
    return s;
  }

  std::uint32_t universe_size() const { return n_; }

  bool contains(World w) const {
    check_world(w);
    return (block(w >> 6) >> (w & 63)) & 1;
  }

  void insert(World w) {
    check_world(w);
    block(w >> 6) |= std::uint64_t{1} << (w & 63);
  }

  void erase(World w) {
    check_world(w);
    block(w >> 6) &= ~(std::uint64_t{1} << (w & 63));
  }

  bool empty() const {
    for (std::uint32_t b = 0; b < block_count(); ++b)
      if (block(b)) return false;
    return true;
  }

  std::uint32_t count() const {
    std::uint32_t c = 0;
    for (std::uint32_t b = 0; b < block_count(); ++b)
      c += static_cast<std::uint32_t>(__builtin_popcountll(block(b)));
    return c;
  }

  bool is_full() const { return count() == n_; }

  WorldSet& operator|=(const WorldSet& o) {
    check_same(o);
    for (std::uint32_t b = 0; b < block_count(); ++b) block(b) |= o.block(b);
    return *this;
  }

  WorldSet& operator&=(const WorldSet& o) {
    check_same(o);
    for (std::uint32_t b = 0; b < block_count(); ++b) block(b) &= o.block(b);
    return *this;
  }

  // Set difference.
  WorldSet& operator-=(const WorldSet& o) {
    check_same(o);
    for (std::uint32_t b = 0; b < block_count(); ++b) block(b) &= ~o.block(b);
    return *this;
  }

  friend WorldSet operator|(WorldSet a, const WorldSet& b) { return a |= b; }
  friend WorldSet operator&(WorldSet a, const WorldSet& b) { return a &= b; }
  friend WorldSet operator-(WorldSet a, const WorldSet& b) { return a -= b; }

  WorldSet complement() const {
    WorldSet r(n_);
    for (std::uint32_t b = 0; b < block_count(); ++b) r.block(b) = ~block(b);
    r.trim();
    return r;
  }

  bool subset_of(const WorldSet& o) const {
    check_same(o);
    for (std::uint32_t b = 0; b < block_count(); ++b)
      if (block(b) & ~o.block(b)) return false;
    return true;
  }

  bool intersects(const WorldSet& o) const {
    check_same(o);
    for (std::uint32_t b = 0; b < block_count(); ++b)
      if (block(b) & o.block(b)) return true;
    return false;
  }

  bool operator==(const WorldSet& o) const {
    if (n_ != o.n_) return false;
    for (std::uint32_t b = 0; b < block_count(); ++b)
      if (block(b) != o.block(b)) return false;
    return true;
  }
  bool operator!=(const WorldSet& o) const { return !(*this == o); }

  // Worlds in ascending index order.
  std::vector<World> worlds() const {
    std::vector<World> out;
    out.reserve(count());
    for_each([&](World w) { out.push_back(w); });
    return out;
  }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint32_t b = 0; b < block_count(); ++b) {
      std::uint64_t bits = block(b);
      while (bits) {
        const int k = __builtin_ctzll(bits);
        f(static_cast<World>((b << 6) + k));
        bits &= bits - 1;
      }
    }
  }

  World first() const {
    for (std::uint32_t b = 0; b < block_count(); ++b)
      if (block(b)) return (b << 6) + __builtin_ctzll(block(b));
    throw Error("WorldSet::first on empty set");
  }

  // Enumerates every subset of this set (including the empty set and the set
  // itself), in a deterministic order: the k member positions are treated as
  // a compressed k-bit counter running 0, 1, ..., 2^k - 1.
  template <typename F>
  void for_each_subset(F&& f) const {
    const std::vector<World> members = worlds();
    if (members.size() > 24)
      throw Error("subset enumeration over " +
                  std::to_string(members.size()) + " worlds is not feasible");
    const std::uint64_t limit = std::uint64_t{1} << members.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
      WorldSet sub(n_);
      for (std::size_t i = 0; i < members.size(); ++i)
        if ((mask >> i) & 1) sub.insert(members[i]);
      f(sub);
    }
  }

  // The low 64 bits of the mask; only meaningful for universes of <= 64
  // worlds, where it is the full encoding.
  std::uint64_t low_word() const { return block(0); }

 private:
  std::uint32_t block_count() const { return n_ == 0 ? 1 : ((n_ + 63) >> 6); }

  std::uint64_t& block(std::uint32_t b) {
    return big_.empty() ? small_ : big_[b];
  }
  std::uint64_t block(std::uint32_t b) const {
    return big_.empty() ? small_ : big_[b];
  }

  // Clears bits above the universe size in the top block.
  void trim() {
    const std::uint32_t used = n_ & 63;
    if (n_ > 0 && used != 0)
      block(block_count() - 1) &= (std::uint64_t{1} << used) - 1;
    if (n_ == 0) small_ = 0;
  }

  void check_world(World w) const {
    if (w >= n_)
      throw Error("world index " + std::to_string(w) +
                  " outside universe of size " + std::to_string(n_));
  }

  void check_same(const WorldSet& o) const {
    if (n_ != o.n_)
      throw Error("world sets come from different universes (" +
                  std::to_string(n_) + " vs " + std::to_string(o.n_) + ")");
  }

  std::uint32_t n_ = 0;
  std::uint64_t small_ = 0;          // storage when the universe fits a word
  std::vector<std::uint64_t> big_;   // storage otherwise
};

}  // namespace ibu
