#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ibu/worldset.hpp"

namespace ibu {

// An ordered list of distinct atom names. The first declared atom is the most
// significant bit of a world index, so over {b, n, t} world w5 = 101 makes b
// and t true and n false.
class Alphabet {
 public:
  static constexpr std::uint32_t kMaxAtoms = 16;

  explicit Alphabet(std::vector<std::string> atoms);

  std::uint32_t size() const { return static_cast<std::uint32_t>(atoms_.size()); }
  const std::vector<std::string>& atoms() const { return atoms_; }
  const std::string& atom_name(std::uint32_t index) const { return atoms_[index]; }
  std::optional<std::uint32_t> index_of(std::string_view name) const;

  std::uint32_t world_count() const { return 1u << size(); }

  bool atom_true_in(World w, std::uint32_t atom_index) const {
    return (w >> (size() - 1 - atom_index)) & 1;
  }

  bool operator==(const Alphabet& o) const { return atoms_ == o.atoms_; }

 private:
  std::vector<std::string> atoms_;
};

// True when `name` is a valid atom identifier: [A-Za-z_][A-Za-z0-9_]*.
bool is_identifier(std::string_view name);

// The world domain shared by orders, states and update operators. Either all
// valuations of an alphabet (worlds labelled w0, w1, ...) or a bare set of
// abstract worlds with no valuations (labelled w1..wn, matching the usual
// 1-based convention for such constructions).
class Universe {
 public:
  Universe() = default;  // degenerate empty universe; assign before use

  static Universe of_alphabet(Alphabet alphabet);
  static Universe abstract_worlds(std::uint32_t count);

  std::uint32_t world_count() const { return world_count_; }
  bool has_alphabet() const { return alphabet_.has_value(); }
  const Alphabet& alphabet() const;

  std::string world_label(World w) const;
  // Resolves a label such as "w3"; empty when unknown.
  std::optional<World> find_world(std::string_view label) const;

  WorldSet empty_set() const { return WorldSet(world_count_); }
  WorldSet full_set() const { return WorldSet::full(world_count_); }

  std::string set_label(const WorldSet& ws) const;  // "{w2, w4}"

  bool operator==(const Universe& o) const {
    return world_count_ == o.world_count_ && alphabet_ == o.alphabet_;
  }

 private:
  std::optional<Alphabet> alphabet_;
  std::uint32_t world_count_ = 0;
  std::uint32_t label_base_ = 0;  // 0 for alphabet universes, 1 for abstract
};

}  // namespace ibu
