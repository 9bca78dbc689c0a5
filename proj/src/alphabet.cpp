#include "ibu/alphabet.hpp"

#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace ibu {

bool is_identifier(std::string_view name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
    return false;
  for (char c : name)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

Alphabet::Alphabet(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw Error("alphabet must declare at least one atom");
  if (atoms_.size() > kMaxAtoms)
    throw Error("alphabet has " + std::to_string(atoms_.size()) +
                " atoms; at most " + std::to_string(kMaxAtoms) +
                " are supported");
  std::set<std::string> seen;
  for (const auto& a : atoms_) {
    if (!is_identifier(a)) throw Error("invalid atom name '" + a + "'");
    if (!seen.insert(a).second) throw Error("duplicate atom name '" + a + "'");
  }
}

std::optional<std::uint32_t> Alphabet::index_of(std::string_view name) const {
  for (std::uint32_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == name) return i;
  return std::nullopt;
}

Universe Universe::of_alphabet(Alphabet alphabet) {
  Universe u;
  u.world_count_ = alphabet.world_count();
  u.alphabet_ = std::move(alphabet);
  u.label_base_ = 0;
  return u;
}

Universe Universe::abstract_worlds(std::uint32_t count) {
  if (count == 0) throw Error("abstract universe must have at least one world");
  if (count > 64) throw Error("abstract universe capped at 64 worlds");
  Universe u;
  u.world_count_ = count;
  u.label_base_ = 1;
  return u;
}

const Alphabet& Universe::alphabet() const {
  if (!alphabet_) throw Error("universe has abstract worlds, no alphabet");
  return *alphabet_;
}

std::string Universe::world_label(World w) const {
  return "w" + std::to_string(w + label_base_);
}

std::optional<World> Universe::find_world(std::string_view label) const {
  if (label.size() < 2 || label[0] != 'w') return std::nullopt;
  std::uint32_t value = 0;
  const char* begin = label.data() + 1;
  const char* end = label.data() + label.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  if (label.size() > 2 && label[1] == '0') return std::nullopt;  // no w07
  if (value < label_base_) return std::nullopt;
  const World w = value - label_base_;
  if (w >= world_count_) return std::nullopt;
  return w;
}

std::string Universe::set_label(const WorldSet& ws) const {
  std::ostringstream out;
  out << "{";
  bool sep = false;
  ws.for_each([&](World w) {
    out << (sep ? ", " : "") << world_label(w);
    sep = true;
  });
  out << "}";
  return out.str();
}

}  // namespace ibu
