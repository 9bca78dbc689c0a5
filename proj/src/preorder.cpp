#include "ibu/preorder.hpp"

#include <algorithm>
#include <sstream>

#include "ibu/alphabet.hpp"

namespace ibu {

std::string RelationIssue::describe(const Universe& u) const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Reflexivity:
      out << "missing reflexive pair " << u.world_label(a) << " <= "
          << u.world_label(a);
      break;
    case Kind::Transitivity:
      out << "transitivity broken: " << u.world_label(a) << " <= "
          << u.world_label(b) << " and " << u.world_label(b) << " <= "
          << u.world_label(c) << " but not " << u.world_label(a) << " <= "
          << u.world_label(c);
      break;
    case Kind::Totality:
      out << "incomparable pair " << u.world_label(a) << ", "
          << u.world_label(b);
      break;
  }
  return out.str();
}

RelationValidation validate_relation(const WorldSet& domain,
                                     const std::vector<WorldSet>& rows,
                                     bool require_total) {
  RelationValidation v;
  const std::vector<World> members = domain.worlds();
  for (World a : members) {
    if (a >= rows.size() || !rows[a].contains(a))
      v.issues.push_back({RelationIssue::Kind::Reflexivity, a, a, 0});
  }
  for (World a : members)
    for (World b : members) {
      if (a >= rows.size() || !rows[a].contains(b)) continue;
      for (World c : members)
        if (rows[b].contains(c) && !rows[a].contains(c))
          v.issues.push_back({RelationIssue::Kind::Transitivity, a, b, c});
    }
  if (require_total) {
    for (std::size_t i = 0; i < members.size(); ++i)
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        const World a = members[i], b = members[j];
        const bool ab = a < rows.size() && rows[a].contains(b);
        const bool ba = b < rows.size() && rows[b].contains(a);
        if (!ab && !ba)
          v.issues.push_back({RelationIssue::Kind::Totality, a, b, 0});
      }
  }
  return v;
}

Preorder::Preorder(std::uint32_t universe_size, WorldSet domain,
                   std::vector<WorldSet> rows)
    : universe_size_(universe_size),
      domain_(std::move(domain)),
      rows_(std::move(rows)) {
  strict_below_.assign(universe_size_, WorldSet(universe_size_));
  domain_.for_each([&](World x) {
    WorldSet below(universe_size_);
    domain_.for_each([&](World y) {
      if (rows_[y].contains(x) && !rows_[x].contains(y)) below.insert(y);
    });
    strict_below_[x] = below;
  });
}

Preorder Preorder::closure(std::uint32_t universe_size, const WorldSet& domain,
                           std::span<const std::pair<World, World>> pairs) {
  std::vector<WorldSet> rows(universe_size, WorldSet(universe_size));
  domain.for_each([&](World w) { rows[w].insert(w); });
  for (const auto& [a, b] : pairs) {
    if (!domain.contains(a) || !domain.contains(b))
      throw Error("order pair endpoint outside the domain");
    rows[a].insert(b);
  }
  // Warshall over the domain rows; row unioning handles a whole row at once.
  bool changed = true;
  while (changed) {
    changed = false;
    domain.for_each([&](World a) {
      WorldSet reach = rows[a];
      rows[a].for_each([&](World b) { reach |= rows[b]; });
      if (reach != rows[a]) {
        rows[a] = reach;
        changed = true;
      }
    });
  }
  return Preorder(universe_size, domain, std::move(rows));
}

Preorder Preorder::from_layers(std::uint32_t universe_size,
                               const WorldSet& domain,
                               const std::vector<std::vector<World>>& layers) {
  std::vector<std::uint32_t> layer_of(universe_size, 0);
  WorldSet seen(universe_size);
  for (std::uint32_t i = 0; i < layers.size(); ++i) {
    for (World w : layers[i]) {
      if (!domain.contains(w))
        throw Error("layered order mentions world outside the domain");
      if (seen.contains(w))
        throw Error("layered order mentions a world twice");
      seen.insert(w);
      layer_of[w] = i;
    }
  }
  if (seen != domain)
    throw Error("layered order must mention every domain world exactly once");
  std::vector<WorldSet> rows(universe_size, WorldSet(universe_size));
  domain.for_each([&](World a) {
    domain.for_each([&](World b) {
      if (layer_of[a] <= layer_of[b]) rows[a].insert(b);
    });
  });
  return Preorder(universe_size, domain, std::move(rows));
}

Preorder Preorder::from_relation(std::uint32_t universe_size,
                                 const WorldSet& domain,
                                 std::vector<WorldSet> rows) {
  rows.resize(universe_size, WorldSet(universe_size));
  const RelationValidation v = validate_relation(domain, rows, false);
  if (!v.ok())
    throw Error("relation is not a preorder (" +
                std::to_string(v.issues.size()) + " violations)");
  // Clear any stray bits outside the domain.
  for (World a = 0; a < universe_size; ++a) {
    if (!domain.contains(a))
      rows[a] = WorldSet(universe_size);
    else
      rows[a] &= domain;
  }
  return Preorder(universe_size, domain, std::move(rows));
}

WorldSet Preorder::min_of(const WorldSet& n) const {
  if (!n.subset_of(domain_))
    throw Error("min-set query outside the order's domain");
  WorldSet out(universe_size_);
  n.for_each([&](World x) {
    if (!n.intersects(strict_below_[x])) out.insert(x);
  });
  return out;
}

bool Preorder::faithful_to(World w) const {
  check_member(w);
  bool ok = true;
  domain_.for_each([&](World other) {
    if (other != w && !strict(w, other)) ok = false;
  });
  return ok;
}

bool Preorder::is_total() const {
  bool total = true;
  domain_.for_each([&](World a) {
    domain_.for_each([&](World b) {
      if (!rows_[a].contains(b) && !rows_[b].contains(a)) total = false;
    });
  });
  return total;
}

std::string Preorder::describe(const Universe& u) const {
  std::ostringstream out;
  if (is_total()) {
    // Bucket domain worlds by how many worlds sit strictly below them; in a
    // total preorder that depth is constant on equivalence classes.
    std::vector<std::pair<std::uint32_t, World>> keyed;
    domain_.for_each([&](World w) {
      keyed.emplace_back(strict_below_[w].count(), w);
    });
    std::sort(keyed.begin(), keyed.end());
    bool first_layer = true;
    std::size_t i = 0;
    while (i < keyed.size()) {
      std::size_t j = i;
      while (j < keyed.size() && keyed[j].first == keyed[i].first) ++j;
      out << (first_layer ? "[" : " < [");
      for (std::size_t k = i; k < j; ++k)
        out << (k == i ? "" : ", ") << u.world_label(keyed[k].second);
      out << "]";
      first_layer = false;
      i = j;
    }
  } else {
    out << "pairs {";
    domain_.for_each([&](World a) {
      domain_.for_each([&](World b) {
        if (a != b && rows_[a].contains(b))
          out << " " << u.world_label(a) << " <= " << u.world_label(b) << ";";
      });
    });
    out << " }";
  }
  return out.str();
}

void enumerate_preorders(std::uint32_t universe_size, const WorldSet& domain,
                         const std::function<void(const Preorder&)>& yield) {
  const std::vector<World> members = domain.worlds();
  const std::size_t k = members.size();
  if (k > 5)
    throw Error("preorder enumeration capped at 5 worlds, got " +
                std::to_string(k));
  const std::size_t off_diagonal = k * (k - 1);
  const std::uint64_t limit = std::uint64_t{1} << off_diagonal;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    // Decode the off-diagonal bits row by row; the diagonal is implicit.
    std::vector<WorldSet> rows(universe_size, WorldSet(universe_size));
    std::size_t bit = 0;
    for (std::size_t i = 0; i < k; ++i) {
      rows[members[i]].insert(members[i]);
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j) continue;
        if ((mask >> bit) & 1) rows[members[i]].insert(members[j]);
        ++bit;
      }
    }
    bool transitive = true;
    for (std::size_t i = 0; i < k && transitive; ++i)
      for (std::size_t j = 0; j < k && transitive; ++j) {
        if (!rows[members[i]].contains(members[j])) continue;
        for (std::size_t l = 0; l < k; ++l)
          if (rows[members[j]].contains(members[l]) &&
              !rows[members[i]].contains(members[l])) {
            transitive = false;
            break;
          }
      }
    if (!transitive) continue;
    yield(Preorder::from_relation(universe_size, domain, std::move(rows)));
  }
}

}  // namespace ibu
