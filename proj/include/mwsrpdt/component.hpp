#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "mwsrpdt/types.hpp"

namespace mwsrpdt {

// What a pheromone trail is attached to. Encodings widen the context of a
// move: Arc = the arc alone; TeamArc adds the team; DayTeamArc adds the day;
// TeamTask keeps only the team and the destination.
enum class ComponentEncoding { Arc = 1, TeamArc = 2, DayTeamArc = 3, TeamTask = 4 };

// CLI spelling: "ct1".."ct4" in the order above.
std::string to_string(ComponentEncoding encoding);
ComponentEncoding component_encoding_from_string(const std::string& s);

// Canonical key of one construction move under an encoding. Fields the
// encoding does not use are normalized (day/team to 0, from to none()) so
// equality and hashing see only the encoded context. `to` may be the depot:
// end-of-day returns carry components too.
struct ComponentKey {
  ComponentEncoding encoding = ComponentEncoding::Arc;
  int day = 0;
  int team = 0;
  ExtendedVertex from;
  ExtendedVertex to;

  // Sentinel distinct from every real vertex (customer 0 does not exist).
  static ExtendedVertex none() { return {0, -1}; }

  static ComponentKey make(ComponentEncoding encoding, int day, int team,
                           ExtendedVertex from, ExtendedVertex to) {
    switch (encoding) {
      case ComponentEncoding::Arc: return {encoding, 0, 0, from, to};
      case ComponentEncoding::TeamArc: return {encoding, 0, team, from, to};
      case ComponentEncoding::DayTeamArc: return {encoding, day, team, from, to};
      case ComponentEncoding::TeamTask: return {encoding, 0, team, none(), to};
    }
    return {encoding, day, team, from, to};
  }

  friend auto operator<=>(const ComponentKey&, const ComponentKey&) = default;
};

struct ComponentKeyHash {
  std::size_t operator()(const ComponentKey& k) const {
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto absorb = [&h](std::uint64_t v) {
      h ^= v;
      h *= 0x100000001b3ull;
    };
    absorb(static_cast<std::uint64_t>(k.encoding));
    absorb(static_cast<std::uint64_t>(static_cast<std::int64_t>(k.day)));
    absorb(static_cast<std::uint64_t>(static_cast<std::int64_t>(k.team)));
    absorb(static_cast<std::uint64_t>(static_cast<std::int64_t>(k.from.customer)));
    absorb(static_cast<std::uint64_t>(static_cast<std::int64_t>(k.from.task)));
    absorb(static_cast<std::uint64_t>(static_cast<std::int64_t>(k.to.customer)));
    absorb(static_cast<std::uint64_t>(static_cast<std::int64_t>(k.to.task)));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace mwsrpdt
