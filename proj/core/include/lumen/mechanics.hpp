#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lumen/engine.hpp"
#include "lumen/gdl.hpp"

// Derives the mechanic catalog of a game from its description and maps play
// traces to the binary trigger vectors that key archive cells.

namespace lumen::mech {

enum class Trigger {
  Rule,        // any of the listed interaction rules fired
  UseWith,     // avatar pressed use holding the conditioned resource
  UseWithout,  // avatar pressed use without it
  UseAny,      // avatar pressed use (no conditioned resource in the game)
};

struct MechanicDef {
  int index = 0;
  std::string label;
  Trigger trigger = Trigger::Rule;
  std::vector<int> rule_indices;  // Trigger::Rule: rules deduped into this mechanic
  std::string description;
};

struct MechanicCatalog {
  std::string game;
  std::vector<MechanicDef> defs;
  int rule_count = 0;  // interaction rules in the source description

  int size() const { return static_cast<int>(defs.size()); }
  int index_of(std::string_view label) const;  // -1 when absent
};

// Length-n bit vector; bit i corresponds to catalog mechanic i.
struct MechanicVector {
  std::uint64_t bits = 0;
  int n = 0;

  bool get(int i) const { return (bits >> i) & 1; }
  void set(int i) { bits |= 1ULL << i; }
  bool operator==(const MechanicVector&) const = default;

  std::string to_string() const;
  static MechanicVector from_string(std::string_view s);
};

// One mechanic per interaction rule in declaration order (rules differing only
// by score are merged), preceded by the avatar input mechanics: a shooter
// avatar gets use-with/use-without mechanics when the game conditions rules on
// a resource, or a single use mechanic otherwise.
MechanicCatalog extract_mechanics(const gdl::GameDescription& desc);

// bit i = 1 iff at least one trace event matches mechanic i; frequency is
// ignored. Throws std::logic_error on rule indices outside the description.
MechanicVector vector_from_trace(const sim::PlayTrace& trace,
                                 const MechanicCatalog& catalog);

std::vector<std::string> labels_of(const MechanicVector& v,
                                   const MechanicCatalog& catalog);

// index,label,description rows mirroring the catalog order
std::string catalog_csv(const MechanicCatalog& catalog);

}  // namespace lumen::mech
