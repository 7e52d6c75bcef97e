#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lumen/agents.hpp"
#include "lumen/engine.hpp"
#include "lumen/mechanics.hpp"

// Constrained MAP-Elites core: chromosome evaluation (constraint + entropy
// fitness), the archive with per-cell elite and bounded infeasible
// populations, mutation, and the generation loop.

namespace lumen::qd {

struct RunConfig {
  int iterations = 500;
  int batch_size = 50;
  double random_fraction = 0.20;   // share of each batch drawn fresh
  double elite_parent_prob = 0.50; // chance of mutating the elite over the
                                   // best infeasible level of a cell
  double threshold = 0.10;         // feasibility threshold on the time score
  int t_ideal = 70;
  int idle_runs = 5;
  int idle_pass_needed = 3;        // majority of idle_runs, mirrors the E rule
  double w = 0.25;                 // tile-entropy weight in the fitness blend
  double mutation_continue_prob = 0.5;
  int max_ticks = 150;
  std::uint64_t seed = 1;
  int infeasible_cap = 20;
  double floor_weight = 0.6;       // floor share in random levels
  char border_char = 0;            // 0 = no border ring in random levels
  agent::AgentConfig agent;

  void validate() const;  // throws std::invalid_argument
};

struct EvalResult {
  int win = 0;          // 1 when the evaluation agent finished the level
  int win_tick = 0;     // valid when win=1
  int survival_tick = 0;  // valid when win=0
  int idle_passes = 0;
  int idle_runs = 0;
  double time_score = 0.0;  // P
  double idle_score = 0.0;  // E
  double constraint = 0.0;  // C = P + E
  double fitness = 0.0;     // weighted entropy, lower is better
  int score = 0;
  mech::MechanicVector vector;
  std::uint64_t seed = 0;  // base seed; episode/idle seeds derive from it

  bool operator==(const EvalResult&) const = default;
};

enum class Lineage { Random, Mutated };

struct Chromosome {
  gdl::Level level;
  std::optional<EvalResult> eval;
  Lineage lineage = Lineage::Random;
};

struct Cell {
  mech::MechanicVector key;
  std::optional<Chromosome> elite;
  std::vector<Chromosome> infeasible;  // sorted by constraint, descending
};

struct Archive {
  mech::MechanicCatalog catalog;
  std::map<std::uint64_t, Cell> cells;  // keyed by vector bits
  int generation = 0;
  int infeasible_cap = 20;
  double threshold = 0.1;  // feasibility threshold applied by insert()

  int elite_count() const;
  int populated_count() const { return static_cast<int>(cells.size()); }
  const Cell* cell(const mech::MechanicVector& v) const;
};

// --- constraint scores ----------------------------------------------------

// Time constraint: wins score 1/|t_win - t_ideal|, losses score
// 0.25/|t_survival - t_ideal|; distances below one tick are floored to one so
// a perfect-time win yields 1 and a perfect-time loss 0.25.
double time_constraint(int win, int win_tick, int survival_tick, int t_ideal);

// Idle constraint: 1 when the pass ratio reaches one half, else the raw ratio.
double idle_constraint(int n_pass, int n_total);

// --- entropy fitness --------------------------------------------------------

// Shannon entropy (base 2) of the tile distribution, normalized by
// log2(alphabet_size) into [0,1].
double tile_entropy(const gdl::Level& level, int alphabet_size);

// Entropy of the per-tile identical-neighbor ratio, quantized into five
// buckets (floor(4r) clamped to 4) over the von Neumann neighborhood,
// normalized by log2(5).
double derivative_entropy(const gdl::Level& level);

// w * tile entropy + (1-w) * derivative entropy; minimized.
double level_fitness(const gdl::Level& level, double w, int alphabet_size);

// --- evaluation -------------------------------------------------------------

// Runs the evaluation agent once and the idle agent idle_runs times (seeds
// derived from `seed`), then assembles constraint scores, fitness and the
// mechanic vector from the evaluation trace.
EvalResult evaluate(const sim::CompiledGame& game, const mech::MechanicCatalog& catalog,
                    const gdl::Level& level, const RunConfig& cfg, std::uint64_t seed);

// feasible = passed every idle test (E == 1) and time score at threshold
bool is_feasible(const EvalResult& result, double threshold);

// --- variation --------------------------------------------------------------

// Re-rolls one uniformly random tile, then keeps re-rolling more with
// probability continue_prob until the check fails. The avatar-count invariant
// is repaired afterwards (missing avatar placed on a random floor tile,
// surplus avatars turned to floor). rerolls, when given, receives the number
// of re-roll operations performed.
gdl::Level mutate_level(const gdl::Level& level, const gdl::GameDescription& desc,
                        double continue_prob, Rng& rng, int* rerolls = nullptr);

// Fresh level: optional border ring, exactly one avatar, remaining tiles drawn
// from the alphabet with the configured floor weight.
gdl::Level random_level(const gdl::GameDescription& desc, const RunConfig& cfg, Rng& rng);

// --- archive ----------------------------------------------------------------

enum class Placement {
  NewElite,
  ReplacedElite,
  RejectedElite,
  InfeasibleKept,
  InfeasibleDropped,
};

Placement insert(Archive& archive, Chromosome&& chromosome);

// round(batch * random_fraction) fresh levels followed by mutated offspring of
// uniformly chosen populated cells (elite vs best-infeasible parent picked by
// elite_parent_prob, falling back to whichever exists).
std::vector<Chromosome> next_generation(const Archive& archive,
                                        const gdl::GameDescription& desc,
                                        const RunConfig& cfg, Rng& rng);

// --- generation loop ---------------------------------------------------------

struct GenerationStats {
  int generation = 0;
  int elite_count = 0;
  int populated_cells = 0;
  double mean_elite_fitness = 0.0;  // 0 when no elites
  double mean_constraint = 0.0;     // mean C over this generation's batch
  long long evaluations_done = 0;   // cumulative
};

using GenerationCallback = std::function<void(const GenerationStats&, const Archive&)>;

// iterations rounds of generate -> evaluate -> insert. Evaluations run on
// `threads` workers; insertion is serial in batch order, so results do not
// depend on the thread count.
Archive evolve(const gdl::GameDescription& desc, const RunConfig& cfg, int threads,
               const GenerationCallback& on_generation = {});

}  // namespace lumen::qd
