#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lumen/gdl.hpp"
#include "lumen/rng.hpp"

// Deterministic tick-based simulator with a cloneable forward model.
// A GameDescription is compiled once (CompiledGame), then paired with a level
// into a Board. Immovable sprites that no rule can alter become a static tile
// layer in the Board; only mutable sprites live in GameState, which keeps
// cloning cheap for search agents.

namespace lumen::sim {

enum class Action { Nil, Up, Down, Left, Right, Use };
constexpr int kActionCount = 6;

enum class Status { Running, Win, Loss };

enum class EventKind { Collision, InputUse, Termination };

struct GameEvent {
  int tick = 0;
  EventKind kind = EventKind::Collision;
  int rule = -1;           // collision: interaction index; termination:
                           // termination index, -1 = forced timeout
  int actor_def = -1;      // collision participants (def indices)
  int collider_def = -1;   // -1 with eos=true for boundary collisions
  bool eos = false;
  bool with_resource = false;  // input-use: avatar held the conditioned resource
  Status outcome = Status::Running;  // termination only

  bool operator==(const GameEvent&) const = default;
};

// Trivially copyable: states clone by memcpy, which the search agent leans on.
// Resource kinds are capped at kMaxResources per game (checked at compile).
constexpr int kMaxResources = 4;

struct SpriteInstance {
  std::int32_t id = 0;   // stable per-episode creation id
  std::int16_t def = 0;  // index into GameDescription::sprites
  std::int16_t x = 0, y = 0;
  gdl::Dir orient = gdl::Dir::None;
  bool alive = true;
  std::int16_t cooldown_left = 0;
  std::int16_t lifetime_left = -1;  // -1 = no expiry
  std::int16_t spawn_left = -1;     // spawner budget, -1 = unlimited
  std::int16_t res[kMaxResources] = {0, 0, 0, 0};

  bool operator==(const SpriteInstance&) const = default;
};

struct CompiledGame {
  const gdl::GameDescription* desc = nullptr;

  struct Rule {
    std::uint64_t actor_mask = 0;
    std::uint64_t collider_mask = 0;
    bool eos = false;
    gdl::Effect effect = gdl::Effect::KillSprite;
    int target_def = -1;
    int child_def = -1;
    int res = -1;  // resource index
    int count = 0;
    int delta = 0;
    int score = 0;
    bool has_cond = false;
    int cond_res = -1;
    gdl::Cmp cond_op = gdl::Cmp::Ge;
    int cond_count = 0;
  };

  struct Def {
    gdl::Behavior behavior;
    gdl::Dir dir;
    int cooldown, lifetime, period, cap, range, limit;
    double prob;
    int child_def = -1;  // spawner child
    int shoot_def = -1;  // shooter projectile
    bool inert = false;  // immovable and untouchable by every rule
  };

  std::vector<Rule> rules;
  std::vector<Def> defs;
  std::vector<std::string> resource_names;
  std::vector<int> resource_limits;  // per resource, 0 = unlimited
  int avatar_def = -1;
  int cond_res = -1;  // resource index of the first conditioned rule, -1 = none
  bool has_timeout_rule = false;

  explicit CompiledGame(const gdl::GameDescription& d);
  int resource_index(std::string_view name) const;
};

struct Board {
  const CompiledGame* game = nullptr;
  int width = 0, height = 0;
  // static layer: per-tile inert def indices (usually 0 or 1 entries)
  std::vector<std::vector<int>> inert_tiles;
  std::vector<std::uint64_t> inert_mask;  // per tile, OR of 1<<def
  std::vector<int> static_def_counts;  // per def, for termination counters
  std::vector<SpriteInstance> initial;  // dynamic sprites in reading order
  int initial_next_id = 0;

  Board(const CompiledGame& g, const gdl::Level& level);

  int tile(int x, int y) const { return y * width + x; }
  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
};

struct GameState {
  int tick = 0;
  Status status = Status::Running;
  int score = 0;
  Rng rng;
  std::vector<SpriteInstance> sprites;
  int next_id = 0;

  bool operator==(const GameState&) const = default;

  const SpriteInstance* avatar(const CompiledGame& g) const;
  int avatar_resource(const CompiledGame& g, int res_index) const;
  // order- and identity-sensitive digest of the mutable state; tick excluded
  // unless the game has a timeout rule (used for search transpositions)
  std::uint64_t fingerprint(const CompiledGame& g) const;
};

GameState init_state(const Board& board, std::uint64_t seed);
GameState clone_state(const GameState& state);

// Advances one tick: avatar action, NPC/missile movement, spawners, collision
// resolution in declaration order, termination check. Appends emitted events.
// Stepping a terminated state throws std::logic_error.
void step(const Board& board, GameState& state, Action action,
          std::vector<GameEvent>& events);

// step() without event collection, for search rollouts
void step_quiet(const Board& board, GameState& state, Action action);

struct PlayTrace {
  std::vector<GameEvent> events;
  std::vector<Action> actions;
  Status final_status = Status::Running;
  int final_tick = 0;
  int score = 0;

  bool operator==(const PlayTrace&) const = default;
};

// Agent callback: given the current state, choose the next action.
using ActionFn = std::function<Action(const Board&, const GameState&)>;

// Runs until termination or max_ticks; a still-running state at max_ticks is
// recorded as a loss (forced timeout) with a synthetic termination event.
PlayTrace run_episode(const Board& board, const ActionFn& agent, int max_ticks,
                      std::uint64_t seed);

// Replays a fixed action sequence (stops early on termination or when the
// script runs out; a running state is left as Running).
PlayTrace replay_actions(const Board& board, const std::vector<Action>& actions,
                         int max_ticks, std::uint64_t seed);

int count_sprites(const Board& board, const GameState& state, int def);

const char* action_name(Action a);
const char* status_name(Status s);
Action action_from_name(std::string_view name);  // throws std::invalid_argument

// line-per-event text log; the format is stable and replayable byte-for-byte
std::string format_trace(const Board& board, const PlayTrace& trace);

}  // namespace lumen::sim
