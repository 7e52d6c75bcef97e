#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Parser and serializer for the game description language: a line-oriented
// subset of VGDL with four sections (SpriteSet, InteractionSet,
// TerminationSet, LevelMapping), one declaration per line, key=value params.
// See docs/game-format.md for the grammar.

namespace lumen::gdl {

enum class Behavior {
  Immovable,
  AvatarMover,
  AvatarShooter,
  RandomNpc,
  Chaser,
  Fleeing,
  Missile,
  Spawner,
  Flicker,
  Resource,
  PortalGoal,
};

enum class Dir { None, Up, Down, Left, Right };

struct SpriteDef {
  std::string id;
  Behavior behavior = Behavior::Immovable;
  // behavior-specific params, all defaulted
  int cooldown = 1;       // ticks between moves (movers) / use presses
  Dir dir = Dir::None;    // missile heading
  int lifetime = 0;       // flicker/missile lifespan in ticks, 0 = forever
  std::string child;      // spawner child id
  int period = 0;         // spawner tick period (0 with prob>0 = probabilistic)
  double prob = 0.0;      // spawner per-tick spawn probability
  int cap = -1;           // spawner total spawn cap, -1 = unlimited
  std::string shoot;      // avatar-shooter projectile id
  int range = 1;          // avatar-shooter spawn offset (0 = own tile)
  int limit = 0;          // resource collection limit, 0 = unlimited
  int line = 0;

  bool operator==(const SpriteDef&) const = default;
};

inline bool is_avatar(Behavior b) {
  return b == Behavior::AvatarMover || b == Behavior::AvatarShooter;
}

enum class Effect {
  KillSprite,
  KillBoth,
  StepBack,
  CollectResource,
  TransformTo,
  Spawn,
  KillIfOtherHasMore,
  ChangeResource,
  UndoAll,
};

enum class Cmp { Lt, Le, Gt, Ge, Eq };

bool cmp_eval(Cmp op, long long lhs, long long rhs);

// Resource predicate on the avatar, e.g. "key>=1".
struct Condition {
  std::string resource;
  Cmp op = Cmp::Ge;
  int count = 0;

  bool operator==(const Condition&) const = default;
};

struct InteractionRule {
  std::vector<std::string> actors;     // class set: one or more sprite ids
  std::vector<std::string> colliders;  // empty when eos=true
  bool eos = false;                    // collider is the screen boundary
  Effect effect = Effect::KillSprite;
  std::string target;    // transformTo
  std::string child;     // spawn
  std::string resource;  // collectResource/changeResource/killIfOtherHasMore
  int count = 0;         // killIfOtherHasMore
  int delta = 0;         // changeResource
  int score_delta = 0;
  std::string label;  // mechanic label annotation, may be empty
  std::optional<Condition> condition;
  int line = 0;

  bool operator==(const InteractionRule&) const = default;
};

enum class TermKind { SpriteCounter, MultiSpriteCounter, Timeout };

struct TerminationRule {
  TermKind kind = TermKind::SpriteCounter;
  std::vector<std::string> sprites;
  int limit = 0;
  Cmp op = Cmp::Eq;  // sprite-counter comparator
  int ticks = 0;     // timeout
  bool win = false;
  int line = 0;

  bool operator==(const TerminationRule&) const = default;
};

struct GameDescription {
  std::string name;
  int width = 12;
  int height = 10;
  std::vector<SpriteDef> sprites;
  std::vector<InteractionRule> interactions;
  std::vector<TerminationRule> terminations;
  // declaration-ordered mapping; the floor char maps to an empty stack
  std::vector<std::pair<char, std::vector<std::string>>> level_mapping;
  std::string tile_alphabet;  // mapping chars in declaration order
  char floor_char = '.';
  char avatar_char = 'A';

  bool operator==(const GameDescription&) const = default;

  int sprite_index(std::string_view id) const;  // -1 when absent
  const SpriteDef* sprite(std::string_view id) const;
  int avatar_index() const;
  // resource named in the first conditioned rule, if any
  std::optional<std::string> conditioned_resource() const;
  const std::vector<std::string>* stack_for(char c) const;
};

struct Level {
  int width = 0;
  int height = 0;
  std::string grid;  // row-major, width*height chars

  char at(int x, int y) const { return grid[static_cast<size_t>(y) * width + x]; }
  char& at(int x, int y) { return grid[static_cast<size_t>(y) * width + x]; }

  bool operator==(const Level&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& msg)
      : std::runtime_error(format(line, msg)), line_(line) {}
  int line() const { return line_; }

 private:
  static std::string format(int line, const std::string& msg);
  int line_;
};

GameDescription parse_game(std::string_view text);
std::string serialize_game(const GameDescription& desc);

Level parse_level(std::string_view text, const GameDescription& desc);
std::string serialize_level(const Level& level);

// number of avatar-mapped tiles in a raw grid (used by mutation repair)
int count_avatars(const Level& level, const GameDescription& desc);

const char* behavior_name(Behavior b);
const char* effect_name(Effect e);
const char* dir_name(Dir d);
const char* cmp_name(Cmp op);

}  // namespace lumen::gdl
