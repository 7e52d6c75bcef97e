#include "lumen/engine.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace lumen::sim {

namespace {

struct Delta {
  int dx, dy;
};

Delta delta_of(gdl::Dir d) {
  switch (d) {
    case gdl::Dir::Up: return {0, -1};
    case gdl::Dir::Down: return {0, 1};
    case gdl::Dir::Left: return {-1, 0};
    case gdl::Dir::Right: return {1, 0};
    default: return {0, 0};
  }
}

gdl::Dir opposite(gdl::Dir d) {
  switch (d) {
    case gdl::Dir::Up: return gdl::Dir::Down;
    case gdl::Dir::Down: return gdl::Dir::Up;
    case gdl::Dir::Left: return gdl::Dir::Right;
    case gdl::Dir::Right: return gdl::Dir::Left;
    default: return gdl::Dir::None;
  }
}

constexpr gdl::Dir kMoveDirs[4] = {gdl::Dir::Up, gdl::Dir::Down, gdl::Dir::Left,
                                   gdl::Dir::Right};

inline void hash_mix(std::uint64_t& h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// CompiledGame
// ---------------------------------------------------------------------------

int CompiledGame::resource_index(std::string_view name) const {
  for (size_t i = 0; i < resource_names.size(); ++i)
    if (resource_names[i] == name) return static_cast<int>(i);
  return -1;
}

CompiledGame::CompiledGame(const gdl::GameDescription& d) : desc(&d) {
  auto def_index = [&](const std::string& id) { return d.sprite_index(id); };

  auto intern_resource = [&](const std::string& name) {
    if (name.empty()) return -1;
    int idx = resource_index(name);
    if (idx >= 0) return idx;
    if (resource_names.size() >= kMaxResources)
      throw std::invalid_argument("game '" + d.name + "' uses more than " +
                                  std::to_string(kMaxResources) + " resource kinds");
    resource_names.push_back(name);
    return static_cast<int>(resource_names.size() - 1);
  };

  for (const auto& r : d.interactions) {
    Rule rule;
    for (const auto& id : r.actors) rule.actor_mask |= 1ULL << def_index(id);
    for (const auto& id : r.colliders) rule.collider_mask |= 1ULL << def_index(id);
    rule.eos = r.eos;
    rule.effect = r.effect;
    rule.target_def = r.target.empty() ? -1 : def_index(r.target);
    rule.child_def = r.child.empty() ? -1 : def_index(r.child);
    rule.res = intern_resource(r.resource);
    rule.count = r.count;
    rule.delta = r.delta;
    rule.score = r.score_delta;
    if (r.condition) {
      rule.has_cond = true;
      rule.cond_res = intern_resource(r.condition->resource);
      rule.cond_op = r.condition->op;
      rule.cond_count = r.condition->count;
      if (cond_res < 0) cond_res = rule.cond_res;
    }
    rules.push_back(rule);
  }

  for (const auto& s : d.sprites) {
    Def def;
    def.behavior = s.behavior;
    def.dir = s.dir;
    def.cooldown = s.cooldown;
    def.lifetime = s.lifetime;
    def.period = s.period;
    def.cap = s.cap;
    def.range = s.range;
    def.limit = s.limit;
    def.prob = s.prob;
    def.child_def = s.child.empty() ? -1 : def_index(s.child);
    def.shoot_def = s.shoot.empty() ? -1 : def_index(s.shoot);
    defs.push_back(def);
  }

  avatar_def = d.avatar_index();

  // A def is inert (lives in the static tile layer) when it never moves and no
  // rule can remove it or touch its resources.
  std::uint64_t actor_union = 0, touched_colliders = 0;
  for (const auto& rule : rules) {
    actor_union |= rule.actor_mask;
    if (rule.effect == gdl::Effect::KillBoth ||
        rule.effect == gdl::Effect::CollectResource)
      touched_colliders |= rule.collider_mask;
  }
  for (size_t i = 0; i < defs.size(); ++i) {
    const std::uint64_t bit = 1ULL << i;
    defs[i].inert = defs[i].behavior == gdl::Behavior::Immovable &&
                    !(actor_union & bit) && !(touched_colliders & bit);
  }

  for (const auto& name : resource_names) {
    const gdl::SpriteDef* def = d.sprite(name);
    resource_limits.push_back(def ? def->limit : 0);
  }

  for (const auto& t : d.terminations)
    if (t.kind == gdl::TermKind::Timeout) has_timeout_rule = true;
}

// ---------------------------------------------------------------------------
// Board
// ---------------------------------------------------------------------------

Board::Board(const CompiledGame& g, const gdl::Level& level)
    : game(&g), width(level.width), height(level.height) {
  inert_tiles.resize(static_cast<size_t>(width) * height);
  inert_mask.assign(static_cast<size_t>(width) * height, 0);
  static_def_counts.assign(g.defs.size(), 0);

  const auto& desc = *g.desc;
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const auto* stack = desc.stack_for(level.at(x, y));
      assert(stack != nullptr);
      for (const auto& id : *stack) {
        int def = desc.sprite_index(id);
        if (g.defs[def].inert) {
          inert_tiles[static_cast<size_t>(tile(x, y))].push_back(def);
          inert_mask[static_cast<size_t>(tile(x, y))] |= 1ULL << def;
          ++static_def_counts[def];
          continue;
        }
        SpriteInstance inst;
        inst.id = initial_next_id++;
        inst.def = static_cast<std::int16_t>(def);
        inst.x = static_cast<std::int16_t>(x);
        inst.y = static_cast<std::int16_t>(y);
        inst.orient = g.defs[def].dir;
        if (def == g.avatar_def && inst.orient == gdl::Dir::None)
          inst.orient = gdl::Dir::Up;
        inst.cooldown_left = static_cast<std::int16_t>(g.defs[def].cooldown);
        inst.lifetime_left =
            static_cast<std::int16_t>(g.defs[def].lifetime > 0 ? g.defs[def].lifetime : -1);
        inst.spawn_left = static_cast<std::int16_t>(g.defs[def].cap);
        initial.push_back(inst);
      }
    }
  }
}

// ---------------------------------------------------------------------------
// GameState
// ---------------------------------------------------------------------------

const SpriteInstance* GameState::avatar(const CompiledGame& g) const {
  for (const auto& s : sprites)
    if (s.alive && s.def == g.avatar_def) return &s;
  return nullptr;
}

int GameState::avatar_resource(const CompiledGame& g, int res_index) const {
  if (res_index < 0) return 0;
  const SpriteInstance* av = avatar(g);
  return av ? av->res[res_index] : 0;
}

std::uint64_t GameState::fingerprint(const CompiledGame& g) const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  hash_mix(h, static_cast<std::uint64_t>(status));
  hash_mix(h, static_cast<std::uint64_t>(static_cast<std::int64_t>(score)));
  if (g.has_timeout_rule) hash_mix(h, static_cast<std::uint64_t>(tick));
  for (std::uint64_t w : rng.s) hash_mix(h, w);
  for (const auto& s : sprites) {
    if (!s.alive) continue;
    std::uint64_t a = static_cast<std::uint16_t>(s.def);
    a = (a << 16) | static_cast<std::uint16_t>(s.x);
    a = (a << 16) | static_cast<std::uint16_t>(s.y);
    a = (a << 8) | static_cast<std::uint8_t>(s.orient);
    hash_mix(h, a);
    std::uint64_t b = static_cast<std::uint16_t>(s.cooldown_left);
    b = (b << 16) | static_cast<std::uint16_t>(s.lifetime_left);
    b = (b << 16) | static_cast<std::uint16_t>(s.spawn_left);
    hash_mix(h, b);
    std::uint64_t r = 0;
    for (int k = 0; k < kMaxResources; ++k)
      r = (r << 16) | static_cast<std::uint16_t>(s.res[k]);
    hash_mix(h, r);
  }
  return h;
}

GameState init_state(const Board& board, std::uint64_t seed) {
  GameState state;
  state.rng = Rng(seed);
  state.sprites = board.initial;
  state.next_id = board.initial_next_id;
  return state;
}

GameState clone_state(const GameState& state) { return state; }

// ---------------------------------------------------------------------------
// step
// ---------------------------------------------------------------------------

namespace {

// step() runs hundreds of thousands of times per evaluation; per-call scratch
// buffers live in thread_local storage so their capacity persists.
struct StepScratch {
  std::vector<std::pair<std::int16_t, std::int16_t>> prev_pos;
  std::vector<int> eos_attempts;
  // stamped per-tile occupancy chains; a stamp bump invalidates everything
  std::vector<std::uint32_t> tile_stamp;
  std::vector<std::uint32_t> visit_stamp;
  std::vector<int> head;       // per tile, last sprite chained
  std::vector<int> chain;      // per sprite, previous occupant or -1
  std::vector<int> group;      // co-located sprite indices, creation order
  std::vector<int> visit;      // tiles with collision work this tick
  std::uint32_t stamp = 0;
};

thread_local StepScratch tl_scratch;

struct Stepper {
  const Board& board;
  const CompiledGame& game;
  GameState& st;
  std::vector<GameEvent>* events;  // nullptr in quiet mode
  std::vector<std::pair<std::int16_t, std::int16_t>>& prev_pos;
  std::vector<int>& eos_attempts;

  Stepper(const Board& b, GameState& s, std::vector<GameEvent>* ev)
      : board(b), game(*b.game), st(s), events(ev),
        prev_pos(tl_scratch.prev_pos), eos_attempts(tl_scratch.eos_attempts) {
    prev_pos.clear();
    eos_attempts.clear();
  }

  int avatar_index() const {
    for (size_t i = 0; i < st.sprites.size(); ++i)
      if (st.sprites[i].alive && st.sprites[i].def == game.avatar_def)
        return static_cast<int>(i);
    return -1;
  }

  void record_prev(size_t from = 0) {
    prev_pos.resize(st.sprites.size());
    for (size_t i = from; i < st.sprites.size(); ++i)
      prev_pos[i] = {st.sprites[i].x, st.sprites[i].y};
  }

  void try_move(int idx, gdl::Dir dir) {
    auto& s = st.sprites[idx];
    auto [dx, dy] = delta_of(dir);
    int nx = s.x + dx, ny = s.y + dy;
    if (board.in_bounds(nx, ny)) {
      s.x = static_cast<std::int16_t>(nx);
      s.y = static_cast<std::int16_t>(ny);
    } else {
      eos_attempts.push_back(idx);
    }
  }

  int spawn(int def, int x, int y) {
    SpriteInstance inst;
    inst.id = st.next_id++;
    inst.def = static_cast<std::int16_t>(def);
    inst.x = static_cast<std::int16_t>(x);
    inst.y = static_cast<std::int16_t>(y);
    inst.orient = game.defs[def].dir;
    inst.cooldown_left = static_cast<std::int16_t>(game.defs[def].cooldown);
    inst.lifetime_left =
        static_cast<std::int16_t>(game.defs[def].lifetime > 0 ? game.defs[def].lifetime : -1);
    inst.spawn_left = static_cast<std::int16_t>(game.defs[def].cap);
    st.sprites.push_back(inst);
    record_prev(st.sprites.size() - 1);
    return static_cast<int>(st.sprites.size() - 1);
  }

  void avatar_phase(Action action) {
    int av = avatar_index();
    if (av < 0) return;
    switch (action) {
      case Action::Up:
      case Action::Down:
      case Action::Left:
      case Action::Right: {
        gdl::Dir d = gdl::Dir(int(gdl::Dir::Up) + (int(action) - int(Action::Up)));
        st.sprites[av].orient = d;
        try_move(av, d);
        break;
      }
      case Action::Use: {
        const auto& a = st.sprites[av];
        if (events) {
          GameEvent ev;
          ev.tick = st.tick;
          ev.kind = EventKind::InputUse;
          ev.actor_def = a.def;
          ev.with_resource = game.cond_res >= 0 && a.res[game.cond_res] >= 1;
          events->push_back(ev);
        }
        const auto& def = game.defs[a.def];
        if (def.behavior == gdl::Behavior::AvatarShooter && def.shoot_def >= 0) {
          auto [dx, dy] = delta_of(a.orient);
          int sx = a.x + dx * def.range, sy = a.y + dy * def.range;
          gdl::Dir facing = a.orient;
          if (board.in_bounds(sx, sy)) {
            int idx = spawn(def.shoot_def, sx, sy);
            st.sprites[idx].orient = facing;
          }
        }
        break;
      }
      case Action::Nil:
        break;
    }
  }

  void movement_phase(size_t limit) {
    for (size_t i = 0; i < limit; ++i) {
      auto& s = st.sprites[i];
      if (!s.alive) continue;

      if (s.lifetime_left >= 0) {
        if (--s.lifetime_left <= 0) {  // flicker/missile expiry
          s.alive = false;
          continue;
        }
      }

      const auto& def = game.defs[s.def];
      const bool mover = def.behavior == gdl::Behavior::RandomNpc ||
                         def.behavior == gdl::Behavior::Chaser ||
                         def.behavior == gdl::Behavior::Fleeing ||
                         def.behavior == gdl::Behavior::Missile;
      if (!mover) continue;
      if (--s.cooldown_left > 0) continue;
      s.cooldown_left = static_cast<std::int16_t>(def.cooldown);

      switch (def.behavior) {
        case gdl::Behavior::RandomNpc: {
          gdl::Dir d = kMoveDirs[st.rng.below(4)];
          s.orient = d;
          try_move(static_cast<int>(i), d);
          break;
        }
        case gdl::Behavior::Chaser:
        case gdl::Behavior::Fleeing: {
          int av = avatar_index();
          if (av < 0) break;
          const auto& a = st.sprites[av];
          int best[4], nbest = 0, best_dist = 0;
          const bool chase = def.behavior == gdl::Behavior::Chaser;
          for (int k = 0; k < 4; ++k) {
            auto [dx, dy] = delta_of(kMoveDirs[k]);
            int nx = s.x + dx, ny = s.y + dy;
            if (!board.in_bounds(nx, ny)) continue;
            int dist = std::abs(nx - a.x) + std::abs(ny - a.y);
            if (nbest == 0 || (chase ? dist < best_dist : dist > best_dist)) {
              best_dist = dist;
              nbest = 0;
              best[nbest++] = k;
            } else if (dist == best_dist) {
              best[nbest++] = k;
            }
          }
          if (nbest == 0) break;
          gdl::Dir d = kMoveDirs[best[st.rng.below(static_cast<std::uint32_t>(nbest))]];
          s.orient = d;
          try_move(static_cast<int>(i), d);
          break;
        }
        case gdl::Behavior::Missile:
          try_move(static_cast<int>(i), s.orient);
          break;
        default:
          break;
      }
    }
  }

  void spawner_phase() {
    const size_t limit = st.sprites.size();
    for (size_t i = 0; i < limit; ++i) {
      if (!st.sprites[i].alive) continue;
      const auto& def = game.defs[st.sprites[i].def];
      if (def.behavior != gdl::Behavior::Spawner) continue;

      bool fire = false;
      if (def.period > 0) {
        if (--st.sprites[i].cooldown_left <= 0) {
          st.sprites[i].cooldown_left = static_cast<std::int16_t>(def.period);
          fire = true;
        }
      } else if (def.prob > 0.0) {
        fire = st.rng.unit() < def.prob;
      }
      if (!fire || st.sprites[i].spawn_left == 0) continue;
      if (st.sprites[i].spawn_left > 0) --st.sprites[i].spawn_left;
      spawn(def.child_def, st.sprites[i].x, st.sprites[i].y);
    }
  }

  bool condition_holds(const CompiledGame::Rule& rule) const {
    if (!rule.has_cond) return true;
    return gdl::cmp_eval(rule.cond_op, st.avatar_resource(game, rule.cond_res),
                         rule.cond_count);
  }

  // collider < 0 for inert/EOS participants
  void fire(int rule_idx, int actor, int collider, int collider_def, bool eos) {
    const auto& rule = game.rules[rule_idx];
    if (events) {
      GameEvent ev;
      ev.tick = st.tick;
      ev.kind = EventKind::Collision;
      ev.rule = rule_idx;
      ev.actor_def = st.sprites[actor].def;
      ev.collider_def = collider_def;
      ev.eos = eos;
      events->push_back(ev);
    }
    st.score += rule.score;

    switch (rule.effect) {
      case gdl::Effect::KillSprite:
        st.sprites[actor].alive = false;
        break;
      case gdl::Effect::KillBoth:
        st.sprites[actor].alive = false;
        if (collider >= 0) st.sprites[collider].alive = false;
        break;
      case gdl::Effect::StepBack: {
        auto& a = st.sprites[actor];
        a.x = prev_pos[actor].first;
        a.y = prev_pos[actor].second;
        if (game.defs[a.def].behavior == gdl::Behavior::Missile)
          a.orient = opposite(a.orient);
        break;
      }
      case gdl::Effect::CollectResource: {
        st.sprites[actor].alive = false;
        if (collider >= 0) {
          auto& slot = st.sprites[collider].res[rule.res];
          ++slot;
          int limit = game.resource_limits[rule.res];
          if (limit > 0 && slot > limit) slot = static_cast<std::int16_t>(limit);
        }
        break;
      }
      case gdl::Effect::TransformTo: {
        auto& a = st.sprites[actor];
        const auto& target = game.defs[rule.target_def];
        a.def = static_cast<std::int16_t>(rule.target_def);
        if (target.dir != gdl::Dir::None) a.orient = target.dir;
        a.cooldown_left = static_cast<std::int16_t>(
            target.behavior == gdl::Behavior::Spawner && target.period > 0
                ? target.period
                : target.cooldown);
        a.lifetime_left =
            static_cast<std::int16_t>(target.lifetime > 0 ? target.lifetime : -1);
        a.spawn_left = static_cast<std::int16_t>(target.cap);
        break;
      }
      case gdl::Effect::Spawn:
        spawn(rule.child_def, st.sprites[actor].x, st.sprites[actor].y);
        break;
      case gdl::Effect::KillIfOtherHasMore: {
        int have = collider >= 0 ? st.sprites[collider].res[rule.res] : 0;
        if (have >= rule.count) st.sprites[actor].alive = false;
        break;
      }
      case gdl::Effect::ChangeResource: {
        auto& slot = st.sprites[actor].res[rule.res];
        slot = static_cast<std::int16_t>(std::max(0, slot + rule.delta));
        break;
      }
      case gdl::Effect::UndoAll:
        for (size_t i = 0; i < st.sprites.size(); ++i) {
          if (!st.sprites[i].alive) continue;
          st.sprites[i].x = prev_pos[i].first;
          st.sprites[i].y = prev_pos[i].second;
        }
        break;
    }
  }

  // Overlap groups are snapshotted once after movement and spawning, then each
  // group scans the rules in declaration order, revalidating pairs (alive,
  // still co-located, current defs) before firing. Sprites spawned by
  // collision effects join collisions next tick. Lone sprites on plain floor
  // never reach the rule loop.
  void collision_phase() {
    auto& sc = tl_scratch;
    const size_t tiles = board.inert_mask.size();
    if (sc.tile_stamp.size() < tiles) {
      sc.tile_stamp.assign(tiles, 0);
      sc.visit_stamp.assign(tiles, 0);
      sc.head.assign(tiles, -1);
    }
    ++sc.stamp;
    if (sc.stamp == 0) {  // wrapped; re-zero the stamps
      sc.tile_stamp.assign(sc.tile_stamp.size(), 0);
      sc.visit_stamp.assign(sc.visit_stamp.size(), 0);
      sc.stamp = 1;
    }
    sc.chain.resize(st.sprites.size());
    sc.visit.clear();

    const size_t n = st.sprites.size();
    for (size_t i = 0; i < n; ++i) {
      const auto& s = st.sprites[i];
      if (!s.alive) continue;
      const auto t = static_cast<size_t>(board.tile(s.x, s.y));
      if (sc.tile_stamp[t] != sc.stamp) {
        sc.tile_stamp[t] = sc.stamp;
        sc.chain[i] = -1;
        sc.head[t] = static_cast<int>(i);
        if (board.inert_mask[t] && sc.visit_stamp[t] != sc.stamp) {
          sc.visit_stamp[t] = sc.stamp;
          sc.visit.push_back(static_cast<int>(t));
        }
      } else {
        sc.chain[i] = sc.head[t];
        sc.head[t] = static_cast<int>(i);
        if (sc.visit_stamp[t] != sc.stamp) {
          sc.visit_stamp[t] = sc.stamp;
          sc.visit.push_back(static_cast<int>(t));
        }
      }
    }

    for (int t : sc.visit) {
      sc.group.clear();
      for (int i = sc.head[static_cast<size_t>(t)]; i >= 0; i = sc.chain[i])
        sc.group.push_back(i);
      std::reverse(sc.group.begin(), sc.group.end());  // creation order

      std::uint64_t group_mask = board.inert_mask[static_cast<size_t>(t)];
      for (int i : sc.group) group_mask |= 1ULL << st.sprites[i].def;

      for (size_t r = 0; r < game.rules.size(); ++r) {
        const auto& rule = game.rules[r];
        if (rule.eos) continue;
        if (!(rule.actor_mask & group_mask) || !(rule.collider_mask & group_mask))
          continue;

        // fire() may spawn (and so reallocate sprites); index fresh each time
        for (int ai : sc.group) {
          if (!st.sprites[ai].alive || board.tile(st.sprites[ai].x, st.sprites[ai].y) != t)
            continue;
          if (!(rule.actor_mask & (1ULL << st.sprites[ai].def))) continue;

          for (int ci : sc.group) {
            if (ai == ci) continue;
            if (!st.sprites[ci].alive ||
                board.tile(st.sprites[ci].x, st.sprites[ci].y) != t)
              continue;
            if (!(rule.collider_mask & (1ULL << st.sprites[ci].def))) continue;
            if (!condition_holds(rule)) continue;
            fire(static_cast<int>(r), ai, ci, st.sprites[ci].def, false);
            if (!st.sprites[ai].alive) break;
          }
          if (!st.sprites[ai].alive ||
              board.tile(st.sprites[ai].x, st.sprites[ai].y) != t)
            continue;
          for (int def : board.inert_tiles[static_cast<size_t>(t)]) {
            if (!(rule.collider_mask & (1ULL << def))) continue;
            if (!condition_holds(rule)) continue;
            fire(static_cast<int>(r), ai, -1, def, false);
            if (!st.sprites[ai].alive) break;
          }
        }
      }
    }

    if (!eos_attempts.empty()) {
      for (size_t r = 0; r < game.rules.size(); ++r) {
        const auto& rule = game.rules[r];
        if (!rule.eos) continue;
        for (int idx : eos_attempts) {
          const auto& s = st.sprites[idx];
          if (!s.alive) continue;
          if (!(rule.actor_mask & (1ULL << s.def))) continue;
          if (!condition_holds(rule)) continue;
          fire(static_cast<int>(r), idx, -1, -1, true);
        }
      }
    }
  }

  void termination_phase() {
    auto count = [&](int def) {
      int n = board.static_def_counts[def];
      for (const auto& s : st.sprites)
        if (s.alive && s.def == def) ++n;
      return n;
    };

    const auto& terms = game.desc->terminations;
    for (size_t t = 0; t < terms.size(); ++t) {
      const auto& rule = terms[t];
      bool hit = false;
      switch (rule.kind) {
        case gdl::TermKind::SpriteCounter:
          hit = gdl::cmp_eval(rule.op,
                              count(game.desc->sprite_index(rule.sprites[0])),
                              rule.limit);
          break;
        case gdl::TermKind::MultiSpriteCounter: {
          int total = 0;
          for (const auto& id : rule.sprites)
            total += count(game.desc->sprite_index(id));
          hit = total == rule.limit;
          break;
        }
        case gdl::TermKind::Timeout:
          hit = st.tick >= rule.ticks;
          break;
      }
      if (!hit) continue;
      st.status = rule.win ? Status::Win : Status::Loss;
      if (events) {
        GameEvent ev;
        ev.tick = st.tick;
        ev.kind = EventKind::Termination;
        ev.rule = static_cast<int>(t);
        ev.outcome = st.status;
        events->push_back(ev);
      }
      return;
    }
  }

  void run(Action action) {
    ++st.tick;
    record_prev();
    const size_t pre_action_count = st.sprites.size();
    avatar_phase(action);
    movement_phase(pre_action_count);
    spawner_phase();
    collision_phase();
    termination_phase();
    std::erase_if(st.sprites, [](const SpriteInstance& s) { return !s.alive; });
  }
};

}  // namespace

void step(const Board& board, GameState& state, Action action,
          std::vector<GameEvent>& events) {
  if (state.status != Status::Running)
    throw std::logic_error("step() on a terminated state");
  Stepper stepper(board, state, &events);
  stepper.run(action);
}

void step_quiet(const Board& board, GameState& state, Action action) {
  if (state.status != Status::Running)
    throw std::logic_error("step() on a terminated state");
  Stepper stepper(board, state, nullptr);
  stepper.run(action);
}

// ---------------------------------------------------------------------------
// episodes
// ---------------------------------------------------------------------------

PlayTrace run_episode(const Board& board, const ActionFn& agent, int max_ticks,
                      std::uint64_t seed) {
  GameState state = init_state(board, seed);
  PlayTrace trace;
  while (state.status == Status::Running && state.tick < max_ticks) {
    Action a = agent(board, state);
    trace.actions.push_back(a);
    step(board, state, a, trace.events);
  }
  if (state.status == Status::Running) {
    state.status = Status::Loss;  // loss by timeout
    GameEvent ev;
    ev.tick = state.tick;
    ev.kind = EventKind::Termination;
    ev.rule = -1;
    ev.outcome = Status::Loss;
    trace.events.push_back(ev);
  }
  trace.final_status = state.status;
  trace.final_tick = state.tick;
  trace.score = state.score;
  return trace;
}

PlayTrace replay_actions(const Board& board, const std::vector<Action>& actions,
                         int max_ticks, std::uint64_t seed) {
  GameState state = init_state(board, seed);
  PlayTrace trace;
  for (Action a : actions) {
    if (state.status != Status::Running || state.tick >= max_ticks) break;
    trace.actions.push_back(a);
    step(board, state, a, trace.events);
  }
  trace.final_status = state.status;
  trace.final_tick = state.tick;
  trace.score = state.score;
  return trace;
}

int count_sprites(const Board& board, const GameState& state, int def) {
  int n = board.static_def_counts[def];
  for (const auto& s : state.sprites)
    if (s.alive && s.def == def) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// names and trace formatting
// ---------------------------------------------------------------------------

const char* action_name(Action a) {
  switch (a) {
    case Action::Nil: return "nil";
    case Action::Up: return "up";
    case Action::Down: return "down";
    case Action::Left: return "left";
    case Action::Right: return "right";
    case Action::Use: return "use";
  }
  return "?";
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Running: return "running";
    case Status::Win: return "win";
    case Status::Loss: return "loss";
  }
  return "?";
}

Action action_from_name(std::string_view name) {
  for (int i = 0; i < kActionCount; ++i)
    if (name == action_name(Action(i))) return Action(i);
  throw std::invalid_argument("unknown action '" + std::string(name) + "'");
}

std::string format_trace(const Board& board, const PlayTrace& trace) {
  const auto& desc = *board.game->desc;
  std::string out;
  for (const auto& ev : trace.events) {
    out += "tick=" + std::to_string(ev.tick);
    switch (ev.kind) {
      case EventKind::Collision:
        out += " kind=collision rule=" + std::to_string(ev.rule);
        out += " actor=" + desc.sprites[static_cast<size_t>(ev.actor_def)].id;
        out += " collider=";
        out += ev.eos ? "EOS" : desc.sprites[static_cast<size_t>(ev.collider_def)].id;
        break;
      case EventKind::InputUse:
        out += " kind=use with_resource=";
        out += ev.with_resource ? '1' : '0';
        break;
      case EventKind::Termination:
        out += " kind=termination rule=" + std::to_string(ev.rule);
        out += " outcome=";
        out += status_name(ev.outcome);
        break;
    }
    out += '\n';
  }
  return out;
}

}  // namespace lumen::sim
