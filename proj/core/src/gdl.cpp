#include "lumen/gdl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace lumen::gdl {

namespace {

struct NamedValue {
  const char* name;
  int value;
};

constexpr NamedValue kBehaviors[] = {
    {"immovable", int(Behavior::Immovable)},
    {"avatar-mover", int(Behavior::AvatarMover)},
    {"avatar-shooter", int(Behavior::AvatarShooter)},
    {"random-npc", int(Behavior::RandomNpc)},
    {"chaser", int(Behavior::Chaser)},
    {"fleeing", int(Behavior::Fleeing)},
    {"missile", int(Behavior::Missile)},
    {"spawner", int(Behavior::Spawner)},
    {"flicker", int(Behavior::Flicker)},
    {"resource", int(Behavior::Resource)},
    {"portal-goal", int(Behavior::PortalGoal)},
};

constexpr NamedValue kEffects[] = {
    {"killSprite", int(Effect::KillSprite)},
    {"killBoth", int(Effect::KillBoth)},
    {"stepBack", int(Effect::StepBack)},
    {"collectResource", int(Effect::CollectResource)},
    {"transformTo", int(Effect::TransformTo)},
    {"spawn", int(Effect::Spawn)},
    {"killIfOtherHasMore", int(Effect::KillIfOtherHasMore)},
    {"changeResource", int(Effect::ChangeResource)},
    {"undoAll", int(Effect::UndoAll)},
};

constexpr NamedValue kDirs[] = {
    {"none", int(Dir::None)}, {"up", int(Dir::Up)},       {"down", int(Dir::Down)},
    {"left", int(Dir::Left)}, {"right", int(Dir::Right)},
};

constexpr NamedValue kCmps[] = {
    {"<", int(Cmp::Lt)}, {"<=", int(Cmp::Le)}, {">", int(Cmp::Gt)},
    {">=", int(Cmp::Ge)}, {"==", int(Cmp::Eq)},
};

template <size_t N>
int lookup(const NamedValue (&table)[N], std::string_view name) {
  for (const auto& nv : table)
    if (name == nv.name) return nv.value;
  return -1;
}

template <size_t N>
const char* reverse_lookup(const NamedValue (&table)[N], int value) {
  for (const auto& nv : table)
    if (value == nv.value) return nv.name;
  return "?";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string_view::npos) comma = s.size();
    out.emplace_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

long long parse_int(std::string_view v, int line, const std::string& key) {
  long long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw ParseError(line, "expected integer for '" + key + "', got '" + std::string(v) + "'");
  return out;
}

double parse_double(std::string_view v, int line, const std::string& key) {
  try {
    size_t used = 0;
    double out = std::stod(std::string(v), &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw ParseError(line, "expected number for '" + key + "', got '" + std::string(v) + "'");
  }
}

// key=value pairs after the fixed head tokens
struct Params {
  std::vector<std::pair<std::string, std::string>> kv;
  int line;

  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : kv)
      if (k == key) return &v;
    return nullptr;
  }
  int get_int(std::string_view key, int fallback) const {
    const std::string* v = find(key);
    return v ? static_cast<int>(parse_int(*v, line, std::string(key))) : fallback;
  }
  double get_double(std::string_view key, double fallback) const {
    const std::string* v = find(key);
    return v ? parse_double(*v, line, std::string(key)) : fallback;
  }
  std::string get_str(std::string_view key, std::string fallback = {}) const {
    const std::string* v = find(key);
    return v ? *v : std::move(fallback);
  }
};

Params collect_params(const std::vector<std::string>& tokens, size_t from, int line,
                      const std::set<std::string>& allowed) {
  Params p{{}, line};
  for (size_t i = from; i < tokens.size(); ++i) {
    size_t eq = tokens[i].find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected key=value, got '" + tokens[i] + "'");
    std::string key = tokens[i].substr(0, eq);
    if (!allowed.count(key)) throw ParseError(line, "unknown parameter '" + key + "'");
    if (p.find(key)) throw ParseError(line, "duplicate parameter '" + key + "'");
    p.kv.emplace_back(std::move(key), tokens[i].substr(eq + 1));
  }
  return p;
}

Condition parse_condition(std::string_view v, int line) {
  static constexpr std::string_view ops[] = {"<=", ">=", "==", "<", ">"};
  for (auto op : ops) {
    size_t pos = v.find(op);
    if (pos == std::string_view::npos) continue;
    Condition c;
    c.resource = std::string(trim(v.substr(0, pos)));
    c.op = Cmp(lookup(kCmps, op));
    c.count = static_cast<int>(parse_int(trim(v.substr(pos + op.size())), line, "if"));
    if (!valid_identifier(c.resource))
      throw ParseError(line, "bad resource name in condition '" + std::string(v) + "'");
    return c;
  }
  throw ParseError(line, "condition needs a comparator: '" + std::string(v) + "'");
}

enum class Section { None, Sprites, Interactions, Terminations, Mapping };

}  // namespace

bool cmp_eval(Cmp op, long long lhs, long long rhs) {
  switch (op) {
    case Cmp::Lt: return lhs < rhs;
    case Cmp::Le: return lhs <= rhs;
    case Cmp::Gt: return lhs > rhs;
    case Cmp::Ge: return lhs >= rhs;
    case Cmp::Eq: return lhs == rhs;
  }
  return false;
}

std::string ParseError::format(int line, const std::string& msg) {
  return "line " + std::to_string(line) + ": " + msg;
}

int GameDescription::sprite_index(std::string_view id) const {
  for (size_t i = 0; i < sprites.size(); ++i)
    if (sprites[i].id == id) return static_cast<int>(i);
  return -1;
}

const SpriteDef* GameDescription::sprite(std::string_view id) const {
  int i = sprite_index(id);
  return i < 0 ? nullptr : &sprites[i];
}

int GameDescription::avatar_index() const {
  for (size_t i = 0; i < sprites.size(); ++i)
    if (is_avatar(sprites[i].behavior)) return static_cast<int>(i);
  return -1;
}

std::optional<std::string> GameDescription::conditioned_resource() const {
  for (const auto& rule : interactions)
    if (rule.condition) return rule.condition->resource;
  return std::nullopt;
}

const std::vector<std::string>* GameDescription::stack_for(char c) const {
  for (const auto& [ch, stack] : level_mapping)
    if (ch == c) return &stack;
  return nullptr;
}

GameDescription parse_game(std::string_view text) {
  GameDescription desc;
  Section section = Section::None;
  std::set<Section> seen;
  bool grid_set = false;

  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++lineno;

    size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) {
      if (pos > text.size()) break;
      continue;
    }

    if (line.back() == ':') {
      std::string_view name = line.substr(0, line.size() - 1);
      Section next = Section::None;
      if (name == "SpriteSet") next = Section::Sprites;
      else if (name == "InteractionSet") next = Section::Interactions;
      else if (name == "TerminationSet") next = Section::Terminations;
      else if (name == "LevelMapping") next = Section::Mapping;
      else throw ParseError(lineno, "unknown section '" + std::string(name) + "'");
      if (seen.count(next))
        throw ParseError(lineno, "duplicate section '" + std::string(name) + "'");
      seen.insert(next);
      section = next;
      continue;
    }

    if (section == Section::None) {
      size_t eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ParseError(lineno, "expected key=value before the first section");
      std::string_view key = trim(line.substr(0, eq));
      std::string_view value = trim(line.substr(eq + 1));
      if (key == "name") {
        desc.name = std::string(value);
        if (!valid_identifier(desc.name)) throw ParseError(lineno, "bad game name");
      } else if (key == "grid") {
        size_t x = value.find('x');
        if (x == std::string_view::npos) throw ParseError(lineno, "grid must be WxH");
        desc.width = static_cast<int>(parse_int(value.substr(0, x), lineno, "grid"));
        desc.height = static_cast<int>(parse_int(value.substr(x + 1), lineno, "grid"));
        if (desc.width < 2 || desc.height < 2) throw ParseError(lineno, "grid too small");
        grid_set = true;
      } else {
        throw ParseError(lineno, "unknown header key '" + std::string(key) + "'");
      }
      continue;
    }

    auto tokens = tokenize(line);

    switch (section) {
      case Section::Sprites: {
        if (tokens.size() < 3 || tokens[1] != ">")
          throw ParseError(lineno, "sprite declaration must be 'id > behavior ...'");
        SpriteDef def;
        def.id = tokens[0];
        def.line = lineno;
        if (!valid_identifier(def.id) || def.id == "EOS")
          throw ParseError(lineno, "bad sprite id '" + def.id + "'");
        int b = lookup(kBehaviors, tokens[2]);
        if (b < 0) throw ParseError(lineno, "unknown behavior '" + tokens[2] + "'");
        def.behavior = Behavior(b);
        Params p = collect_params(
            tokens, 3, lineno,
            {"cooldown", "dir", "lifetime", "child", "period", "prob", "cap", "shoot",
             "range", "limit"});
        def.cooldown = p.get_int("cooldown", 1);
        def.lifetime = p.get_int("lifetime", 0);
        def.child = p.get_str("child");
        def.period = p.get_int("period", 0);
        def.prob = p.get_double("prob", 0.0);
        def.cap = p.get_int("cap", -1);
        def.shoot = p.get_str("shoot");
        def.range = p.get_int("range", 1);
        def.limit = p.get_int("limit", 0);
        if (const std::string* d = p.find("dir")) {
          int dv = lookup(kDirs, *d);
          if (dv < 0) throw ParseError(lineno, "unknown dir '" + *d + "'");
          def.dir = Dir(dv);
        }
        if (def.cooldown < 1) throw ParseError(lineno, "cooldown must be >= 1");
        if (def.lifetime < 0 || def.period < 0 || def.limit < 0 || def.range < 0 ||
            def.prob < 0.0 || def.prob > 1.0)
          throw ParseError(lineno, "negative or out-of-range sprite parameter");
        if (def.behavior == Behavior::Missile && def.dir == Dir::None)
          throw ParseError(lineno, "missile needs dir=");
        if (def.behavior == Behavior::Spawner) {
          if (def.child.empty()) throw ParseError(lineno, "spawner needs child=");
          if (def.period <= 0 && def.prob <= 0.0)
            throw ParseError(lineno, "spawner needs period= or prob=");
        }
        if (def.behavior == Behavior::Flicker && def.lifetime < 1)
          throw ParseError(lineno, "flicker needs lifetime>=1");
        if (def.behavior == Behavior::AvatarShooter && def.shoot.empty())
          throw ParseError(lineno, "avatar-shooter needs shoot=");
        if (desc.sprite_index(def.id) >= 0)
          throw ParseError(lineno, "duplicate sprite id '" + def.id + "'");
        desc.sprites.push_back(std::move(def));
        break;
      }

      case Section::Interactions: {
        if (tokens.size() < 4 || tokens[2] != ">")
          throw ParseError(lineno, "interaction must be 'actors colliders > effect ...'");
        InteractionRule rule;
        rule.line = lineno;
        rule.actors = split_commas(tokens[0]);
        if (tokens[1] == "EOS") {
          rule.eos = true;
        } else {
          rule.colliders = split_commas(tokens[1]);
        }
        int e = lookup(kEffects, tokens[3]);
        if (e < 0) throw ParseError(lineno, "unknown effect '" + tokens[3] + "'");
        rule.effect = Effect(e);
        Params p = collect_params(
            tokens, 4, lineno,
            {"score", "label", "if", "target", "child", "resource", "count", "delta"});
        rule.score_delta = p.get_int("score", 0);
        rule.label = p.get_str("label");
        rule.target = p.get_str("target");
        rule.child = p.get_str("child");
        rule.resource = p.get_str("resource");
        rule.count = p.get_int("count", 0);
        rule.delta = p.get_int("delta", 0);
        if (const std::string* cond = p.find("if"))
          rule.condition = parse_condition(*cond, lineno);
        if (rule.effect == Effect::TransformTo && rule.target.empty())
          throw ParseError(lineno, "transformTo needs target=");
        if (rule.effect == Effect::Spawn && rule.child.empty())
          throw ParseError(lineno, "spawn needs child=");
        if (rule.effect == Effect::CollectResource && rule.resource.empty()) {
          if (rule.actors.size() != 1)
            throw ParseError(lineno, "collectResource needs resource= for class-set actors");
          rule.resource = rule.actors[0];
        }
        if ((rule.effect == Effect::ChangeResource ||
             rule.effect == Effect::KillIfOtherHasMore) &&
            rule.resource.empty())
          throw ParseError(lineno, effect_name(rule.effect) + std::string(" needs resource="));
        desc.interactions.push_back(std::move(rule));
        break;
      }

      case Section::Terminations: {
        TerminationRule rule;
        rule.line = lineno;
        const std::string& kind = tokens[0];
        const std::string& outcome = tokens.back();
        if (outcome == "win") rule.win = true;
        else if (outcome == "lose") rule.win = false;
        else throw ParseError(lineno, "termination must end in 'win' or 'lose'");
        Params p = collect_params(
            {tokens.begin() + 1, tokens.end() - 1}, 0, lineno,
            {"sprite", "sprites", "count", "comparator", "ticks"});
        if (kind == "sprite-counter") {
          rule.kind = TermKind::SpriteCounter;
          std::string s = p.get_str("sprite");
          if (s.empty()) throw ParseError(lineno, "sprite-counter needs sprite=");
          rule.sprites = {s};
          rule.limit = p.get_int("count", 0);
          std::string cmp = p.get_str("comparator", "==");
          int cv = lookup(kCmps, cmp);
          if (cv < 0) throw ParseError(lineno, "unknown comparator '" + cmp + "'");
          rule.op = Cmp(cv);
        } else if (kind == "multi-sprite-counter") {
          rule.kind = TermKind::MultiSpriteCounter;
          std::string s = p.get_str("sprites");
          if (s.empty()) throw ParseError(lineno, "multi-sprite-counter needs sprites=");
          rule.sprites = split_commas(s);
          rule.limit = p.get_int("count", 0);
        } else if (kind == "timeout") {
          rule.kind = TermKind::Timeout;
          rule.ticks = p.get_int("ticks", 0);
          if (rule.ticks < 1) throw ParseError(lineno, "timeout needs ticks>=1");
        } else {
          throw ParseError(lineno, "unknown termination kind '" + kind + "'");
        }
        desc.terminations.push_back(std::move(rule));
        break;
      }

      case Section::Mapping: {
        if (tokens[0].size() != 1 ||
            !std::isgraph(static_cast<unsigned char>(tokens[0][0])))
          throw ParseError(lineno, "mapping key must be a single printable character");
        if (tokens.size() < 2 || tokens[1] != ">")
          throw ParseError(lineno, "mapping must be 'char > [sprites...]'");
        char c = tokens[0][0];
        if (desc.stack_for(c))
          throw ParseError(lineno, std::string("duplicate mapping character '") + c + "'");
        std::vector<std::string> stack(tokens.begin() + 2, tokens.end());
        desc.level_mapping.emplace_back(c, std::move(stack));
        desc.tile_alphabet.push_back(c);
        break;
      }

      case Section::None:
        break;
    }
  }

  // ---- cross-reference validation ----
  for (Section s : {Section::Sprites, Section::Interactions, Section::Terminations,
                    Section::Mapping})
    if (!seen.count(s))
      throw ParseError(lineno, "missing section (SpriteSet, InteractionSet, "
                               "TerminationSet and LevelMapping are all required)");
  if (desc.name.empty()) throw ParseError(1, "missing 'name=' header");
  if (desc.sprites.size() > 64) throw ParseError(1, "too many sprites (max 64)");
  if (!grid_set) { desc.width = 12; desc.height = 10; }

  auto require_sprite = [&](const std::string& id, int line) {
    if (desc.sprite_index(id) < 0)
      throw ParseError(line, "undeclared sprite '" + id + "'");
  };

  int avatars = 0;
  for (const auto& def : desc.sprites) {
    if (is_avatar(def.behavior)) ++avatars;
    if (!def.child.empty()) require_sprite(def.child, def.line);
    if (!def.shoot.empty()) require_sprite(def.shoot, def.line);
  }
  if (avatars == 0) throw ParseError(lineno, "no avatar sprite declared");
  if (avatars > 1) throw ParseError(lineno, "more than one avatar sprite declared");

  for (const auto& rule : desc.interactions) {
    for (const auto& id : rule.actors) require_sprite(id, rule.line);
    for (const auto& id : rule.colliders) require_sprite(id, rule.line);
    if (!rule.target.empty()) require_sprite(rule.target, rule.line);
    if (!rule.child.empty()) require_sprite(rule.child, rule.line);
    if (!rule.resource.empty()) require_sprite(rule.resource, rule.line);
    if (rule.condition) require_sprite(rule.condition->resource, rule.line);
  }
  for (const auto& rule : desc.terminations)
    for (const auto& id : rule.sprites) require_sprite(id, rule.line);

  int floor_chars = 0, avatar_chars = 0;
  for (const auto& [c, stack] : desc.level_mapping) {
    for (const auto& id : stack) require_sprite(id, 0);
    if (stack.empty()) {
      desc.floor_char = c;
      ++floor_chars;
    }
    bool has_avatar = std::any_of(stack.begin(), stack.end(), [&](const std::string& id) {
      return is_avatar(desc.sprites[desc.sprite_index(id)].behavior);
    });
    if (has_avatar) {
      desc.avatar_char = c;
      ++avatar_chars;
    }
  }
  if (floor_chars != 1)
    throw ParseError(lineno, "level mapping needs exactly one floor character "
                             "(a char mapped to no sprites)");
  if (avatar_chars != 1)
    throw ParseError(lineno, "level mapping needs exactly one avatar character");

  return desc;
}

std::string serialize_game(const GameDescription& desc) {
  std::ostringstream out;
  out << "name=" << desc.name << "\n";
  out << "grid=" << desc.width << "x" << desc.height << "\n";

  out << "\nSpriteSet:\n";
  for (const auto& def : desc.sprites) {
    out << def.id << " > " << behavior_name(def.behavior);
    if (def.cooldown != 1) out << " cooldown=" << def.cooldown;
    if (def.dir != Dir::None) out << " dir=" << dir_name(def.dir);
    if (def.lifetime != 0) out << " lifetime=" << def.lifetime;
    if (!def.child.empty()) out << " child=" << def.child;
    if (def.period != 0) out << " period=" << def.period;
    if (def.prob != 0.0) out << " prob=" << def.prob;
    if (def.cap != -1) out << " cap=" << def.cap;
    if (!def.shoot.empty()) out << " shoot=" << def.shoot << " range=" << def.range;
    if (def.limit != 0) out << " limit=" << def.limit;
    out << "\n";
  }

  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += v[i];
    }
    return s;
  };

  out << "\nInteractionSet:\n";
  for (const auto& rule : desc.interactions) {
    out << join(rule.actors) << " " << (rule.eos ? "EOS" : join(rule.colliders)) << " > "
        << effect_name(rule.effect);
    if (!rule.target.empty()) out << " target=" << rule.target;
    if (!rule.child.empty()) out << " child=" << rule.child;
    if (!rule.resource.empty()) out << " resource=" << rule.resource;
    if (rule.count != 0) out << " count=" << rule.count;
    if (rule.delta != 0) out << " delta=" << rule.delta;
    if (rule.condition)
      out << " if=" << rule.condition->resource << cmp_name(rule.condition->op)
          << rule.condition->count;
    if (rule.score_delta != 0) out << " score=" << rule.score_delta;
    if (!rule.label.empty()) out << " label=" << rule.label;
    out << "\n";
  }

  out << "\nTerminationSet:\n";
  for (const auto& rule : desc.terminations) {
    switch (rule.kind) {
      case TermKind::SpriteCounter:
        out << "sprite-counter sprite=" << rule.sprites[0] << " count=" << rule.limit;
        if (rule.op != Cmp::Eq) out << " comparator=" << cmp_name(rule.op);
        break;
      case TermKind::MultiSpriteCounter:
        out << "multi-sprite-counter sprites=" << join(rule.sprites)
            << " count=" << rule.limit;
        break;
      case TermKind::Timeout:
        out << "timeout ticks=" << rule.ticks;
        break;
    }
    out << (rule.win ? " win" : " lose") << "\n";
  }

  out << "\nLevelMapping:\n";
  for (const auto& [c, stack] : desc.level_mapping) {
    out << c << " >";
    for (const auto& id : stack) out << " " << id;
    out << "\n";
  }
  return out.str();
}

Level parse_level(std::string_view text, const GameDescription& desc) {
  Level level;
  std::vector<std::string_view> rows;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view row = text.substr(pos, eol - pos);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    pos = eol + 1;
    if (row.empty() && pos >= text.size()) break;  // trailing newline
    rows.push_back(row);
  }
  if (rows.empty()) throw ParseError(1, "empty level");

  level.height = static_cast<int>(rows.size());
  level.width = static_cast<int>(rows[0].size());
  for (size_t y = 0; y < rows.size(); ++y)
    if (static_cast<int>(rows[y].size()) != level.width)
      throw ParseError(static_cast<int>(y + 1),
                       "non-rectangular level: row has " +
                           std::to_string(rows[y].size()) + " chars, expected " +
                           std::to_string(level.width));

  if (level.width != desc.width || level.height != desc.height)
    throw ParseError(1, "level is " + std::to_string(level.width) + "x" +
                            std::to_string(level.height) + " but game '" + desc.name +
                            "' expects " + std::to_string(desc.width) + "x" +
                            std::to_string(desc.height));

  level.grid.reserve(static_cast<size_t>(level.width) * level.height);
  for (size_t y = 0; y < rows.size(); ++y) {
    for (size_t x = 0; x < rows[y].size(); ++x) {
      char c = rows[y][x];
      if (!desc.stack_for(c))
        throw ParseError(static_cast<int>(y + 1),
                         std::string("unknown character '") + c + "' at row " +
                             std::to_string(y + 1) + ", col " + std::to_string(x + 1));
      level.grid.push_back(c);
    }
  }

  int avatars = count_avatars(level, desc);
  if (avatars != 1)
    throw ParseError(1, "level must contain exactly one avatar tile, found " +
                            std::to_string(avatars));
  return level;
}

std::string serialize_level(const Level& level) {
  std::string out;
  out.reserve(level.grid.size() + level.height);
  for (int y = 0; y < level.height; ++y) {
    out.append(level.grid, static_cast<size_t>(y) * level.width,
               static_cast<size_t>(level.width));
    out.push_back('\n');
  }
  return out;
}

int count_avatars(const Level& level, const GameDescription& desc) {
  int n = 0;
  for (char c : level.grid)
    if (c == desc.avatar_char) ++n;
  return n;
}

const char* behavior_name(Behavior b) { return reverse_lookup(kBehaviors, int(b)); }
const char* effect_name(Effect e) { return reverse_lookup(kEffects, int(e)); }
const char* dir_name(Dir d) { return reverse_lookup(kDirs, int(d)); }
const char* cmp_name(Cmp op) { return reverse_lookup(kCmps, int(op)); }

}  // namespace lumen::gdl
