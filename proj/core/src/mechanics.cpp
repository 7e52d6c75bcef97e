#include "lumen/mechanics.hpp"

#include <stdexcept>

namespace lumen::mech {

namespace {

std::string join(const std::vector<std::string>& v, char sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += v[i];
  }
  return s;
}

// rules that differ only by score (or label) trigger the same mechanic
bool same_mechanic(const gdl::InteractionRule& a, const gdl::InteractionRule& b) {
  gdl::InteractionRule x = a, y = b;
  x.score_delta = y.score_delta = 0;
  x.label.clear();
  y.label.clear();
  x.line = y.line = 0;
  return x == y;
}

std::string auto_label(const gdl::InteractionRule& rule) {
  std::string collider = rule.eos ? "EOS" : join(rule.colliders, '+');
  return join(rule.actors, '+') + "-" + gdl::effect_name(rule.effect) + "-" + collider;
}

std::string rule_description(const gdl::InteractionRule& rule) {
  std::string d = join(rule.actors, ',') + " hits " +
                  (rule.eos ? std::string("the screen edge") : join(rule.colliders, ','));
  d += ": ";
  d += gdl::effect_name(rule.effect);
  if (rule.condition)
    d += std::string(" when avatar ") + rule.condition->resource +
         gdl::cmp_name(rule.condition->op) + std::to_string(rule.condition->count);
  return d;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

int MechanicCatalog::index_of(std::string_view label) const {
  for (const auto& m : defs)
    if (m.label == label) return m.index;
  return -1;
}

std::string MechanicVector::to_string() const {
  std::string s(static_cast<size_t>(n), '0');
  for (int i = 0; i < n; ++i)
    if (get(i)) s[static_cast<size_t>(i)] = '1';
  return s;
}

MechanicVector MechanicVector::from_string(std::string_view s) {
  MechanicVector v;
  v.n = static_cast<int>(s.size());
  for (int i = 0; i < v.n; ++i)
    if (s[static_cast<size_t>(i)] == '1') v.set(i);
  return v;
}

MechanicCatalog extract_mechanics(const gdl::GameDescription& desc) {
  MechanicCatalog catalog;
  catalog.game = desc.name;
  catalog.rule_count = static_cast<int>(desc.interactions.size());

  const auto& avatar = desc.sprites[static_cast<size_t>(desc.avatar_index())];
  if (avatar.behavior == gdl::Behavior::AvatarShooter) {
    if (auto res = desc.conditioned_resource()) {
      MechanicDef without;
      without.trigger = Trigger::UseWithout;
      without.label = "space-no" + *res;
      without.description = "avatar pressed use without a " + *res;
      catalog.defs.push_back(std::move(without));
      MechanicDef with;
      with.trigger = Trigger::UseWith;
      with.label = "space-with" + *res;
      with.description = "avatar pressed use holding a " + *res;
      catalog.defs.push_back(std::move(with));
    } else {
      MechanicDef any;
      any.trigger = Trigger::UseAny;
      any.label = "space";
      any.description = "avatar pressed use";
      catalog.defs.push_back(std::move(any));
    }
  }

  for (size_t r = 0; r < desc.interactions.size(); ++r) {
    const auto& rule = desc.interactions[r];
    bool merged = false;
    for (auto& m : catalog.defs) {
      if (m.trigger != Trigger::Rule) continue;
      if (same_mechanic(desc.interactions[static_cast<size_t>(m.rule_indices[0])], rule)) {
        m.rule_indices.push_back(static_cast<int>(r));
        merged = true;
        break;
      }
    }
    if (merged) continue;
    MechanicDef m;
    m.trigger = Trigger::Rule;
    m.rule_indices = {static_cast<int>(r)};
    m.label = rule.label.empty() ? auto_label(rule) : rule.label;
    m.description = rule_description(rule);
    catalog.defs.push_back(std::move(m));
  }

  for (size_t i = 0; i < catalog.defs.size(); ++i)
    catalog.defs[i].index = static_cast<int>(i);
  if (catalog.defs.size() > 64)
    throw std::logic_error("mechanic catalogs beyond 64 dimensions are unsupported");
  return catalog;
}

MechanicVector vector_from_trace(const sim::PlayTrace& trace,
                                 const MechanicCatalog& catalog) {
  MechanicVector v;
  v.n = catalog.size();
  for (const auto& ev : trace.events) {
    switch (ev.kind) {
      case sim::EventKind::Collision: {
        if (ev.rule < 0 || ev.rule >= catalog.rule_count)
          throw std::logic_error("trace rule index " + std::to_string(ev.rule) +
                                 " outside the game's interaction set");
        for (const auto& m : catalog.defs) {
          if (m.trigger != Trigger::Rule) continue;
          for (int r : m.rule_indices)
            if (r == ev.rule) v.set(m.index);
        }
        break;
      }
      case sim::EventKind::InputUse: {
        for (const auto& m : catalog.defs) {
          if (m.trigger == Trigger::UseAny ||
              (m.trigger == Trigger::UseWith && ev.with_resource) ||
              (m.trigger == Trigger::UseWithout && !ev.with_resource))
            v.set(m.index);
        }
        break;
      }
      case sim::EventKind::Termination:
        break;
    }
  }
  return v;
}

std::vector<std::string> labels_of(const MechanicVector& v,
                                   const MechanicCatalog& catalog) {
  std::vector<std::string> out;
  for (const auto& m : catalog.defs)
    if (v.get(m.index)) out.push_back(m.label);
  return out;
}

std::string catalog_csv(const MechanicCatalog& catalog) {
  std::string out = "index,label,description\n";
  for (const auto& m : catalog.defs) {
    out += std::to_string(m.index);
    out += ',';
    out += csv_quote(m.label);
    out += ',';
    out += csv_quote(m.description);
    out += '\n';
  }
  return out;
}

}  // namespace lumen::mech
