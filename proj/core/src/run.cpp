#include "lumen/run.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace lumen::run {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long to_int(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    long long out = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad integer for '" + key + "': " + v);
  }
}

double to_double(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    double out = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing");
    return out;
  } catch (const std::exception&) {
    throw std::runtime_error("config: bad number for '" + key + "': " + v);
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

// ---------------------------------------------------------------------------
// config
// ---------------------------------------------------------------------------

LoadedConfig parse_config(std::string_view text, const std::string& base_dir) {
  LoadedConfig cfg;
  int lineno = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    bool last = eol == text.size();
    pos = eol + 1;
    ++lineno;

    size_t hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) {
      if (last) break;
      continue;
    }
    size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected key=value");
    std::string key(trim(line.substr(0, eq)));
    std::string value(trim(line.substr(eq + 1)));
    auto& q = cfg.qd;

    if (key == "game") {
      cfg.game_path = base_dir.empty() ? value : (fs::path(base_dir) / value).string();
    } else if (key == "iterations") {
      q.iterations = static_cast<int>(to_int(value, key));
    } else if (key == "batch_size") {
      q.batch_size = static_cast<int>(to_int(value, key));
    } else if (key == "random_fraction") {
      q.random_fraction = to_double(value, key);
    } else if (key == "elite_parent_prob") {
      q.elite_parent_prob = to_double(value, key);
    } else if (key == "threshold") {
      q.threshold = to_double(value, key);
    } else if (key == "t_ideal") {
      q.t_ideal = static_cast<int>(to_int(value, key));
    } else if (key == "idle_runs") {
      q.idle_runs = static_cast<int>(to_int(value, key));
    } else if (key == "idle_pass_needed") {
      q.idle_pass_needed = static_cast<int>(to_int(value, key));
    } else if (key == "w") {
      q.w = to_double(value, key);
    } else if (key == "mutation_continue_prob") {
      q.mutation_continue_prob = to_double(value, key);
    } else if (key == "max_ticks") {
      q.max_ticks = static_cast<int>(to_int(value, key));
    } else if (key == "seed") {
      q.seed = static_cast<std::uint64_t>(to_int(value, key));
    } else if (key == "infeasible_cap") {
      q.infeasible_cap = static_cast<int>(to_int(value, key));
    } else if (key == "floor_weight") {
      q.floor_weight = to_double(value, key);
    } else if (key == "border") {
      if (value.size() != 1)
        throw std::runtime_error("config: border must be a single character");
      q.border_char = value[0];
    } else if (key == "agent") {
      q.agent.kind = agent::kind_from_name(value);
    } else if (key == "node_budget") {
      q.agent.node_budget = static_cast<int>(to_int(value, key));
    } else if (key == "horizon") {
      q.agent.horizon = static_cast<int>(to_int(value, key));
    } else if (key == "win_bonus") {
      q.agent.win_bonus = to_double(value, key);
    } else if (key == "loss_penalty") {
      q.agent.loss_penalty = to_double(value, key);
    } else if (key == "depth_tax") {
      q.agent.depth_tax = to_double(value, key);
    } else {
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": unknown key '" + key + "'");
    }
  }
  cfg.qd.validate();
  return cfg;
}

LoadedConfig load_config(const std::string& path) {
  return parse_config(read_file(path), fs::path(path).parent_path().string());
}

gdl::GameDescription load_game(const std::string& path) {
  return gdl::parse_game(read_file(path));
}

gdl::Level load_level(const std::string& path, const gdl::GameDescription& desc) {
  return gdl::parse_level(read_file(path), desc);
}

std::vector<sim::Action> load_actions(const std::string& path) {
  std::vector<sim::Action> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    std::string_view t = trim(line);
    if (t.empty()) continue;
    out.push_back(sim::action_from_name(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// archive persistence
// ---------------------------------------------------------------------------

void save_archive(const std::string& dir, const qd::Archive& archive) {
  fs::create_directories(dir);
  write_file((fs::path(dir) / "catalog.csv").string(), mech::catalog_csv(archive.catalog));

  std::vector<std::pair<std::string, const qd::Cell*>> ordered;
  ordered.reserve(archive.cells.size());
  for (const auto& [bits, cell] : archive.cells)
    ordered.emplace_back(cell.key.to_string(), &cell);
  std::sort(ordered.begin(), ordered.end());

  for (const auto& [name, cell] : ordered) {
    fs::path cell_dir = fs::path(dir) / name;
    fs::create_directories(cell_dir);

    ordered_json meta;
    meta["vector"] = name;
    meta["labels"] = mech::labels_of(cell->key, archive.catalog);
    if (cell->elite) {
      const auto& e = *cell->elite->eval;
      ordered_json elite;
      elite["fitness"] = e.fitness;
      elite["P"] = e.time_score;
      elite["E"] = e.idle_score;
      elite["C"] = e.constraint;
      elite["win"] = e.win;
      elite["t_win"] = e.win_tick;
      elite["t_survival"] = e.survival_tick;
      elite["idle_passes"] = e.idle_passes;
      elite["idle_runs"] = e.idle_runs;
      elite["score"] = e.score;
      elite["seed"] = std::to_string(e.seed);  // string: exceeds double precision
      meta["elite"] = std::move(elite);
      write_file((cell_dir / "elite.lvl").string(),
                 gdl::serialize_level(cell->elite->level));
    }
    meta["infeasible_count"] = cell->infeasible.size();
    if (!cell->infeasible.empty())
      meta["best_infeasible_C"] = cell->infeasible.front().eval->constraint;
    write_file((cell_dir / "meta.json").string(), meta.dump(2) + "\n");
  }
}

std::vector<StoredElite> load_elites(const std::string& dir,
                                     const gdl::GameDescription& desc) {
  std::vector<StoredElite> out;
  std::vector<fs::path> cell_dirs;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_directory()) cell_dirs.push_back(entry.path());
  std::sort(cell_dirs.begin(), cell_dirs.end());

  for (const auto& cell_dir : cell_dirs) {
    fs::path meta_path = cell_dir / "meta.json";
    fs::path level_path = cell_dir / "elite.lvl";
    if (!fs::exists(meta_path) || !fs::exists(level_path)) continue;
    ordered_json meta = ordered_json::parse(read_file(meta_path.string()));
    StoredElite elite;
    elite.key = mech::MechanicVector::from_string(meta["vector"].get<std::string>());
    elite.level = gdl::parse_level(read_file(level_path.string()), desc);
    const auto& e = meta["elite"];
    elite.seed = std::stoull(e["seed"].get<std::string>());
    elite.fitness = e["fitness"].get<double>();
    elite.time_score = e["P"].get<double>();
    elite.idle_score = e["E"].get<double>();
    elite.constraint = e["C"].get<double>();
    elite.win = e["win"].get<int>();
    out.push_back(std::move(elite));
  }
  return out;
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

std::string metrics_csv(const std::vector<qd::GenerationStats>& rows, int n_mechanics) {
  std::string out =
      "generation,elite_count,elite_count_normalized,populated_cell_count,"
      "mean_elite_fitness,mean_C,evaluations_done\n";
  const double total_cells = std::ldexp(1.0, n_mechanics);  // 2^n
  for (const auto& r : rows) {
    out += std::to_string(r.generation);
    out += ',';
    out += std::to_string(r.elite_count);
    out += ',';
    out += format_double(r.elite_count / total_cells);
    out += ',';
    out += std::to_string(r.populated_cells);
    out += ',';
    out += format_double(r.mean_elite_fitness);
    out += ',';
    out += format_double(r.mean_constraint);
    out += ',';
    out += std::to_string(r.evaluations_done);
    out += '\n';
  }
  return out;
}

std::string frequency_csv(const qd::Archive& archive) {
  std::string out = "label,fraction\n";
  const int elites = archive.elite_count();
  if (elites == 0) return out;
  for (const auto& m : archive.catalog.defs) {
    int n = 0;
    for (const auto& [bits, cell] : archive.cells)
      if (cell.elite && cell.key.get(m.index)) ++n;
    out += m.label;
    out += ',';
    out += format_double(static_cast<double>(n) / elites);
    out += '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

int cmd_evolve(const std::string& config_path, const std::string& out_dir, int threads,
               std::ostream& out, std::ostream& err) {
  LoadedConfig cfg;
  gdl::GameDescription desc;
  try {
    cfg = load_config(config_path);
    if (cfg.game_path.empty()) throw std::runtime_error("config: missing 'game='");
    desc = load_game(cfg.game_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    std::vector<qd::GenerationStats> rows;
    qd::Archive archive = qd::evolve(
        desc, cfg.qd, threads,
        [&](const qd::GenerationStats& stats, const qd::Archive&) {
          rows.push_back(stats);
        });

    fs::create_directories(out_dir);
    save_archive(out_dir, archive);
    write_file((fs::path(out_dir) / "metrics.csv").string(),
               metrics_csv(rows, archive.catalog.size()));
    write_file((fs::path(out_dir) / "mechanic_frequency.csv").string(),
               frequency_csv(archive));

    out << "game=" << desc.name << " generations=" << archive.generation
        << " cells=" << archive.populated_count()
        << " elites=" << archive.elite_count() << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

namespace {

std::string actions_text(const std::vector<sim::Action>& actions) {
  std::string out;
  for (sim::Action a : actions) {
    out += sim::action_name(a);
    out += '\n';
  }
  return out;
}

}  // namespace

int cmd_eval(const std::string& game_path, const std::string& level_path,
             std::uint64_t seed, const EvalOptions& opts, std::ostream& out,
             std::ostream& err) {
  gdl::GameDescription desc;
  gdl::Level level;
  qd::RunConfig cfg;
  try {
    if (!opts.config_path.empty()) cfg = load_config(opts.config_path).qd;
    desc = load_game(game_path);
    level = load_level(level_path, desc);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    const sim::CompiledGame game(desc);
    const mech::MechanicCatalog catalog = mech::extract_mechanics(desc);
    qd::EvalResult r = qd::evaluate(game, catalog, level, cfg, seed);

    if (!opts.trace_out.empty() || !opts.actions_out.empty()) {
      // re-run the evaluation episode (same derived seed) to export its trace
      const sim::Board board(game, level);
      sim::PlayTrace trace = sim::run_episode(board, agent::make_agent(cfg.agent),
                                              cfg.max_ticks, mix_seed(seed, 0));
      if (!opts.trace_out.empty())
        write_file(opts.trace_out, sim::format_trace(board, trace));
      if (!opts.actions_out.empty())
        write_file(opts.actions_out, actions_text(trace.actions));
    }

    std::vector<std::string> labels = mech::labels_of(r.vector, catalog);
    std::string joined;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (i) joined += ',';
      joined += labels[i];
    }
    out << "P=" << format_double(r.time_score) << "\n";
    out << "E=" << format_double(r.idle_score) << "\n";
    out << "C=" << format_double(r.constraint) << "\n";
    out << "fitness=" << format_double(r.fitness) << "\n";
    out << "vector=" << r.vector.to_string() << "\n";
    out << "mechanics=" << joined << "\n";
    out << "feasible=" << (qd::is_feasible(r, cfg.threshold) ? "true" : "false") << "\n";
    out << "win=" << r.win << "\n";
    out << "t_win=" << r.win_tick << "\n";
    out << "t_survival=" << r.survival_tick << "\n";
    out << "idle_passes=" << r.idle_passes << "\n";
    out << "idle_runs=" << r.idle_runs << "\n";
    out << "score=" << r.score << "\n";
    out << "seed=" << seed << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

int cmd_replay(const std::string& game_path, const std::string& level_path,
               const std::string& actions_path, std::uint64_t seed, std::ostream& out,
               std::ostream& err) {
  gdl::GameDescription desc;
  gdl::Level level;
  std::vector<sim::Action> actions;
  try {
    desc = load_game(game_path);
    level = load_level(level_path, desc);
    actions = load_actions(actions_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  }

  try {
    const sim::CompiledGame game(desc);
    const sim::Board board(game, level);
    sim::PlayTrace trace =
        sim::replay_actions(board, actions, 1 << 20, mix_seed(seed, 0));
    out << sim::format_trace(board, trace);
    out << "final_status=" << sim::status_name(trace.final_status) << "\n";
    out << "final_tick=" << trace.final_tick << "\n";
    out << "score=" << trace.score << "\n";
    return kOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kRuntime;
  }
}

}  // namespace lumen::run
