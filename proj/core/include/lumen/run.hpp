#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lumen/qd.hpp"

// Run configuration, evolution driver, archive persistence and metrics
// export; the CLI in tools/ is a thin wrapper over these.

namespace lumen::run {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kValidation = 2,
  kRuntime = 3,
};

struct LoadedConfig {
  qd::RunConfig qd;
  std::string game_path;  // resolved relative to the config file
};

// flat key=value file, '#' comments; unknown keys are errors
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config(std::string_view text, const std::string& base_dir);

gdl::GameDescription load_game(const std::string& path);
gdl::Level load_level(const std::string& path, const gdl::GameDescription& desc);
std::vector<sim::Action> load_actions(const std::string& path);

std::string read_file(const std::string& path);  // throws std::runtime_error
void write_file(const std::string& path, const std::string& content);

// --- archive persistence ----------------------------------------------------
// Layout: <dir>/catalog.csv plus one sub-directory per populated cell named by
// its bit pattern, holding meta.json and (for cells with an elite) elite.lvl.

void save_archive(const std::string& dir, const qd::Archive& archive);

struct StoredElite {
  mech::MechanicVector key;
  gdl::Level level;
  std::uint64_t seed = 0;
  double fitness = 0.0;
  double time_score = 0.0;
  double idle_score = 0.0;
  double constraint = 0.0;
  int win = 0;
};

std::vector<StoredElite> load_elites(const std::string& dir,
                                     const gdl::GameDescription& desc);

// --- metrics ------------------------------------------------------------------

std::string metrics_csv(const std::vector<qd::GenerationStats>& rows, int n_mechanics);
std::string frequency_csv(const qd::Archive& archive);

std::string format_double(double v);  // stable %.12g formatting for CSV/report

// --- commands -----------------------------------------------------------------

int cmd_evolve(const std::string& config_path, const std::string& out_dir, int threads,
               std::ostream& out, std::ostream& err);

struct EvalOptions {
  std::string config_path;   // optional RunConfig override
  std::string trace_out;     // optional event-log output path
  std::string actions_out;   // optional action-script output path
};

int cmd_eval(const std::string& game_path, const std::string& level_path,
             std::uint64_t seed, const EvalOptions& opts, std::ostream& out,
             std::ostream& err);

int cmd_replay(const std::string& game_path, const std::string& level_path,
               const std::string& actions_path, std::uint64_t seed, std::ostream& out,
               std::ostream& err);

}  // namespace lumen::run
