#include <cstdint>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "lumen/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lumen - quality-diversity level generation for grid games"};
  app.require_subcommand(1);

  // evolve
  std::string config_path, out_dir;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  auto* evolve = app.add_subcommand("evolve", "run the generation loop");
  evolve->add_option("--config", config_path, "run config file")->required();
  evolve->add_option("--out", out_dir, "output directory")->required();
  evolve->add_option("--threads", threads, "evaluation worker threads");

  // eval
  std::string game_path, level_path;
  std::uint64_t seed = 0;
  lumen::run::EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "evaluate a single level");
  eval->add_option("--game", game_path, "game description file")->required();
  eval->add_option("--level", level_path, "level file")->required();
  eval->add_option("--seed", seed, "evaluation seed");
  eval->add_option("--config", eval_opts.config_path, "run config override");
  eval->add_option("--trace-out", eval_opts.trace_out, "write the event log here");
  eval->add_option("--actions-out", eval_opts.actions_out, "write the action script here");

  // replay
  std::string actions_path;
  auto* replay = app.add_subcommand("replay", "replay a recorded action script");
  replay->add_option("--game", game_path, "game description file")->required();
  replay->add_option("--level", level_path, "level file")->required();
  replay->add_option("--actions", actions_path, "action script, one action per line")
      ->required();
  replay->add_option("--seed", seed, "seed used when the script was recorded");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? lumen::run::kOk : lumen::run::kUsage;
  }

  if (evolve->parsed())
    return lumen::run::cmd_evolve(config_path, out_dir, threads, std::cout, std::cerr);
  if (eval->parsed())
    return lumen::run::cmd_eval(game_path, level_path, seed, eval_opts, std::cout,
                                std::cerr);
  if (replay->parsed())
    return lumen::run::cmd_replay(game_path, level_path, actions_path, seed, std::cout,
                                  std::cerr);
  return lumen::run::kUsage;
}
