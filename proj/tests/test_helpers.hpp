#pragma once

#include <string>

#include "lumen/run.hpp"

namespace testutil {

inline std::string games_dir() { return LUMEN_GAMES_DIR; }
inline std::string configs_dir() { return LUMEN_CONFIGS_DIR; }
inline std::string data_dir() { return LUMEN_TEST_DATA_DIR; }

inline lumen::gdl::GameDescription load_zelda() {
  return lumen::run::load_game(games_dir() + "/zelda.game");
}
inline lumen::gdl::GameDescription load_solarfox() {
  return lumen::run::load_game(games_dir() + "/solarfox.game");
}
inline lumen::gdl::GameDescription load_plants() {
  return lumen::run::load_game(games_dir() + "/plants.game");
}
inline lumen::gdl::GameDescription load_gather() {
  return lumen::run::load_game(data_dir() + "/gather.game");
}
inline lumen::qd::RunConfig gather_config() {
  return lumen::run::load_config(data_dir() + "/gather.cfg").qd;
}

// level text from rows, avoiding manual newline bookkeeping in fixtures
template <typename... Rows>
std::string rows(Rows... r) {
  std::string out;
  ((out += r, out += '\n'), ...);
  return out;
}

}  // namespace testutil
