#pragma once

#include "lumen/engine.hpp"

// Evaluation agents. The tree-search agent is a deterministic budgeted
// best-first search over the forward model; the idle agent is the do-nothing
// agent used by the constraint tests.

namespace lumen::agent {

enum class Kind { Idle, TreeSearch };

struct AgentConfig {
  Kind kind = Kind::TreeSearch;
  int node_budget = 500;  // expansions per decision tick
  int horizon = 20;       // max lookahead depth
  double win_bonus = 1e4;
  double loss_penalty = 1e4;
  double depth_tax = 1.0;  // per-tick value decay, biases toward shorter wins
};

// Leaf value: score + win_bonus*win - loss_penalty*loss - depth*depth_tax.
// Expands best-value-first with FIFO tie-breaking and a transposition table
// over state fingerprints; returns the first action of the best leaf found.
// Ties between equally valued leaves resolve to the earliest-generated one,
// which follows the fixed action order nil, up, down, left, right, use.
sim::Action act(const AgentConfig& cfg, const sim::Board& board,
                const sim::GameState& state);

sim::ActionFn make_agent(const AgentConfig& cfg);

Kind kind_from_name(std::string_view name);  // throws std::invalid_argument
const char* kind_name(Kind k);

}  // namespace lumen::agent
