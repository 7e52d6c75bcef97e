#include "lumen/agents.hpp"

#include <deque>
#include <queue>
#include <stdexcept>
#include <vector>

namespace lumen::agent {

namespace {

double state_value(const AgentConfig& cfg, const sim::GameState& s, int depth) {
  double v = s.score - cfg.depth_tax * depth;
  if (s.status == sim::Status::Win) v += cfg.win_bonus;
  if (s.status == sim::Status::Loss) v -= cfg.loss_penalty;
  return v;
}

// insert-only linear-probe set for transposition fingerprints
class SeenSet {
 public:
  explicit SeenSet(size_t expected) {
    size_t cap = 64;
    while (cap < expected * 2) cap <<= 1;
    slots_.assign(cap, 0);
    mask_ = cap - 1;
  }

  // false when already present
  bool insert(std::uint64_t fp) {
    if (fp == 0) fp = 1;  // 0 marks an empty slot
    if ((count_ + 1) * 2 > slots_.size()) grow();
    size_t i = fp & mask_;
    while (slots_[i] != 0) {
      if (slots_[i] == fp) return false;
      i = (i + 1) & mask_;
    }
    slots_[i] = fp;
    ++count_;
    return true;
  }

 private:
  void grow() {
    std::vector<std::uint64_t> old = std::move(slots_);
    slots_.assign(old.size() * 2, 0);
    mask_ = slots_.size() - 1;
    count_ = 0;
    for (std::uint64_t fp : old)
      if (fp != 0) {
        size_t i = fp & mask_;
        while (slots_[i] != 0) i = (i + 1) & mask_;
        slots_[i] = fp;
        ++count_;
      }
  }

  std::vector<std::uint64_t> slots_;
  size_t mask_ = 0;
  size_t count_ = 0;
};

struct Node {
  sim::GameState state;
  double value = 0.0;
  int depth = 0;
  sim::Action first = sim::Action::Nil;
  std::uint64_t stamp = 0;  // creation order, breaks value ties FIFO
};

struct NodeOrder {
  // max-heap on value, then oldest first
  bool operator()(const Node* a, const Node* b) const {
    if (a->value != b->value) return a->value < b->value;
    return a->stamp > b->stamp;
  }
};

}  // namespace

sim::Action act(const AgentConfig& cfg, const sim::Board& board,
                const sim::GameState& state) {
  if (cfg.kind == Kind::Idle) return sim::Action::Nil;
  if (state.status != sim::Status::Running) return sim::Action::Nil;

  std::deque<Node> arena;  // stable node addresses
  std::priority_queue<Node*, std::vector<Node*>, NodeOrder> open;
  SeenSet seen(static_cast<size_t>(cfg.node_budget) * 6);

  std::uint64_t stamp = 0;
  auto make_node = [&](sim::GameState&& s, int depth, sim::Action first) {
    Node& n = arena.emplace_back();
    n.state = std::move(s);
    n.depth = depth;
    n.first = first;
    n.value = state_value(cfg, n.state, depth);
    n.stamp = stamp++;
    return &n;
  };

  Node* root = make_node(sim::clone_state(state), 0, sim::Action::Nil);
  seen.insert(root->state.fingerprint(*board.game));
  open.push(root);

  const Node* best_leaf = nullptr;
  auto offer_leaf = [&](const Node* n) {
    if (!best_leaf || n->value > best_leaf->value ||
        (n->value == best_leaf->value && n->stamp < best_leaf->stamp))
      best_leaf = n;
  };

  sim::GameState scratch;  // reused buffer; duplicates cost no allocation
  int expansions = 0;
  while (!open.empty() && expansions < cfg.node_budget) {
    Node* n = open.top();
    open.pop();
    if (n->state.status != sim::Status::Running || n->depth >= cfg.horizon) {
      offer_leaf(n);
      continue;
    }
    ++expansions;
    for (int a = 0; a < sim::kActionCount; ++a) {
      scratch = n->state;
      sim::step_quiet(board, scratch, sim::Action(a));
      std::uint64_t fp = scratch.fingerprint(*board.game);
      if (!seen.insert(fp)) continue;
      Node* c = make_node(std::move(scratch),
                          n->depth + 1,
                          n->depth == 0 ? sim::Action(a) : n->first);
      offer_leaf(c);
      if (c->state.status == sim::Status::Running && c->depth < cfg.horizon)
        open.push(c);
    }
  }

  return best_leaf ? best_leaf->first : sim::Action::Nil;
}

sim::ActionFn make_agent(const AgentConfig& cfg) {
  return [cfg](const sim::Board& board, const sim::GameState& state) {
    return act(cfg, board, state);
  };
}

Kind kind_from_name(std::string_view name) {
  if (name == "idle") return Kind::Idle;
  if (name == "tree-search") return Kind::TreeSearch;
  throw std::invalid_argument("unknown agent '" + std::string(name) + "'");
}

const char* kind_name(Kind k) {
  return k == Kind::Idle ? "idle" : "tree-search";
}

}  // namespace lumen::agent
