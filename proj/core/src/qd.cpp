#include "lumen/qd.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace lumen::qd {

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
  if (iterations < 0) fail("iterations must be >= 0");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (random_fraction < 0.0 || random_fraction > 1.0)
    fail("random_fraction must be in [0,1]");
  if (elite_parent_prob < 0.0 || elite_parent_prob > 1.0)
    fail("elite_parent_prob must be in [0,1]");
  if (threshold < 0.0) fail("threshold must be >= 0");
  if (t_ideal < 1) fail("t_ideal must be >= 1");
  if (idle_runs < 1) fail("idle_runs must be >= 1");
  if (idle_pass_needed < 0 || idle_pass_needed > idle_runs)
    fail("idle_pass_needed must be in [0, idle_runs]");
  if (w < 0.0 || w > 1.0) fail("w must be in [0,1]");
  if (mutation_continue_prob < 0.0 || mutation_continue_prob >= 1.0)
    fail("mutation_continue_prob must be in [0,1)");
  if (max_ticks < 1) fail("max_ticks must be >= 1");
  if (infeasible_cap < 1) fail("infeasible_cap must be >= 1");
  if (floor_weight < 0.5 || floor_weight > 1.0)
    fail("floor_weight must be in [0.5,1]");
  if (agent.node_budget < 1) fail("node_budget must be >= 1");
  if (agent.horizon < 1) fail("horizon must be >= 1");
}

// ---------------------------------------------------------------------------
// constraint scores
// ---------------------------------------------------------------------------

double time_constraint(int win, int win_tick, int survival_tick, int t_ideal) {
  if (win) {
    int d = std::abs(win_tick - t_ideal);
    return 1.0 / std::max(d, 1);
  }
  int d = std::abs(survival_tick - t_ideal);
  return 0.25 / std::max(d, 1);
}

double idle_constraint(int n_pass, int n_total) {
  double ratio = static_cast<double>(n_pass) / n_total;
  return ratio >= 0.5 ? 1.0 : ratio;
}

// ---------------------------------------------------------------------------
// entropy fitness
// ---------------------------------------------------------------------------

namespace {

double normalized_entropy(const std::vector<int>& counts, int total, double log_base) {
  double h = 0.0;
  for (int c : counts) {
    if (c == 0) continue;
    double p = static_cast<double>(c) / total;
    h -= p * std::log2(p);
  }
  return h / log_base;
}

}  // namespace

double tile_entropy(const gdl::Level& level, int alphabet_size) {
  // fixed summation order (char-ascending) so equal count multisets yield
  // bit-identical entropies
  int counts[256] = {0};
  for (char c : level.grid) ++counts[static_cast<unsigned char>(c)];
  std::vector<int> present;
  for (int c = 0; c < 256; ++c)
    if (counts[c] > 0) present.push_back(counts[c]);
  return normalized_entropy(present, static_cast<int>(level.grid.size()),
                            std::log2(static_cast<double>(alphabet_size)));
}

double derivative_entropy(const gdl::Level& level) {
  static constexpr int dx[4] = {0, 0, -1, 1};
  static constexpr int dy[4] = {-1, 1, 0, 0};
  std::vector<int> buckets(5, 0);
  for (int y = 0; y < level.height; ++y) {
    for (int x = 0; x < level.width; ++x) {
      int same = 0, present = 0;
      for (int k = 0; k < 4; ++k) {
        int nx = x + dx[k], ny = y + dy[k];
        if (nx < 0 || nx >= level.width || ny < 0 || ny >= level.height) continue;
        ++present;
        if (level.at(nx, ny) == level.at(x, y)) ++same;
      }
      double r = present > 0 ? static_cast<double>(same) / present : 1.0;
      int b = std::min(static_cast<int>(std::floor(4.0 * r)), 4);
      ++buckets[static_cast<size_t>(b)];
    }
  }
  return normalized_entropy(buckets, level.width * level.height, std::log2(5.0));
}

double level_fitness(const gdl::Level& level, double w, int alphabet_size) {
  return tile_entropy(level, alphabet_size) * w +
         derivative_entropy(level) * (1.0 - w);
}

// ---------------------------------------------------------------------------
// evaluation
// ---------------------------------------------------------------------------

EvalResult evaluate(const sim::CompiledGame& game, const mech::MechanicCatalog& catalog,
                    const gdl::Level& level, const RunConfig& cfg, std::uint64_t seed) {
  const sim::Board board(game, level);

  EvalResult out;
  out.seed = seed;

  sim::ActionFn eval_agent = agent::make_agent(cfg.agent);
  sim::PlayTrace trace =
      sim::run_episode(board, eval_agent, cfg.max_ticks, mix_seed(seed, 0));
  out.win = trace.final_status == sim::Status::Win ? 1 : 0;
  if (out.win)
    out.win_tick = trace.final_tick;
  else
    out.survival_tick = trace.final_tick;
  out.score = trace.score;
  out.vector = mech::vector_from_trace(trace, catalog);

  agent::AgentConfig idle_cfg;
  idle_cfg.kind = agent::Kind::Idle;
  sim::ActionFn idle_agent = agent::make_agent(idle_cfg);
  const int idle_horizon = std::min(cfg.t_ideal, cfg.max_ticks);
  out.idle_runs = cfg.idle_runs;
  for (int k = 0; k < cfg.idle_runs; ++k) {
    sim::PlayTrace idle =
        sim::run_episode(board, idle_agent, idle_horizon, mix_seed(seed, 1 + k));
    // a run fails only when the idle agent dies before reaching t_ideal
    bool died_early =
        idle.final_status == sim::Status::Loss && idle.final_tick < cfg.t_ideal;
    if (!died_early) ++out.idle_passes;
  }

  out.time_score = time_constraint(out.win, out.win_tick, out.survival_tick, cfg.t_ideal);
  out.idle_score = idle_constraint(out.idle_passes, out.idle_runs);
  out.constraint = out.time_score + out.idle_score;
  out.fitness = level_fitness(level, cfg.w,
                              static_cast<int>(game.desc->tile_alphabet.size()));
  return out;
}

bool is_feasible(const EvalResult& result, double threshold) {
  return result.idle_score == 1.0 && result.time_score >= threshold;
}

// ---------------------------------------------------------------------------
// variation
// ---------------------------------------------------------------------------

gdl::Level mutate_level(const gdl::Level& level, const gdl::GameDescription& desc,
                        double continue_prob, Rng& rng, int* rerolls) {
  gdl::Level out = level;
  const auto tiles = static_cast<std::uint32_t>(out.grid.size());
  const auto alphabet = static_cast<std::uint32_t>(desc.tile_alphabet.size());
  int count = 0;
  do {
    std::uint32_t pos = rng.below(tiles);
    out.grid[pos] = desc.tile_alphabet[rng.below(alphabet)];
    ++count;
  } while (rng.unit() < continue_prob);
  if (rerolls) *rerolls = count;

  // repair the one-avatar invariant
  int avatars = gdl::count_avatars(out, desc);
  if (avatars == 0) {
    std::vector<std::uint32_t> spots;
    for (std::uint32_t i = 0; i < tiles; ++i)
      if (out.grid[i] == desc.floor_char) spots.push_back(i);
    std::uint32_t pos = spots.empty()
                            ? rng.below(tiles)
                            : spots[rng.below(static_cast<std::uint32_t>(spots.size()))];
    out.grid[pos] = desc.avatar_char;
  } else if (avatars > 1) {
    std::vector<std::uint32_t> spots;
    for (std::uint32_t i = 0; i < tiles; ++i)
      if (out.grid[i] == desc.avatar_char) spots.push_back(i);
    std::uint32_t keep = rng.below(static_cast<std::uint32_t>(spots.size()));
    for (std::uint32_t k = 0; k < spots.size(); ++k)
      if (k != keep) out.grid[spots[k]] = desc.floor_char;
  }
  return out;
}

gdl::Level random_level(const gdl::GameDescription& desc, const RunConfig& cfg, Rng& rng) {
  gdl::Level level;
  level.width = desc.width;
  level.height = desc.height;
  level.grid.assign(static_cast<size_t>(desc.width) * desc.height, desc.floor_char);

  const bool bordered = cfg.border_char != 0;
  if (bordered) {
    for (int x = 0; x < level.width; ++x) {
      level.at(x, 0) = cfg.border_char;
      level.at(x, level.height - 1) = cfg.border_char;
    }
    for (int y = 0; y < level.height; ++y) {
      level.at(0, y) = cfg.border_char;
      level.at(level.width - 1, y) = cfg.border_char;
    }
  }

  std::vector<std::uint32_t> interior;
  for (int y = 0; y < level.height; ++y)
    for (int x = 0; x < level.width; ++x)
      if (!bordered || (x > 0 && x < level.width - 1 && y > 0 && y < level.height - 1))
        interior.push_back(static_cast<std::uint32_t>(y * level.width + x));

  // non-floor, non-avatar symbols split the remaining probability mass
  std::string fill;
  for (char c : desc.tile_alphabet)
    if (c != desc.floor_char && c != desc.avatar_char) fill.push_back(c);

  for (std::uint32_t pos : interior) {
    if (rng.unit() < cfg.floor_weight || fill.empty()) continue;
    level.grid[pos] = fill[rng.below(static_cast<std::uint32_t>(fill.size()))];
  }
  std::uint32_t avatar_pos =
      interior[rng.below(static_cast<std::uint32_t>(interior.size()))];
  level.grid[avatar_pos] = desc.avatar_char;
  return level;
}

// ---------------------------------------------------------------------------
// archive
// ---------------------------------------------------------------------------

int Archive::elite_count() const {
  int n = 0;
  for (const auto& [bits, cell] : cells)
    if (cell.elite) ++n;
  return n;
}

const Cell* Archive::cell(const mech::MechanicVector& v) const {
  auto it = cells.find(v.bits);
  return it == cells.end() ? nullptr : &it->second;
}

Placement insert(Archive& archive, Chromosome&& chromosome) {
  const EvalResult& eval = *chromosome.eval;
  auto [it, created] = archive.cells.try_emplace(eval.vector.bits);
  Cell& cell = it->second;
  if (created) cell.key = eval.vector;

  if (is_feasible(eval, archive.threshold)) {
    if (!cell.elite) {
      cell.elite = std::move(chromosome);
      return Placement::NewElite;
    }
    if (eval.fitness < cell.elite->eval->fitness) {
      cell.elite = std::move(chromosome);
      return Placement::ReplacedElite;
    }
    return Placement::RejectedElite;
  }

  // infeasible population: ranked by constraint score, best first
  auto pos = std::find_if(cell.infeasible.begin(), cell.infeasible.end(),
                          [&](const Chromosome& c) {
                            return c.eval->constraint < eval.constraint;
                          });
  cell.infeasible.insert(pos, std::move(chromosome));
  if (static_cast<int>(cell.infeasible.size()) > archive.infeasible_cap) {
    cell.infeasible.pop_back();
    return Placement::InfeasibleDropped;
  }
  return Placement::InfeasibleKept;
}

std::vector<Chromosome> next_generation(const Archive& archive,
                                        const gdl::GameDescription& desc,
                                        const RunConfig& cfg, Rng& rng) {
  std::vector<Chromosome> batch;
  batch.reserve(static_cast<size_t>(cfg.batch_size));

  int n_random = static_cast<int>(std::lround(cfg.batch_size * cfg.random_fraction));
  if (archive.cells.empty()) n_random = cfg.batch_size;

  for (int i = 0; i < n_random; ++i) {
    Chromosome c;
    c.level = random_level(desc, cfg, rng);
    c.lineage = Lineage::Random;
    batch.push_back(std::move(c));
  }

  std::vector<const Cell*> populated;
  populated.reserve(archive.cells.size());
  for (const auto& [bits, cell] : archive.cells) populated.push_back(&cell);

  while (static_cast<int>(batch.size()) < cfg.batch_size) {
    const Cell* cell =
        populated[rng.below(static_cast<std::uint32_t>(populated.size()))];
    const bool want_elite = rng.unit() < cfg.elite_parent_prob;
    const Chromosome* parent = nullptr;
    if (want_elite)
      parent = cell->elite ? &*cell->elite
                           : (cell->infeasible.empty() ? nullptr : &cell->infeasible[0]);
    else
      parent = !cell->infeasible.empty() ? &cell->infeasible[0]
                                         : (cell->elite ? &*cell->elite : nullptr);
    if (!parent) continue;  // cells always hold at least one chromosome

    Chromosome c;
    c.level = mutate_level(parent->level, desc, cfg.mutation_continue_prob, rng);
    c.lineage = Lineage::Mutated;
    batch.push_back(std::move(c));
  }
  return batch;
}

// ---------------------------------------------------------------------------
// generation loop
// ---------------------------------------------------------------------------

namespace {

void evaluate_batch(const sim::CompiledGame& game, const mech::MechanicCatalog& catalog,
                    std::vector<Chromosome>& batch, const RunConfig& cfg,
                    const std::vector<std::uint64_t>& seeds, int threads) {
  const int n = static_cast<int>(batch.size());
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i)
      batch[static_cast<size_t>(i)].eval = evaluate(
          game, catalog, batch[static_cast<size_t>(i)].level, cfg, seeds[static_cast<size_t>(i)]);
    return;
  }
  std::atomic<int> cursor{0};
  auto worker = [&]() {
    for (;;) {
      int i = cursor.fetch_add(1);
      if (i >= n) return;
      batch[static_cast<size_t>(i)].eval = evaluate(
          game, catalog, batch[static_cast<size_t>(i)].level, cfg, seeds[static_cast<size_t>(i)]);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(threads));
  for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace

Archive evolve(const gdl::GameDescription& desc, const RunConfig& cfg, int threads,
               const GenerationCallback& on_generation) {
  cfg.validate();
  const sim::CompiledGame game(desc);

  Archive archive;
  archive.catalog = mech::extract_mechanics(desc);
  archive.infeasible_cap = cfg.infeasible_cap;
  archive.threshold = cfg.threshold;

  Rng rng(cfg.seed);
  long long evaluations = 0;

  for (int gen = 0; gen < cfg.iterations; ++gen) {
    std::vector<Chromosome> batch = next_generation(archive, desc, cfg, rng);

    // seeds drawn serially in batch order so evaluation scheduling is moot
    std::vector<std::uint64_t> seeds;
    seeds.reserve(batch.size());
    for (size_t i = 0; i < batch.size(); ++i) seeds.push_back(rng.next());

    evaluate_batch(game, archive.catalog, batch, cfg, seeds, threads);
    evaluations += static_cast<long long>(batch.size());

    double batch_constraint = 0.0;
    for (const auto& c : batch) batch_constraint += c.eval->constraint;
    batch_constraint /= static_cast<double>(batch.size());

    for (auto& c : batch) insert(archive, std::move(c));
    archive.generation = gen + 1;

    if (on_generation) {
      GenerationStats stats;
      stats.generation = gen + 1;
      stats.elite_count = archive.elite_count();
      stats.populated_cells = archive.populated_count();
      stats.mean_constraint = batch_constraint;
      stats.evaluations_done = evaluations;
      double sum = 0.0;
      int n = 0;
      for (const auto& [bits, cell] : archive.cells) {
        if (!cell.elite) continue;
        sum += cell.elite->eval->fitness;
        ++n;
      }
      stats.mean_elite_fitness = n > 0 ? sum / n : 0.0;
      on_generation(stats, archive);
    }
  }
  return archive;
}

}  // namespace lumen::qd
