#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "prl/core_types.hpp"
#include "prl/featgen.hpp"
#include "prl/game.hpp"
#include "prl/model.hpp"
#include "prl/rng.hpp"

namespace prl {

// A game-matrix column: a training preference paired with a feature.
struct Column {
  std::size_t preference = 0;
  FeatureDescriptor feature;

  bool operator==(const Column&) const = default;
};

struct WorkingSet {
  std::vector<Column> columns;

  std::size_t size() const noexcept { return columns.size(); }
  bool operator==(const WorkingSet&) const = default;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double value = 0.0;
  std::size_t replaced = 0;
  std::size_t support = 0;
  double duality_gap = 0.0;

  bool operator==(const EpochRecord&) const = default;
};

struct TrainTrace {
  std::vector<EpochRecord> epochs;

  bool operator==(const TrainTrace&) const = default;
};

enum class SubgameSolver : std::uint8_t {
  FictPlay,
  // exact_solve on every working-set game; only for min(P, B) <= 8.
  Exact,
};

struct TrainConfig {
  std::size_t working_set_size = 2000;
  std::size_t epochs = 1000;
  std::uint64_t fict_play_iterations = 1000000;
  SubgameSolver solver = SubgameSolver::FictPlay;

  void validate() const;
};

// Upper bound on redraws in draw_column.
inline constexpr std::size_t kMaxColumnDraws = 10000;

// A uniformly drawn preference j with a generated feature f. f is redrawn
// while phi_f(x_j) = 0, since such a column is identically zero. After
// kMaxColumnDraws attempts the last draw is kept.
Column draw_column(const PreferenceSet& prefs, const FeatureGenerator& gen, const Dataset& data,
                   Rng& rng);

WorkingSet init_working_set(const PreferenceSet& prefs, const FeatureGenerator& gen,
                            const Dataset& data, std::size_t size, Rng& rng);

// Fills column `k` of `m` for the given column descriptor.
void fill_column(GameMatrix& m, std::size_t k, const Column& column, const PreferenceSet& prefs,
                 const Dataset& data);
GameMatrix build_columns(const PreferenceSet& prefs, const WorkingSet& ws, const Dataset& data);

// Replaces every column whose weight in q is zero by a fresh draw_column()
// pair and recomputes its matrix column. Returns the number of replacements.
std::size_t replace_dead_columns(WorkingSet& ws, const Strategy& q, const PreferenceSet& prefs,
                                 const FeatureGenerator& gen, Rng& rng, GameMatrix& m,
                                 const Dataset& data);

struct TrainResult {
  Model model;
  TrainTrace trace;
  WorkingSet working_set;  // final
  FictPlayResult last;     // final epoch's subgame solution
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// The column-generation loop: T epochs of fictitious play on the working
// set, replacing dead columns between epochs (not after the last one).
TrainResult train(const PreferenceSet& prefs, const Dataset& data, const FeatureGenerator& gen,
                  const TrainConfig& config, Rng& rng, const EpochCallback& on_epoch = {});

}  // namespace prl
