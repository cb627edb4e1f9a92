#include "prl/prl.hpp"

#include "prl/errors.hpp"

namespace prl {

void TrainConfig::validate() const {
  if (working_set_size == 0) throw ConfigurationError("working set size B must be positive");
  if (epochs == 0) throw ConfigurationError("number of epochs T must be positive");
  if (fict_play_iterations == 0) throw ConfigurationError("FictPlay iterations T_e must be positive");
}

Column draw_column(const PreferenceSet& prefs, const FeatureGenerator& gen, const Dataset& data,
                   Rng& rng) {
  if (prefs.prefs.empty()) throw ConfigurationError("empty preference set");
  Column col;
  col.preference = static_cast<std::size_t>(rng.uniform_index(prefs.size()));
  const auto x = data.row(prefs[col.preference].instance);
  for (std::size_t attempt = 0; attempt < kMaxColumnDraws; ++attempt) {
    col.feature = gen.generate(rng);
    if (evaluate(col.feature, x) != 0.0) break;
  }
  return col;
}

WorkingSet init_working_set(const PreferenceSet& prefs, const FeatureGenerator& gen,
                            const Dataset& data, std::size_t size, Rng& rng) {
  if (prefs.prefs.empty()) throw ConfigurationError("empty preference set");
  if (size == 0) throw ConfigurationError("working set size B must be positive");
  WorkingSet ws;
  ws.columns.reserve(size);
  for (std::size_t k = 0; k < size; ++k) ws.columns.push_back(draw_column(prefs, gen, data, rng));
  return ws;
}

void fill_column(GameMatrix& m, std::size_t k, const Column& column, const PreferenceSet& prefs,
                 const Dataset& data) {
  if (column.preference >= prefs.size()) throw DimensionError("column references an unknown preference");
  if (column.feature.min_dimension() > data.dim) {
    throw DimensionError("feature references variable " +
                         std::to_string(column.feature.min_dimension() - 1) + " of a " +
                         std::to_string(data.dim) + "-dimensional dataset");
  }
  const Preference& cp = prefs[column.preference];
  const double phi_col = evaluate(column.feature, data.row(cp.instance));
  auto out = m.column(k);
  if (phi_col == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  // Consecutive preferences usually share an instance; reuse its feature value.
  std::size_t cached_instance = data.rows();
  double cached_phi = 0.0;
  for (std::size_t i = 0; i < prefs.size(); ++i) {
    const Preference& rp = prefs[i];
    const int sign = kron_sign(rp, cp);
    if (sign == 0) {
      out[i] = 0.0;
      continue;
    }
    if (rp.instance != cached_instance) {
      cached_instance = rp.instance;
      cached_phi = evaluate(column.feature, data.row(rp.instance));
    }
    out[i] = cached_phi * phi_col * sign;
  }
}

GameMatrix build_columns(const PreferenceSet& prefs, const WorkingSet& ws, const Dataset& data) {
  if (prefs.prefs.empty() || ws.columns.empty()) throw DimensionError("empty game matrix");
  GameMatrix m(prefs.size(), ws.size());
  for (std::size_t k = 0; k < ws.size(); ++k) fill_column(m, k, ws.columns[k], prefs, data);
  return m;
}

std::size_t replace_dead_columns(WorkingSet& ws, const Strategy& q, const PreferenceSet& prefs,
                                 const FeatureGenerator& gen, Rng& rng, GameMatrix& m,
                                 const Dataset& data) {
  if (q.size() != ws.size() || m.cols() != ws.size()) {
    throw DimensionError("strategy, working set and matrix disagree on B");
  }
  std::size_t replaced = 0;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    if (q[k] != 0.0) continue;
    ws.columns[k] = draw_column(prefs, gen, data, rng);
    fill_column(m, k, ws.columns[k], prefs, data);
    ++replaced;
  }
  return replaced;
}

TrainResult train(const PreferenceSet& prefs, const Dataset& data, const FeatureGenerator& gen,
                  const TrainConfig& config, Rng& rng, const EpochCallback& on_epoch) {
  config.validate();
  prefs.validate(data);

  TrainResult result;
  result.working_set = init_working_set(prefs, gen, data, config.working_set_size, rng);
  GameMatrix m = build_columns(prefs, result.working_set, data);

  for (std::size_t t = 1; t <= config.epochs; ++t) {
    if (config.solver == SubgameSolver::Exact) {
      result.last = FictPlayResult{};
      result.last.solution = exact_solve(m);
      result.last.duality_gap = duality_gap(m, result.last.solution.p, result.last.solution.q);
    } else {
      result.last = fict_play(m, config.fict_play_iterations, rng);
    }
    EpochRecord rec;
    rec.epoch = t;
    rec.value = result.last.solution.value;
    rec.support = result.last.solution.q.support_size();
    rec.duality_gap = result.last.duality_gap;
    if (t < config.epochs) {
      rec.replaced = replace_dead_columns(result.working_set, result.last.solution.q, prefs, gen, rng,
                                          m, data);
    }
    result.trace.epochs.push_back(rec);
    if (on_epoch) on_epoch(rec);
  }

  result.model = from_solution(result.last.solution.q, result.working_set, prefs, data);
  auto& meta = result.model.metadata();
  meta.generator = gen.config();
  meta.seed = gen.config().seed;
  meta.train_instances = data.rows();
  meta.dimension = data.dim;
  meta.working_set_size = config.working_set_size;
  meta.epochs = config.epochs;
  meta.fict_play_iterations = config.fict_play_iterations;
  return result;
}

}  // namespace prl
