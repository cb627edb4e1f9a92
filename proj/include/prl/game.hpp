#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "prl/rng.hpp"

namespace prl {

// Dense P x B payoff matrix, stored column-major. Entry (i, k) is the loss of
// the row player (and the payoff of the column player).
class GameMatrix {
 public:
  GameMatrix() = default;
  GameMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  static GameMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t i, std::size_t k) const { return data_[k * rows_ + i]; }
  double& operator()(std::size_t i, std::size_t k) { return data_[k * rows_ + i]; }

  std::span<const double> column(std::size_t k) const { return {data_.data() + k * rows_, rows_}; }
  std::span<double> column(std::size_t k) { return {data_.data() + k * rows_, rows_}; }

  bool operator==(const GameMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

// A mixed strategy: non-negative weights summing to one.
struct Strategy {
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }
  std::size_t support_size() const noexcept;
  // Within `tol` of the simplex.
  bool is_stochastic(double tol = 1e-9) const noexcept;

  static Strategy pure(std::size_t n, std::size_t i);
  static Strategy uniform(std::size_t n);
  bool operator==(const Strategy&) const = default;
};

struct GameSolution {
  Strategy p;  // rows (minimizer)
  Strategy q;  // columns (maximizer)
  double value = 0.0;

  bool operator==(const GameSolution&) const = default;
};

struct FictPlayResult {
  GameSolution solution;
  std::vector<std::uint64_t> row_counts;
  std::vector<std::uint64_t> col_counts;
  // max_k (p^T M)_k - min_i (M q)_i
  double duality_gap = 0.0;

  bool operator==(const FictPlayResult&) const = default;
};

// p^T M q
double game_value(const GameMatrix& m, const Strategy& p, const Strategy& q);

// (M q)_i for every row.
std::vector<double> row_payoffs(const GameMatrix& m, const Strategy& q);
// (p^T M)_k for every column.
std::vector<double> column_payoffs(const GameMatrix& m, const Strategy& p);
double duality_gap(const GameMatrix& m, const Strategy& p, const Strategy& q);

// Brown-Robinson fictitious play for `iterations` rounds. The row player
// opens with a uniformly random row; ties in best responses go to the lowest
// index.
FictPlayResult fict_play(const GameMatrix& m, std::uint64_t iterations, Rng& rng);

// Largest min(P, B) accepted by exact_solve.
inline constexpr std::size_t kExactSolveMaxSide = 8;

// Exact saddle point by enumerating square supports and solving the
// equalization systems. For small matrices only (test oracle).
GameSolution exact_solve(const GameMatrix& m);

}  // namespace prl
