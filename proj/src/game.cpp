#include "prl/game.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "prl/errors.hpp"

namespace prl {

GameMatrix::GameMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

GameMatrix GameMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw DimensionError("empty game matrix");
  GameMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols()) throw DimensionError("ragged game matrix rows");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rows[i][k];
  }
  return m;
}

std::size_t Strategy::support_size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(weights.begin(), weights.end(), [](double w) { return w > 0.0; }));
}

bool Strategy::is_stochastic(double tol) const noexcept {
  if (weights.empty()) return false;
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) return false;
    sum += w;
  }
  return std::abs(sum - 1.0) <= tol;
}

Strategy Strategy::pure(std::size_t n, std::size_t i) {
  Strategy s{std::vector<double>(n, 0.0)};
  s.weights.at(i) = 1.0;
  return s;
}

Strategy Strategy::uniform(std::size_t n) {
  return Strategy{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

namespace {

void check_dims(const GameMatrix& m, const Strategy* p, const Strategy* q) {
  if (m.empty()) throw DimensionError("empty game matrix");
  if (p && p->size() != m.rows()) {
    throw DimensionError("row strategy has " + std::to_string(p->size()) + " entries for " +
                         std::to_string(m.rows()) + " rows");
  }
  if (q && q->size() != m.cols()) {
    throw DimensionError("column strategy has " + std::to_string(q->size()) + " entries for " +
                         std::to_string(m.cols()) + " columns");
  }
}

Strategy normalized_counts(const std::vector<std::uint64_t>& counts) {
  const double total =
      static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  Strategy s{std::vector<double>(counts.size())};
  for (std::size_t i = 0; i < counts.size(); ++i) {
    s.weights[i] = static_cast<double>(counts[i]) / total;
  }
  return s;
}

}  // namespace

std::vector<double> row_payoffs(const GameMatrix& m, const Strategy& q) {
  check_dims(m, nullptr, &q);
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    if (q[k] == 0.0) continue;
    const auto col = m.column(k);
    for (std::size_t i = 0; i < m.rows(); ++i) out[i] += col[i] * q[k];
  }
  return out;
}

std::vector<double> column_payoffs(const GameMatrix& m, const Strategy& p) {
  check_dims(m, &p, nullptr);
  std::vector<double> out(m.cols(), 0.0);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const auto col = m.column(k);
    double acc = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) acc += p[i] * col[i];
    out[k] = acc;
  }
  return out;
}

double game_value(const GameMatrix& m, const Strategy& p, const Strategy& q) {
  check_dims(m, &p, &q);
  const auto mq = row_payoffs(m, q);
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) v += p[i] * mq[i];
  return v;
}

double duality_gap(const GameMatrix& m, const Strategy& p, const Strategy& q) {
  const auto cols = column_payoffs(m, p);
  const auto rows = row_payoffs(m, q);
  return *std::max_element(cols.begin(), cols.end()) - *std::min_element(rows.begin(), rows.end());
}

namespace {

// s += x, then the first index of the smallest (largest) entry. Split in two
// passes so the first one vectorizes.
std::size_t add_and_argmin(double* s, const double* x, std::size_t n) {
  double best = s[0] + x[0];
  for (std::size_t i = 0; i < n; ++i) {
    s[i] += x[i];
    best = s[i] < best ? s[i] : best;
  }
  std::size_t i = 0;
  while (s[i] != best) ++i;
  return i;
}

std::size_t add_and_argmax(double* s, const double* x, std::size_t n) {
  double best = s[0] + x[0];
  for (std::size_t i = 0; i < n; ++i) {
    s[i] += x[i];
    best = s[i] > best ? s[i] : best;
  }
  std::size_t i = 0;
  while (s[i] != best) ++i;
  return i;
}

}  // namespace

FictPlayResult fict_play(const GameMatrix& m, std::uint64_t iterations, Rng& rng) {
  if (m.empty()) throw DimensionError("fictitious play on an empty game matrix");
  if (iterations == 0) throw ConfigurationError("fictitious play needs at least one iteration");
  const std::size_t P = m.rows();
  const std::size_t B = m.cols();

  // Row-major copy so both best-response updates stream contiguous memory.
  std::vector<double> by_row(P * B);
  for (std::size_t k = 0; k < B; ++k) {
    const auto col = m.column(k);
    for (std::size_t i = 0; i < P; ++i) by_row[i * B + k] = col[i];
  }

  FictPlayResult out;
  out.row_counts.assign(P, 0);
  out.col_counts.assign(B, 0);
  std::vector<double> s_p(P, 0.0);
  std::vector<double> s_q(B, 0.0);

  const std::size_t first = static_cast<std::size_t>(rng.uniform_index(P));
  out.row_counts[first] = 1;
  const double* r0 = by_row.data() + first * B;
  std::size_t q_hat = 0;
  for (std::size_t k = 0; k < B; ++k) {
    s_q[k] = r0[k];
    if (s_q[k] > s_q[q_hat]) q_hat = k;
  }

  for (std::uint64_t t = 0; t < iterations; ++t) {
    const std::size_t p_hat = add_and_argmin(s_p.data(), m.column(q_hat).data(), P);
    ++out.col_counts[q_hat];
    ++out.row_counts[p_hat];
    q_hat = add_and_argmax(s_q.data(), by_row.data() + p_hat * B, B);
  }

  out.solution.p = normalized_counts(out.row_counts);
  out.solution.q = normalized_counts(out.col_counts);
  out.solution.value = game_value(m, out.solution.p, out.solution.q);
  out.duality_gap = duality_gap(m, out.solution.p, out.solution.q);
  return out;
}

namespace {

// Advances `idx` (sorted, values < n) to the next k-combination.
bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

double binomial(std::size_t n, std::size_t k) {
  double r = 1.0;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  return r;
}

// Solves [A -1; 1^T 0] [x; v] = [0; 1]. Returns false when singular.
bool equalize(const Eigen::MatrixXd& a, Eigen::VectorXd& x, double& v) {
  const auto k = a.rows();
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(k + 1, k + 1);
  sys.topLeftCorner(k, k) = a;
  sys.block(0, k, k, 1).setConstant(-1.0);
  sys.block(k, 0, 1, k).setConstant(1.0);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(k + 1);
  rhs(k) = 1.0;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys);
  if (!lu.isInvertible()) return false;
  const Eigen::VectorXd sol = lu.solve(rhs);
  x = sol.head(k);
  v = sol(k);
  return true;
}

constexpr double kExactTol = 1e-9;
constexpr double kMaxSupportPairs = 5e6;

}  // namespace

GameSolution exact_solve(const GameMatrix& m) {
  if (m.empty()) throw DimensionError("exact solve of an empty game matrix");
  const std::size_t P = m.rows();
  const std::size_t B = m.cols();
  const std::size_t side = std::min(P, B);
  if (side > kExactSolveMaxSide) {
    throw CapacityError("exact solve supports min(P, B) <= " +
                        std::to_string(kExactSolveMaxSide) + ", got " + std::to_string(side));
  }
  double pairs = 0.0;
  for (std::size_t k = 1; k <= side; ++k) pairs += binomial(P, k) * binomial(B, k);
  if (pairs > kMaxSupportPairs) {
    throw CapacityError("exact solve would enumerate " + std::to_string(pairs) + " support pairs");
  }

  // Shifting all entries to >= 1 keeps the value away from zero, which
  // guarantees a basic solution on a nonsingular square kernel.
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < B; ++k) {
    for (double v : m.column(k)) lo = std::min(lo, v);
  }
  const double shift = 1.0 - lo;
  Eigen::MatrixXd full(P, B);
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t k = 0; k < B; ++k) full(i, k) = m(i, k) + shift;
  }
  double scale = 1.0;
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t k = 0; k < B; ++k) scale = std::max(scale, std::abs(full(i, k)));
  }
  const double tol = kExactTol * scale;

  for (std::size_t k = 1; k <= side; ++k) {
    std::vector<std::size_t> rows(k);
    std::iota(rows.begin(), rows.end(), 0);
    do {
      std::vector<std::size_t> cols(k);
      std::iota(cols.begin(), cols.end(), 0);
      do {
        Eigen::MatrixXd sub(k, k);
        for (std::size_t a = 0; a < k; ++a) {
          for (std::size_t b = 0; b < k; ++b) sub(a, b) = full(rows[a], cols[b]);
        }
        Eigen::VectorXd qs, ps;
        double vq = 0.0, vp = 0.0;
        if (!equalize(sub, qs, vq) || !equalize(sub.transpose(), ps, vp)) continue;
        if (std::abs(vq - vp) > tol) continue;
        if (qs.minCoeff() < -kExactTol || ps.minCoeff() < -kExactTol) continue;

        Eigen::VectorXd q = Eigen::VectorXd::Zero(B);
        Eigen::VectorXd p = Eigen::VectorXd::Zero(P);
        for (std::size_t a = 0; a < k; ++a) {
          q(cols[a]) = std::max(0.0, qs(a));
          p(rows[a]) = std::max(0.0, ps(a));
        }
        q /= q.sum();
        p /= p.sum();
        const Eigen::VectorXd mq = full * q;
        const Eigen::VectorXd pm = full.transpose() * p;
        // Row player minimizes: no row may beat v, no column may exceed it.
        if (mq.minCoeff() < vq - tol || pm.maxCoeff() > vq + tol) continue;

        GameSolution sol;
        sol.p.weights.assign(p.data(), p.data() + P);
        sol.q.weights.assign(q.data(), q.data() + B);
        sol.value = game_value(m, sol.p, sol.q);
        return sol;
      } while (next_combination(cols, B));
    } while (next_combination(rows, P));
  }
  // Unreachable for finite matrices; kept for non-finite input.
  throw Error("exact solve found no saddle point (non-finite entries?)");
}

}  // namespace prl
