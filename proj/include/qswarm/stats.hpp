#pragma once

// Rank-based comparison of k algorithms over M problems: modified Friedman
// test (Iman-Davenport F form) with a computed F critical value, and the
// Nemenyi post-hoc critical difference.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qswarm::stats {

/// Metric cell: a finite value, or empty for FAIL (did not converge).
using Cell = std::optional<double>;

enum class Direction { LowerIsBetter, HigherIsBetter };

/// Per-problem ranks of k algorithms. Ties share the average rank; FAIL
/// entries tie over the worst rank block of their row.
struct RankTable {
  std::size_t problems = 0;    // M
  std::size_t algorithms = 0;  // k
  std::vector<std::vector<double>> ranks;  // M rows of k ranks
  std::vector<double> average_ranks;       // length k

  static RankTable from_ranks(std::vector<std::vector<double>> rows) {
    RankTable rt;
    rt.problems = rows.size();
    rt.algorithms = rows.empty() ? 0 : rows.front().size();
    for (const auto& row : rows) {
      if (row.size() != rt.algorithms) throw std::invalid_argument("ragged rank rows");
    }
    rt.ranks = std::move(rows);
    rt.compute_averages();
    return rt;
  }

  void compute_averages() {
    average_ranks.assign(algorithms, 0.0);
    for (const auto& row : ranks) {
      for (std::size_t a = 0; a < algorithms; ++a) average_ranks[a] += row[a];
    }
    for (auto& r : average_ranks) r /= static_cast<double>(problems);
  }
};

/// Ranks one row of metric values (rank 1 = best under `direction`).
inline std::vector<double> rank_row(const std::vector<Cell>& row, Direction direction) {
  const std::size_t k = row.size();
  std::vector<double> keys(k);
  std::size_t fails = 0;
  for (std::size_t a = 0; a < k; ++a) {
    if (!row[a]) {
      ++fails;
      continue;
    }
    if (!std::isfinite(*row[a])) throw std::invalid_argument("non-finite metric value");
    keys[a] = direction == Direction::LowerIsBetter ? *row[a] : -*row[a];
  }
  std::vector<std::size_t> order;
  for (std::size_t a = 0; a < k; ++a) {
    if (row[a]) order.push_back(a);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return keys[a] < keys[b]; });

  std::vector<double> ranks(k, 0.0);
  std::size_t pos = 0;
  while (pos < order.size()) {
    std::size_t end = pos;
    while (end + 1 < order.size() && keys[order[end + 1]] == keys[order[pos]]) ++end;
    const double shared = (static_cast<double>(pos + 1) + static_cast<double>(end + 1)) / 2.0;
    for (std::size_t i = pos; i <= end; ++i) ranks[order[i]] = shared;
    pos = end + 1;
  }
  if (fails > 0) {
    // FAIL entries share the worst `fails` ranks
    const double lo = static_cast<double>(k - fails + 1);
    const double hi = static_cast<double>(k);
    const double shared = (lo + hi) / 2.0;
    for (std::size_t a = 0; a < k; ++a) {
      if (!row[a]) ranks[a] = shared;
    }
  }
  return ranks;
}

/// Ranks every row of an M x k value table.
inline RankTable rank_rows(const std::vector<std::vector<Cell>>& values, Direction direction) {
  if (values.size() < 2) throw std::invalid_argument("need at least 2 problems");
  const std::size_t k = values.front().size();
  if (k < 2) throw std::invalid_argument("need at least 2 algorithms");
  std::vector<std::vector<double>> rows;
  rows.reserve(values.size());
  for (const auto& row : values) {
    if (row.size() != k) throw std::invalid_argument("ragged value rows");
    rows.push_back(rank_row(row, direction));
  }
  return RankTable::from_ranks(std::move(rows));
}

struct FriedmanResult {
  double chi_squared = 0.0;
  double tau_f = 0.0;
  bool infinite = false;  // degenerate denominator M(k-1) == chi^2
};

/// chi_F^2 = 12M/(k(k+1)) (sum R_i^2 - k(k+1)^2/4);
/// tau_F = (M-1) chi_F^2 / (M(k-1) - chi_F^2).
inline FriedmanResult friedman_tau(const RankTable& rt) {
  const double m = static_cast<double>(rt.problems);
  const double k = static_cast<double>(rt.algorithms);
  double sum_sq = 0.0;
  for (double r : rt.average_ranks) sum_sq += r * r;
  const double chi = 12.0 * m / (k * (k + 1.0)) * (sum_sq - k * (k + 1.0) * (k + 1.0) / 4.0);
  const double denom = m * (k - 1.0) - chi;
  FriedmanResult out;
  out.chi_squared = chi;
  if (std::abs(denom) < 1e-9 * std::max(1.0, chi)) {
    out.infinite = true;
    out.tau_f = std::numeric_limits<double>::infinity();
  } else {
    out.tau_f = (m - 1.0) * chi / denom;
  }
  return out;
}

// ---------------------------------------------------------------------------
// F distribution

namespace detail {

/// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
inline double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace detail

inline double incomplete_beta(double a, double b, double x) {
  if (x < 0.0 || x > 1.0) throw std::invalid_argument("incomplete beta needs x in [0,1]");
  if (x == 0.0 || x == 1.0) return x;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log(1.0 - x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * detail::beta_cf(a, b, x) / a;
  }
  return 1.0 - front * detail::beta_cf(b, a, 1.0 - x) / b;
}

/// CDF of the F distribution with df (d1, d2).
inline double f_cdf(double x, double d1, double d2) {
  if (x <= 0.0) return 0.0;
  return incomplete_beta(d1 / 2.0, d2 / 2.0, d1 * x / (d1 * x + d2));
}

/// Upper-alpha quantile of F(k-1, (k-1)(M-1)), found by bracketed bisection.
inline double f_critical(std::size_t k, std::size_t m, double alpha) {
  if (k < 2 || m < 2) throw std::invalid_argument("need k >= 2 and M >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
  const double d1 = static_cast<double>(k - 1);
  const double d2 = static_cast<double>((k - 1) * (m - 1));
  const double target = 1.0 - alpha;
  double lo = 0.0;
  double hi = 1.0;
  while (f_cdf(hi, d1, d2) < target) {
    hi *= 2.0;
    if (hi > 1e12) break;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f_cdf(mid, d1, d2) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-10 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Nemenyi test

/// Studentized-range q at alpha = 0.05 divided by sqrt(2), for k = 2..10.
inline double nemenyi_q05(std::size_t k) {
  static constexpr double kTable[] = {1.960, 2.343, 2.569, 2.728, 2.850,
                                      2.949, 3.031, 3.102, 3.164};
  if (k < 2 || k > 10) {
    throw std::invalid_argument("Nemenyi q table covers k = 2..10");
  }
  return kTable[k - 2];
}

/// CD = q_alpha sqrt(k(k+1)/(6M)).
inline double nemenyi_cd(std::size_t k, std::size_t m, double alpha = 0.05) {
  if (m < 2) throw std::invalid_argument("need M >= 2");
  if (std::abs(alpha - 0.05) > 1e-12) {
    throw std::invalid_argument("only alpha = 0.05 constants are embedded");
  }
  const double kd = static_cast<double>(k);
  return nemenyi_q05(k) * std::sqrt(kd * (kd + 1.0) / (6.0 * static_cast<double>(m)));
}

/// Entry (i, j) is true iff |R_i - R_j| >= CD.
inline std::vector<std::vector<bool>> pairwise_significance(const RankTable& rt, double cd) {
  const std::size_t k = rt.algorithms;
  std::vector<std::vector<bool>> sig(k, std::vector<bool>(k, false));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) sig[i][j] = std::abs(rt.average_ranks[i] - rt.average_ranks[j]) >= cd;
    }
  }
  return sig;
}

/// Full comparison: ranks, Friedman statistic vs. the F critical value, and
/// the Nemenyi pairwise matrix.
struct Comparison {
  RankTable table;
  FriedmanResult friedman;
  double tau_critical = 0.0;
  bool reject_null = false;
  double cd = 0.0;
  std::vector<std::vector<bool>> pairwise;
};

inline Comparison compare(const std::vector<std::vector<Cell>>& values, Direction direction,
                          double alpha = 0.05) {
  Comparison out;
  out.table = rank_rows(values, direction);
  out.friedman = friedman_tau(out.table);
  out.tau_critical = f_critical(out.table.algorithms, out.table.problems, alpha);
  out.reject_null = out.friedman.infinite || out.friedman.tau_f > out.tau_critical;
  out.cd = nemenyi_cd(out.table.algorithms, out.table.problems, alpha);
  out.pairwise = pairwise_significance(out.table, out.cd);
  return out;
}

}  // namespace qswarm::stats
