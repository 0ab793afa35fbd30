#pragma once

// Point streams over [0,1)^D: pseudo-random and low-discrepancy generators,
// finite point sets with file I/O, and a uniformity diagnostic.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qswarm/rng.hpp"

namespace qswarm::seq {

// ---------------------------------------------------------------------------
// prime helpers

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t f = 5; f * f <= n; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

inline std::uint64_t next_prime_at_least(std::uint64_t n) {
  if (n < 2) return 2;
  while (!is_prime(n)) ++n;
  return n;
}

/// First `count` primes (2, 3, 5, ...).
inline std::vector<std::uint32_t> first_primes(std::size_t count) {
  std::vector<std::uint32_t> primes;
  primes.reserve(count);
  std::uint64_t candidate = 2;
  while (primes.size() < count) {
    candidate = next_prime_at_least(candidate);
    primes.push_back(static_cast<std::uint32_t>(candidate));
    ++candidate;
  }
  return primes;
}

/// Fractional part in [0, 1); negative inputs wrap upward.
inline double fract(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f -= 1.0;  // rounding at the upper edge wraps to 0
  return f;
}

// ---------------------------------------------------------------------------
// streams

/// Stateful source of D-dimensional points in [0,1)^D, consumed one point at
/// a time. Resetting and re-consuming replays the identical sequence. Streams
/// are single-owner: movable across contexts, not concurrently shareable.
class PointStream {
 public:
  virtual ~PointStream() = default;

  std::size_t dimension() const noexcept { return dim_; }

  /// Index of the next point to be emitted.
  std::uint64_t cursor() const noexcept { return cursor_; }

  void next(std::span<double> out) {
    if (out.size() != dim_) {
      throw std::invalid_argument("point buffer size does not match stream dimension");
    }
    generate(out);
    ++cursor_;
  }

  std::vector<double> next() {
    std::vector<double> p(dim_);
    next(std::span<double>(p));
    return p;
  }

  void reset() {
    cursor_ = 0;
    on_reset();
  }

  virtual std::string describe() const = 0;

 protected:
  explicit PointStream(std::size_t dim) : dim_(dim) {
    if (dim == 0) throw std::invalid_argument("stream dimension must be positive");
  }

  /// Produce the point at the current cursor.
  virtual void generate(std::span<double> out) = 0;
  virtual void on_reset() {}

  std::size_t dim_;
  std::uint64_t cursor_ = 0;
};

/// Seeded uniform pseudo-random stream.
class RandomStream final : public PointStream {
 public:
  RandomStream(std::size_t dim, std::uint64_t seed)
      : PointStream(dim), seed_(seed), eng_(seed) {}

  std::string describe() const override {
    return "random(seed=" + std::to_string(seed_) + ")";
  }

 private:
  void generate(std::span<double> out) override {
    for (auto& c : out) c = eng_.uniform01();
  }
  void on_reset() override { eng_ = rng::Engine(seed_); }

  std::uint64_t seed_;
  rng::Engine eng_;
};

/// Generator vector gamma_j = frac(2 cos(2 pi j / p)), j = 1..D, for a prime
/// modulus p >= 2D+3.
inline std::vector<double> hua_wang_generator(std::size_t dim, std::uint64_t prime) {
  if (!is_prime(prime)) {
    throw std::invalid_argument("hua-wang modulus must be prime, got " + std::to_string(prime));
  }
  if (prime < 2 * dim + 3) {
    throw std::invalid_argument("hua-wang modulus must satisfy p >= 2D+3");
  }
  std::vector<double> gamma(dim);
  for (std::size_t j = 1; j <= dim; ++j) {
    gamma[j - 1] = fract(2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                                        static_cast<double>(prime)));
  }
  return gamma;
}

/// Kronecker-type stream: point i is frac(i * gamma), i starting at 1.
class HuaWangStream final : public PointStream {
 public:
  HuaWangStream(std::size_t dim, std::uint64_t prime)
      : PointStream(dim), prime_(prime), gamma_(hua_wang_generator(dim, prime)) {}

  explicit HuaWangStream(std::size_t dim)
      : HuaWangStream(dim, default_prime(dim)) {}

  /// Smallest admissible prime for the dimension.
  static std::uint64_t default_prime(std::size_t dim) {
    return next_prime_at_least(2 * dim + 3);
  }

  const std::vector<double>& generator() const noexcept { return gamma_; }

  std::string describe() const override {
    return "huawang(p=" + std::to_string(prime_) + ")";
  }

 private:
  void generate(std::span<double> out) override {
    const double index = static_cast<double>(cursor_ + 1);
    for (std::size_t d = 0; d < dim_; ++d) out[d] = fract(index * gamma_[d]);
  }

  std::uint64_t prime_;
  std::vector<double> gamma_;
};

/// Generalized Halton stream over the first D prime bases, starting at index
/// 1. An optional per-base digit permutation is applied to every digit of the
/// expansion up to the highest nonzero digit; tables are used verbatim (no
/// fixed-point requirement at 0).
class HaltonStream final : public PointStream {
 public:
  explicit HaltonStream(std::size_t dim) : HaltonStream(dim, {}) {}

  HaltonStream(std::size_t dim, std::vector<std::vector<std::uint32_t>> permutations)
      : PointStream(dim), bases_(first_primes(dim)), perms_(std::move(permutations)) {
    if (!perms_.empty()) {
      if (perms_.size() < dim) {
        throw std::invalid_argument("need one permutation table per base (got " +
                                    std::to_string(perms_.size()) + ", need " +
                                    std::to_string(dim) + ")");
      }
      perms_.resize(dim);  // extra tables beyond D are ignored
      for (std::size_t j = 0; j < dim; ++j) validate_permutation(perms_[j], bases_[j]);
    }
  }

  const std::vector<std::uint32_t>& bases() const noexcept { return bases_; }
  bool permuted() const noexcept { return !perms_.empty(); }

  std::string describe() const override {
    return permuted() ? "halton(permuted)" : "halton";
  }

  /// Radical inverse of `index` in `base`, digits optionally permuted.
  static double radical_inverse(std::uint64_t index, std::uint32_t base,
                                const std::vector<std::uint32_t>* perm = nullptr) {
    double value = 0.0;
    double scale = 1.0 / static_cast<double>(base);
    while (index > 0) {
      std::uint32_t digit = static_cast<std::uint32_t>(index % base);
      if (perm) digit = (*perm)[digit];
      value += static_cast<double>(digit) * scale;
      index /= base;
      scale /= static_cast<double>(base);
    }
    return value;
  }

 private:
  static void validate_permutation(const std::vector<std::uint32_t>& table,
                                   std::uint32_t base) {
    if (table.size() != base) {
      throw std::invalid_argument("permutation table length " + std::to_string(table.size()) +
                                  " does not match base " + std::to_string(base));
    }
    std::vector<bool> seen(base, false);
    for (std::uint32_t v : table) {
      if (v >= base || seen[v]) {
        throw std::invalid_argument("table is not a permutation of 0.." +
                                    std::to_string(base - 1));
      }
      seen[v] = true;
    }
  }

  void generate(std::span<double> out) override {
    const std::uint64_t index = cursor_ + 1;  // index 0 is the all-zero point; skip it
    for (std::size_t j = 0; j < dim_; ++j) {
      out[j] = radical_inverse(index, bases_[j], perms_.empty() ? nullptr : &perms_[j]);
    }
  }

  std::vector<std::uint32_t> bases_;
  std::vector<std::vector<std::uint32_t>> perms_;
};

// ---------------------------------------------------------------------------
// point sets

/// Ordered finite set of points in [0,1)^D.
struct PointSet {
  std::size_t dim = 0;
  std::vector<double> data;  // row-major, size() * dim
  std::string provenance;

  std::size_t size() const noexcept { return dim == 0 ? 0 : data.size() / dim; }

  std::span<const double> point(std::size_t i) const {
    return {data.data() + i * dim, dim};
  }

  void append(std::span<const double> p) {
    if (dim == 0) dim = p.size();
    if (p.size() != dim) throw std::invalid_argument("point dimension mismatch");
    for (double c : p) {
      if (!(c >= 0.0 && c < 1.0)) {
        throw std::invalid_argument("coordinate outside [0,1): " + std::to_string(c));
      }
    }
    data.insert(data.end(), p.begin(), p.end());
  }
};

enum class WrapPolicy { Wrap, Error };

/// Streams a finite point set; on exhaustion either wraps (cursor modulo N,
/// with a one-time warning) or raises, per policy.
class PointSetStream final : public PointStream {
 public:
  explicit PointSetStream(PointSet ps, WrapPolicy policy = WrapPolicy::Wrap)
      : PointStream(ps.dim), set_(std::move(ps)), policy_(policy) {
    if (set_.size() == 0) throw std::invalid_argument("point set is empty");
  }

  const PointSet& point_set() const noexcept { return set_; }

  std::string describe() const override {
    return "pointset(" + set_.provenance + ", n=" + std::to_string(set_.size()) + ")";
  }

 private:
  void generate(std::span<double> out) override {
    const std::size_t n = set_.size();
    if (cursor_ >= n) {
      if (policy_ == WrapPolicy::Error) {
        throw std::runtime_error("point set '" + set_.provenance + "' exhausted after " +
                                 std::to_string(n) + " points");
      }
      if (!warned_) {
        std::cerr << "qswarm: point set '" << set_.provenance << "' exhausted after " << n
                  << " points; wrapping\n";
        warned_ = true;
      }
    }
    auto p = set_.point(cursor_ % n);
    std::copy(p.begin(), p.end(), out.begin());
  }

  PointSet set_;
  WrapPolicy policy_;
  bool warned_ = false;
};

// ---------------------------------------------------------------------------
// orthogonal arrays

struct OaParams {
  std::uint32_t levels = 0;    // q, prime
  std::uint32_t strength = 0;  // J
  std::uint64_t rows() const {
    std::uint64_t r = 1;
    for (std::uint32_t k = 0; k < strength; ++k) r *= levels;
    return r;
  }
  std::uint64_t columns() const { return (rows() - 1) / (levels - 1); }
};

/// Picks (q, J) for an OA with at least `n_points` rows and `dim` columns:
/// the smallest admissible array q^J over prime q, ties to the smaller prime.
inline OaParams choose_oa_params(std::size_t n_points, std::size_t dim) {
  if (n_points == 0 || dim == 0) {
    throw std::invalid_argument("orthogonal array needs N >= 1 and D >= 1");
  }
  std::optional<OaParams> best;
  // q = next prime >= max(N, D) with J = 2 always qualifies, so the search is bounded.
  const std::uint64_t q_cap = next_prime_at_least(std::max<std::uint64_t>({n_points, dim, 2}));
  for (std::uint64_t q = 2; q <= q_cap; q = next_prime_at_least(q + 1)) {
    if (best && q >= best->rows()) break;  // rows >= q, so no further prime can win
    std::uint64_t rows = q;
    std::uint32_t j = 1;
    while (rows < n_points || (rows - 1) / (q - 1) < dim) {
      rows *= q;
      ++j;
    }
    if (!best || rows < best->rows() ||
        (rows == best->rows() && q < best->levels)) {
      best = OaParams{static_cast<std::uint32_t>(q), j};
    }
  }
  return *best;
}

/// Builds the L_{q^J}(q^m) orthogonal array (levels 0..q-1), keeping the
/// first `columns` columns. Basic column k sits at index (q^{k-1}-1)/(q-1);
/// the remaining columns are linear combinations of earlier ones mod q.
inline std::vector<std::uint8_t> build_orthogonal_array(const OaParams& params,
                                                        std::size_t columns) {
  const std::uint64_t q = params.levels;
  const std::uint64_t rows = params.rows();
  if (columns > params.columns()) {
    throw std::invalid_argument("requested more columns than the array provides");
  }
  std::vector<std::uint8_t> a(rows * columns, 0);
  auto at = [&](std::uint64_t r, std::uint64_t c) -> std::uint8_t& {
    return a[r * columns + c];
  };
  // basic columns
  std::uint64_t power = params.rows();
  std::uint64_t col_index = 0;  // (q^{k-1}-1)/(q-1) for k = 1..J
  for (std::uint32_t k = 1; k <= params.strength; ++k) {
    power /= q;  // q^{J-k}
    if (col_index < columns) {
      for (std::uint64_t r = 0; r < rows; ++r) {
        at(r, col_index) = static_cast<std::uint8_t>((r / power) % q);
      }
    }
    // non-basic columns derived from this basic column
    if (k >= 2) {
      for (std::uint64_t s = 0; s < col_index; ++s) {
        for (std::uint64_t t = 1; t < q; ++t) {
          const std::uint64_t c = col_index + (s * (q - 1)) + t;
          if (c < columns) {
            for (std::uint64_t r = 0; r < rows; ++r) {
              at(r, c) = static_cast<std::uint8_t>((at(r, s) * t + at(r, col_index)) % q);
            }
          }
        }
      }
    }
    col_index = col_index * q + 1;  // next basic column position
  }
  return a;
}

/// Orthogonal-array point set: first D columns and first N rows, level l
/// (1-based) mapped to (l - 0.5)/q.
inline PointSet oa_point_set(std::size_t n_points, std::size_t dim,
                             std::optional<std::uint32_t> levels = std::nullopt,
                             std::optional<std::uint32_t> strength = std::nullopt) {
  OaParams params;
  if (levels && strength) {
    params = {*levels, *strength};
    if (!is_prime(params.levels)) throw std::invalid_argument("OA level count must be prime");
    if (params.strength == 0) throw std::invalid_argument("OA strength must be >= 1");
    if (params.rows() < n_points || params.columns() < dim) {
      throw std::invalid_argument("forced OA parameters too small for N and D");
    }
  } else if (levels) {
    if (!is_prime(*levels)) throw std::invalid_argument("OA level count must be prime");
    std::uint64_t rows = *levels;
    std::uint32_t j = 1;
    while (rows < n_points || (rows - 1) / (*levels - 1) < dim) {
      rows *= *levels;
      ++j;
    }
    params = {*levels, j};
  } else {
    params = choose_oa_params(n_points, dim);
  }
  const auto table = build_orthogonal_array(params, dim);
  PointSet ps;
  ps.dim = dim;
  ps.provenance = "oa(q=" + std::to_string(params.levels) +
                  ",J=" + std::to_string(params.strength) + ")";
  ps.data.reserve(n_points * dim);
  const double q = static_cast<double>(params.levels);
  for (std::size_t r = 0; r < n_points; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      ps.data.push_back((static_cast<double>(table[r * dim + c]) + 0.5) / q);
    }
  }
  return ps;
}

// ---------------------------------------------------------------------------
// file formats

/// Point-set text file: one point per line, whitespace-separated coordinates
/// in [0,1); lines starting with '#' are ignored.
inline PointSet load_point_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open point-set file: " + path);
  PointSet ps;
  ps.provenance = path;
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    row.clear();
    double v = 0.0;
    while (ss >> v) row.push_back(v);
    if (!ss.eof()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed coordinate");
    }
    if (ps.dim != 0 && row.size() != ps.dim) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": ragged row (expected " +
                               std::to_string(ps.dim) + " coordinates)");
    }
    for (double c : row) {
      if (!(c >= 0.0 && c < 1.0)) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": coordinate outside [0,1)");
      }
    }
    ps.append(row);
  }
  if (ps.size() == 0) throw std::runtime_error(path + ": empty point set");
  return ps;
}

/// Permutation file: line j holds the digit permutation for the j-th prime
/// base as space-separated integers 0..base-1. Blank and '#' lines skipped.
inline std::vector<std::vector<std::uint32_t>> load_permutations(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open permutation file: " + path);
  std::vector<std::vector<std::uint32_t>> tables;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ss(line);
    std::vector<std::uint32_t> table;
    long long v = 0;
    while (ss >> v) {
      if (v < 0) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": negative entry");
      }
      table.push_back(static_cast<std::uint32_t>(v));
    }
    if (!ss.eof()) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": malformed entry");
    }
    if (table.empty()) continue;
    tables.push_back(std::move(table));
  }
  if (tables.empty()) throw std::runtime_error(path + ": no permutation tables");
  return tables;
}

// ---------------------------------------------------------------------------
// diagnostics

/// Centered L2 discrepancy (closed-form double sum). Lower means the set
/// covers [0,1)^D more uniformly.
inline double centered_l2_discrepancy(const PointSet& ps) {
  const std::size_t n = ps.size();
  const std::size_t dim = ps.dim;
  if (n == 0) throw std::invalid_argument("point set is empty");
  double sum_single = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = ps.point(i);
    double prod = 1.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double c = std::abs(xi[d] - 0.5);
      prod *= 1.0 + 0.5 * c - 0.5 * c * c;
    }
    sum_single += prod;
  }
  double sum_pair = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = ps.point(i);
    for (std::size_t j = 0; j < n; ++j) {
      auto xj = ps.point(j);
      double prod = 1.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double ci = std::abs(xi[d] - 0.5);
        const double cj = std::abs(xj[d] - 0.5);
        prod *= 1.0 + 0.5 * ci + 0.5 * cj - 0.5 * std::abs(xi[d] - xj[d]);
      }
      sum_pair += prod;
    }
  }
  const double nd = static_cast<double>(n);
  const double value = std::pow(13.0 / 12.0, static_cast<double>(dim)) -
                       2.0 / nd * sum_single + sum_pair / (nd * nd);
  return std::sqrt(std::max(0.0, value));
}

/// Collects the next `count` points of a stream into a set.
inline PointSet take(PointStream& stream, std::size_t count) {
  PointSet ps;
  ps.dim = stream.dimension();
  ps.provenance = stream.describe();
  ps.data.reserve(count * ps.dim);
  std::vector<double> p(ps.dim);
  for (std::size_t i = 0; i < count; ++i) {
    stream.next(std::span<double>(p));
    ps.data.insert(ps.data.end(), p.begin(), p.end());
  }
  return ps;
}

// ---------------------------------------------------------------------------
// stream configuration

/// Declarative stream description, the unit of configuration for experiment
/// wiring and the CLI.
struct StreamSpec {
  enum class Kind { Random, HuaWang, Halton, OrthogonalArray, File };

  Kind kind = Kind::Random;
  std::uint64_t seed = 0;                      // Random: extra salt on top of run seeds
  std::optional<std::uint64_t> prime;          // HuaWang
  std::string permutation_file;                // Halton, optional
  std::string path;                            // File
  WrapPolicy wrap = WrapPolicy::Wrap;          // File
  std::optional<std::uint64_t> oa_points;      // OrthogonalArray row count
  std::optional<std::uint32_t> oa_levels;      // q
  std::optional<std::uint32_t> oa_strength;    // J

  static constexpr std::uint64_t kDefaultOaPoints = 1024;

  bool is_random() const noexcept { return kind == Kind::Random; }

  std::string label() const {
    switch (kind) {
      case Kind::Random: return "random";
      case Kind::HuaWang: return "huawang";
      case Kind::Halton: return permutation_file.empty() ? "halton" : "halton-permuted";
      case Kind::OrthogonalArray: return "oa";
      case Kind::File: return "file";
    }
    return "?";
  }
};

/// Instantiates a stream from its spec. `seed` feeds Random streams only
/// (combined with the spec's own salt); deterministic kinds ignore it.
inline std::unique_ptr<PointStream> make_stream(const StreamSpec& spec, std::size_t dim,
                                                std::uint64_t seed) {
  switch (spec.kind) {
    case StreamSpec::Kind::Random:
      return std::make_unique<RandomStream>(dim, rng::mix(seed, spec.seed));
    case StreamSpec::Kind::HuaWang:
      return std::make_unique<HuaWangStream>(
          dim, spec.prime.value_or(HuaWangStream::default_prime(dim)));
    case StreamSpec::Kind::Halton:
      if (spec.permutation_file.empty()) return std::make_unique<HaltonStream>(dim);
      return std::make_unique<HaltonStream>(dim, load_permutations(spec.permutation_file));
    case StreamSpec::Kind::OrthogonalArray: {
      const std::uint64_t rows = spec.oa_points.value_or(StreamSpec::kDefaultOaPoints);
      return std::make_unique<PointSetStream>(
          oa_point_set(rows, dim, spec.oa_levels, spec.oa_strength), spec.wrap);
    }
    case StreamSpec::Kind::File:
      return std::make_unique<PointSetStream>(load_point_set(spec.path), spec.wrap);
  }
  throw std::logic_error("unreachable stream kind");
}

}  // namespace qswarm::seq
