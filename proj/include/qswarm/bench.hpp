#pragma once

// Shifted/rotated benchmark objectives: base functions with minimum 0 at the
// origin, seeded shift/rotation transforms, hybrid and composition
// combinators, and the 17-function standard suite.

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qswarm/rng.hpp"

namespace qswarm::bench {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// dense square matrix (rotations)

struct Matrix {
  std::size_t n = 0;
  std::vector<double> a;  // row-major

  static Matrix identity(std::size_t n) {
    Matrix m;
    m.n = n;
    m.a.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) m.a[i * n + i] = 1.0;
    return m;
  }

  double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }

  /// out = M x
  void apply(std::span<const double> x, std::span<double> out) const {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < n; ++j) acc += a[i * n + j] * x[j];
      out[i] = acc;
    }
  }
};

// ---------------------------------------------------------------------------
// base functions
//
// Every base is total on R^D, attains its minimum 0 at the origin of its own
// (already shifted/rotated/shrunk) variable, and is nonnegative.

enum class Base {
  Zakharov,
  Rosenbrock,
  Rastrigin,
  SchafferF6,       // expanded Schaffer F6
  LunacekBiRastrigin,
  NonContRastrigin,
  Levy,
  Ackley,
  Griewank,
  ModSchwefel,
  BentCigar,
  HGBat,
  Elliptic,         // high-conditioned elliptic
  Katsuura,
  GriewankRosenbrock,
};

inline const char* base_name(Base b) {
  switch (b) {
    case Base::Zakharov: return "zakharov";
    case Base::Rosenbrock: return "rosenbrock";
    case Base::Rastrigin: return "rastrigin";
    case Base::SchafferF6: return "schaffer-f6";
    case Base::LunacekBiRastrigin: return "lunacek-bi-rastrigin";
    case Base::NonContRastrigin: return "noncont-rastrigin";
    case Base::Levy: return "levy";
    case Base::Ackley: return "ackley";
    case Base::Griewank: return "griewank";
    case Base::ModSchwefel: return "mod-schwefel";
    case Base::BentCigar: return "bent-cigar";
    case Base::HGBat: return "hgbat";
    case Base::Elliptic: return "elliptic";
    case Base::Katsuura: return "katsuura";
    case Base::GriewankRosenbrock: return "griewank-rosenbrock";
  }
  return "?";
}

/// Domain shrink applied to the transformed variable before the base formula,
/// so each base sees its customary working range when x spans [-100,100].
inline double base_shrink(Base b) {
  switch (b) {
    case Base::Rosenbrock: return 2.048 / 100.0;
    case Base::Rastrigin: return 5.12 / 100.0;
    case Base::NonContRastrigin: return 5.12 / 100.0;
    case Base::LunacekBiRastrigin: return 10.0 / 100.0;
    case Base::Griewank: return 600.0 / 100.0;
    case Base::ModSchwefel: return 1000.0 / 100.0;
    case Base::HGBat: return 5.0 / 100.0;
    case Base::Katsuura: return 5.0 / 100.0;
    case Base::GriewankRosenbrock: return 5.0 / 100.0;
    default: return 1.0;
  }
}

namespace detail {

/// zakharov: sum z_i^2 + (sum 0.5(i+1) z_i)^2 + (sum 0.5(i+1) z_i)^4;
/// zakharov((1,0)) = 1.3125.
inline double zakharov(std::span<const double> z) {
  double sum1 = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum1 += z[i] * z[i];
    sum2 += 0.5 * static_cast<double>(i + 1) * z[i];
  }
  return sum1 + sum2 * sum2 + sum2 * sum2 * sum2 * sum2;
}

/// rosenbrock evaluated at z+1 so the minimum sits at z = 0;
/// rosenbrock((0,0)) = 0, rosenbrock((1,0)) = 403.
inline double rosenbrock(std::span<const double> z) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i] + 1.0;
    const double b = z[i + 1] + 1.0;
    const double t1 = a * a - b;
    const double t2 = a - 1.0;
    total += 100.0 * t1 * t1 + t2 * t2;
  }
  return total;
}

/// rastrigin: sum (z^2 - 10 cos(2 pi z) + 10); rastrigin((1,1)) = 2.
inline double rastrigin(std::span<const double> z) {
  double total = 0.0;
  for (double v : z) total += v * v - 10.0 * std::cos(2.0 * kPi * v) + 10.0;
  return total;
}

inline double schaffer_pair(double x, double y) {
  const double ss = x * x + y * y;
  const double s = std::sin(std::sqrt(ss));
  const double den = 1.0 + 0.001 * ss;
  return 0.5 + (s * s - 0.5) / (den * den);
}

/// expanded Schaffer F6 over consecutive pairs with wraparound;
/// each pair term lies in [0, ~1], zero at the origin.
inline double schaffer_f6(std::span<const double> z) {
  const std::size_t n = z.size();
  if (n == 1) return schaffer_pair(z[0], z[0]);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) total += schaffer_pair(z[i], z[i + 1]);
  total += schaffer_pair(z[n - 1], z[0]);
  return total;
}

/// Lunacek bi-Rastrigin in the transformed frame: two quadratic basins (the
/// second scaled and offset) plus a Rastrigin ripple; zero at the origin.
inline double lunacek_bi_rastrigin(std::span<const double> z) {
  const double n = static_cast<double>(z.size());
  const double mu0 = 2.5;
  const double d = 1.0;
  const double s = 1.0 - 1.0 / (2.0 * std::sqrt(n + 20.0) - 8.2);
  const double mu1 = -std::sqrt((mu0 * mu0 - d) / s);
  double sum1 = 0.0, sum2 = 0.0, sumcos = 0.0;
  for (double v : z) {
    const double t = 2.0 * v;
    sum1 += t * t;
    const double u = t + mu0 - mu1;
    sum2 += u * u;
    sumcos += std::cos(2.0 * kPi * t);
  }
  sum2 = d * n + s * sum2;
  return std::min(sum1, sum2) + 10.0 * (n - sumcos);
}

/// non-continuous rastrigin: coordinates beyond |z| > 0.5 snap to the nearest
/// half-integer grid before the rastrigin formula.
inline double noncont_rastrigin(std::span<const double> z) {
  double total = 0.0;
  for (double v : z) {
    const double y = std::abs(v) > 0.5 ? std::floor(2.0 * v + 0.5) / 2.0 : v;
    total += y * y - 10.0 * std::cos(2.0 * kPi * y) + 10.0;
  }
  return total;
}

/// levy with w = 1 + z/4 (minimum exactly at z = 0).
inline double levy(std::span<const double> z) {
  const std::size_t n = z.size();
  auto w = [&](std::size_t i) { return 1.0 + z[i] / 4.0; };
  const double s1 = std::sin(kPi * w(0));
  double total = s1 * s1;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double wi = w(i);
    const double sv = std::sin(kPi * wi + 1.0);
    total += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * sv * sv);
  }
  const double wn = w(n - 1);
  const double sn = std::sin(2.0 * kPi * wn);
  total += (wn - 1.0) * (wn - 1.0) * (1.0 + sn * sn);
  return total;
}

/// ackley: 20 + e - 20 exp(-0.2 sqrt(mean z^2)) - exp(mean cos 2 pi z).
inline double ackley(std::span<const double> z) {
  const double n = static_cast<double>(z.size());
  double sum_sq = 0.0, sum_cos = 0.0;
  for (double v : z) {
    sum_sq += v * v;
    sum_cos += std::cos(2.0 * kPi * v);
  }
  return 20.0 + std::numbers::e - 20.0 * std::exp(-0.2 * std::sqrt(sum_sq / n)) -
         std::exp(sum_cos / n);
}

/// griewank: 1 + sum z^2/4000 - prod cos(z_i / sqrt(i+1)).
inline double griewank(std::span<const double> z) {
  double s = 0.0, p = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    s += z[i] * z[i];
    p *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return 1.0 + s / 4000.0 - p;
}

/// modified schwefel with out-of-range quadratic penalties; the tiny residual
/// at the origin is subtracted so the base is exactly zero there.
inline double mod_schwefel(std::span<const double> z) {
  const double n = static_cast<double>(z.size());
  constexpr double kOffset = 4.209687462275036e2;
  constexpr double kLevel = 4.189828872724338e2;
  static const double kResidual = kLevel - kOffset * std::sin(std::sqrt(kOffset));
  auto g = [&](double y) {
    if (std::abs(y) <= 500.0) return -y * std::sin(std::sqrt(std::abs(y)));
    if (y > 500.0) {
      const double m = 500.0 - std::fmod(y, 500.0);
      const double t = (y - 500.0) / 100.0;
      return -m * std::sin(std::sqrt(m)) + t * t / n;
    }
    const double m = 500.0 - std::fmod(-y, 500.0);
    const double t = (y + 500.0) / 100.0;
    return m * std::sin(std::sqrt(m)) + t * t / n;
  };
  double total = 0.0;
  for (double v : z) total += g(v + kOffset);
  return total + (kLevel - kResidual) * n;
}

/// bent cigar: z_1^2 + 1e6 sum_{i>1} z_i^2.
inline double bent_cigar(std::span<const double> z) {
  double total = z[0] * z[0];
  for (std::size_t i = 1; i < z.size(); ++i) total += 1e6 * z[i] * z[i];
  return total;
}

/// hgbat evaluated at z-1: |(sum y^2)^2 - (sum y)^2|^(1/2) + (0.5 sum y^2 + sum y)/D + 0.5.
inline double hgbat(std::span<const double> z) {
  const double n = static_cast<double>(z.size());
  double r2 = 0.0, sum = 0.0;
  for (double v : z) {
    const double y = v - 1.0;
    r2 += y * y;
    sum += y;
  }
  return std::sqrt(std::abs(r2 * r2 - sum * sum)) + (0.5 * r2 + sum) / n + 0.5;
}

/// high-conditioned elliptic: sum 10^(6 i/(D-1)) z_i^2.
inline double elliptic(std::span<const double> z) {
  const std::size_t n = z.size();
  if (n == 1) return z[0] * z[0];
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    total += std::pow(10.0, 6.0 * static_cast<double>(i) / static_cast<double>(n - 1)) *
             z[i] * z[i];
  }
  return total;
}

/// katsuura: (10/D^2) [prod (1 + (i+1) sum_{j=1..32} |2^j z - round|/2^j)^(10/D^1.2) - 1].
inline double katsuura(std::span<const double> z) {
  const double n = static_cast<double>(z.size());
  const double expo = 10.0 / std::pow(n, 1.2);
  double prod = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    double inner = 0.0;
    double p2 = 1.0;
    for (int j = 1; j <= 32; ++j) {
      p2 *= 2.0;
      const double t = p2 * z[i];
      inner += std::abs(t - std::floor(t + 0.5)) / p2;
    }
    prod *= std::pow(1.0 + static_cast<double>(i + 1) * inner, expo);
  }
  const double scale = 10.0 / (n * n);
  return prod * scale - scale;
}

/// griewank of rosenbrock over consecutive pairs (wraparound), at z+1.
inline double griewank_rosenbrock(std::span<const double> z) {
  const std::size_t n = z.size();
  auto term = [](double a, double b) {
    const double t1 = a * a - b;
    const double t2 = a - 1.0;
    const double r = 100.0 * t1 * t1 + t2 * t2;
    return r * r / 4000.0 - std::cos(r) + 1.0;
  };
  if (n == 1) return term(z[0] + 1.0, z[0] + 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) total += term(z[i] + 1.0, z[i + 1] + 1.0);
  total += term(z[n - 1] + 1.0, z[0] + 1.0);
  return total;
}

}  // namespace detail

inline double eval_base(Base b, std::span<const double> z) {
  switch (b) {
    case Base::Zakharov: return detail::zakharov(z);
    case Base::Rosenbrock: return detail::rosenbrock(z);
    case Base::Rastrigin: return detail::rastrigin(z);
    case Base::SchafferF6: return detail::schaffer_f6(z);
    case Base::LunacekBiRastrigin: return detail::lunacek_bi_rastrigin(z);
    case Base::NonContRastrigin: return detail::noncont_rastrigin(z);
    case Base::Levy: return detail::levy(z);
    case Base::Ackley: return detail::ackley(z);
    case Base::Griewank: return detail::griewank(z);
    case Base::ModSchwefel: return detail::mod_schwefel(z);
    case Base::BentCigar: return detail::bent_cigar(z);
    case Base::HGBat: return detail::hgbat(z);
    case Base::Elliptic: return detail::elliptic(z);
    case Base::Katsuura: return detail::katsuura(z);
    case Base::GriewankRosenbrock: return detail::griewank_rosenbrock(z);
  }
  throw std::logic_error("unreachable base");
}

// ---------------------------------------------------------------------------
// objective specs

struct SimpleSpec {
  Base base;
};

struct HybridSpec {
  std::vector<Base> bases;
  std::vector<double> proportions;       // sums to 1
  std::vector<std::size_t> permutation;  // dimension shuffle
  std::vector<std::size_t> block_sizes;  // derived; sums to D
};

struct CompositionComponent {
  Base base;
  std::vector<double> shift;
  Matrix rotation;
  double sigma = 1.0;
  double lambda = 1.0;
  double bias = 0.0;
};

struct CompositionSpec {
  std::vector<CompositionComponent> components;
};

/// One benchmark objective: f(x) = bias + combinator(base(s), R (x - shift)).
/// Immutable after construction; safe for concurrent evaluation.
struct ObjectiveSpec {
  std::string id;
  std::string name;
  std::size_t dim = 0;
  double bias = 0.0;  // Z*
  std::vector<double> lower, upper;
  std::vector<double> shift;  // global optimum location
  Matrix rotation;
  std::variant<SimpleSpec, HybridSpec, CompositionSpec> kind;

  double eval(std::span<const double> x) const;
};

namespace detail {

struct Scratch {
  std::vector<double> y, z, w;
};

inline Scratch& scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace detail

/// Distance-based composition weights, normalized to sum 1. x exactly at a
/// component's shift gives that component weight 1 and the others 0.
inline std::vector<double> composition_weights(const CompositionSpec& comp,
                                               std::span<const double> x) {
  const std::size_t k = comp.components.size();
  std::vector<double> w(k, 0.0);
  std::ptrdiff_t exact = -1;
  for (std::size_t c = 0; c < k; ++c) {
    double dist_sq = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double diff = x[d] - comp.components[c].shift[d];
      dist_sq += diff * diff;
    }
    if (dist_sq == 0.0) {
      exact = static_cast<std::ptrdiff_t>(c);
      break;
    }
    const double sigma = comp.components[c].sigma;
    w[c] = std::exp(-dist_sq / (2.0 * static_cast<double>(x.size()) * sigma * sigma)) /
           std::sqrt(dist_sq);
  }
  if (exact >= 0) {
    std::fill(w.begin(), w.end(), 0.0);
    w[static_cast<std::size_t>(exact)] = 1.0;
    return w;
  }
  double total = 0.0;
  for (double v : w) total += v;
  if (total == 0.0) {
    std::fill(w.begin(), w.end(), 1.0 / static_cast<double>(k));
    return w;
  }
  for (double& v : w) v /= total;
  return w;
}

inline double ObjectiveSpec::eval(std::span<const double> x) const {
  if (x.size() != dim) throw std::invalid_argument("objective dimension mismatch");
  auto& s = detail::scratch();
  s.y.resize(dim);
  s.z.resize(dim);

  if (const auto* simple = std::get_if<SimpleSpec>(&kind)) {
    const double shrink = base_shrink(simple->base);
    for (std::size_t d = 0; d < dim; ++d) s.y[d] = (x[d] - shift[d]) * shrink;
    rotation.apply(s.y, s.z);
    return bias + eval_base(simple->base, s.z);
  }

  if (const auto* hybrid = std::get_if<HybridSpec>(&kind)) {
    for (std::size_t d = 0; d < dim; ++d) s.y[d] = x[d] - shift[d];
    rotation.apply(s.y, s.z);
    s.w.resize(dim);
    for (std::size_t d = 0; d < dim; ++d) s.w[d] = s.z[hybrid->permutation[d]];
    double total = 0.0;
    std::size_t offset = 0;
    std::vector<double> block;
    for (std::size_t b = 0; b < hybrid->bases.size(); ++b) {
      const std::size_t len = hybrid->block_sizes[b];
      const double shrink = base_shrink(hybrid->bases[b]);
      block.assign(s.w.begin() + offset, s.w.begin() + offset + len);
      for (double& v : block) v *= shrink;
      total += eval_base(hybrid->bases[b], block);
      offset += len;
    }
    return bias + total;
  }

  const auto& comp = std::get<CompositionSpec>(kind);
  const auto weights = composition_weights(comp, x);
  double total = 0.0;
  for (std::size_t c = 0; c < comp.components.size(); ++c) {
    if (weights[c] == 0.0) continue;
    const auto& part = comp.components[c];
    const double shrink = base_shrink(part.base);
    for (std::size_t d = 0; d < dim; ++d) s.y[d] = (x[d] - part.shift[d]) * shrink;
    part.rotation.apply(s.y, s.z);
    const double g = eval_base(part.base, s.z);
    total += weights[c] * (part.lambda * g + part.bias);
  }
  return bias + total;
}

// ---------------------------------------------------------------------------
// seeded transforms

/// Random orthogonal matrix: Gram-Schmidt (two passes) over a seeded
/// standard-normal matrix, determinant normalized to +1.
inline Matrix random_rotation(rng::Engine& eng, std::size_t dim) {
  Matrix m;
  m.n = dim;
  m.a.resize(dim * dim);
  while (true) {
    for (auto& v : m.a) v = eng.normal();
    bool ok = true;
    // orthonormalize columns
    for (std::size_t j = 0; j < dim && ok; ++j) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          double dot = 0.0;
          for (std::size_t i = 0; i < dim; ++i) dot += m.at(i, j) * m.at(i, k);
          for (std::size_t i = 0; i < dim; ++i) m.at(i, j) -= dot * m.at(i, k);
        }
      }
      double norm = 0.0;
      for (std::size_t i = 0; i < dim; ++i) norm += m.at(i, j) * m.at(i, j);
      norm = std::sqrt(norm);
      if (norm < 1e-12) {
        ok = false;
        break;
      }
      for (std::size_t i = 0; i < dim; ++i) m.at(i, j) /= norm;
    }
    if (ok) break;  // re-draw on (measure-zero) degeneracy
  }
  // determinant sign via LU with partial pivoting
  Matrix lu = m;
  double det = 1.0;
  for (std::size_t c = 0; c < dim; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < dim; ++r) {
      if (std::abs(lu.at(r, c)) > std::abs(lu.at(pivot, c))) pivot = r;
    }
    if (pivot != c) {
      for (std::size_t j = 0; j < dim; ++j) std::swap(lu.a[pivot * dim + j], lu.a[c * dim + j]);
      det = -det;
    }
    det *= lu.at(c, c);
    if (lu.at(c, c) == 0.0) break;
    for (std::size_t r = c + 1; r < dim; ++r) {
      const double f = lu.at(r, c) / lu.at(c, c);
      for (std::size_t j = c; j < dim; ++j) lu.at(r, j) -= f * lu.at(c, j);
    }
  }
  if (det < 0.0) {
    for (std::size_t i = 0; i < dim; ++i) m.at(i, dim - 1) = -m.at(i, dim - 1);
  }
  return m;
}

struct Transform {
  std::vector<double> shift;
  Matrix rotation;
};

/// Seeded shift (uniform over the middle 80% of the box) and rotation.
/// Identical (seed, D) always reproduces identical output.
inline Transform make_transform(std::uint64_t seed, std::span<const double> lower,
                                std::span<const double> upper) {
  const std::size_t dim = lower.size();
  rng::Engine eng(rng::mix(seed, 0x7261'6E64ull));
  Transform t;
  t.shift.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) {
    const double range = upper[d] - lower[d];
    t.shift[d] = lower[d] + range * (0.1 + 0.8 * eng.uniform01());
  }
  t.rotation = random_rotation(eng, dim);
  return t;
}

/// Transform-data file: a '# shift' line followed by one row, then a
/// '# rotation' line followed by D rows.
inline Transform load_transform(const std::string& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open transform file: " + path);
  Transform t;
  std::string line;
  enum class Section { None, Shift, Rotation } section = Section::None;
  std::vector<std::vector<double>> rot_rows;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (line.find("shift") != std::string::npos) {
        section = Section::Shift;
      } else if (line.find("rotation") != std::string::npos) {
        section = Section::Rotation;
      }
      continue;
    }
    std::istringstream ss(line);
    std::vector<double> row;
    double v = 0.0;
    while (ss >> v) row.push_back(v);
    if (!ss.eof()) throw std::runtime_error(path + ": malformed transform row");
    if (section == Section::Shift) {
      t.shift = row;
    } else if (section == Section::Rotation) {
      rot_rows.push_back(row);
    } else {
      throw std::runtime_error(path + ": data before a '# shift' or '# rotation' header");
    }
  }
  if (t.shift.size() != dim) throw std::runtime_error(path + ": shift length != D");
  if (rot_rows.size() != dim) throw std::runtime_error(path + ": rotation must have D rows");
  t.rotation.n = dim;
  t.rotation.a.reserve(dim * dim);
  for (const auto& row : rot_rows) {
    if (row.size() != dim) throw std::runtime_error(path + ": rotation row length != D");
    t.rotation.a.insert(t.rotation.a.end(), row.begin(), row.end());
  }
  return t;
}

// ---------------------------------------------------------------------------
// standard suite

namespace detail {

inline std::vector<std::size_t> hybrid_blocks(std::span<const double> proportions,
                                              std::size_t dim) {
  const std::size_t k = proportions.size();
  std::vector<std::size_t> sizes(k, 0);
  std::size_t used = 0;
  for (std::size_t b = 0; b + 1 < k; ++b) {
    sizes[b] = static_cast<std::size_t>(
        std::ceil(proportions[b] * static_cast<double>(dim)));
    used += sizes[b];
  }
  if (used >= dim) {
    throw std::invalid_argument("dimension too small to partition a hybrid spec");
  }
  sizes[k - 1] = dim - used;
  return sizes;
}

inline std::vector<std::size_t> seeded_permutation(std::uint64_t seed, std::size_t dim) {
  std::vector<std::size_t> perm(dim);
  for (std::size_t d = 0; d < dim; ++d) perm[d] = d;
  rng::Engine eng(rng::mix(seed, 0x7065'726Dull));
  for (std::size_t d = dim - 1; d > 0; --d) {
    const std::size_t j = static_cast<std::size_t>(eng.bounded(d + 1));
    std::swap(perm[d], perm[j]);
  }
  return perm;
}

struct SuiteEntry {
  const char* id;
  const char* name;
  double bias;
};

}  // namespace detail

/// Builds one function of the standard suite (index 1..17). All functions
/// share the box [-100, 100]^D; transforms derive from (seed, index) so a
/// function is identical whether built alone or as part of the full suite.
inline ObjectiveSpec make_suite_function(std::size_t index, std::size_t dim,
                                         std::uint64_t seed,
                                         const std::optional<Transform>& injected = std::nullopt) {
  if (index < 1 || index > 17) throw std::invalid_argument("suite index must be 1..17");
  if (dim < 2) throw std::invalid_argument("suite needs D >= 2");

  static constexpr std::array<detail::SuiteEntry, 17> kEntries = {{
      {"F1", "shifted-rotated zakharov", 300.0},
      {"F2", "shifted-rotated rosenbrock", 400.0},
      {"F3", "shifted-rotated rastrigin", 500.0},
      {"F4", "shifted-rotated expanded schaffer f6", 600.0},
      {"F5", "shifted-rotated lunacek bi-rastrigin", 700.0},
      {"F6", "shifted-rotated noncontinuous rastrigin", 800.0},
      {"F7", "shifted-rotated levy", 900.0},
      {"F8", "hybrid: zakharov/rosenbrock/rastrigin", 1100.0},
      {"F9", "hybrid: elliptic/ackley/schaffer/rastrigin", 1400.0},
      {"F10", "hybrid: bent-cigar/hgbat/rastrigin/rosenbrock", 1500.0},
      {"F11", "hybrid: schaffer/hgbat/rosenbrock/mod-schwefel", 1600.0},
      {"F12", "hybrid: katsuura/ackley/griewank-rosenbrock/mod-schwefel/rastrigin", 1700.0},
      {"F13", "hybrid: bent-cigar/griewank-rosenbrock/rastrigin/schaffer", 1900.0},
      {"F14", "hybrid: katsuura/ackley/rastrigin/schaffer/mod-schwefel", 2000.0},
      {"F15", "composition: rosenbrock/elliptic/rastrigin", 2100.0},
      {"F16", "composition: griewank/rastrigin/mod-schwefel", 2200.0},
      {"F17", "composition: ackley/griewank/rastrigin/elliptic", 2400.0},
  }};
  const auto& entry = kEntries[index - 1];

  ObjectiveSpec spec;
  spec.id = entry.id;
  spec.name = entry.name;
  spec.dim = dim;
  spec.bias = entry.bias;
  spec.lower.assign(dim, -100.0);
  spec.upper.assign(dim, 100.0);

  const std::uint64_t fn_seed = rng::mix(seed, index);
  auto transform = injected ? *injected
                            : make_transform(fn_seed, spec.lower, spec.upper);
  spec.shift = transform.shift;
  spec.rotation = transform.rotation;

  auto make_hybrid = [&](std::vector<Base> bases, std::vector<double> props) {
    HybridSpec h;
    h.bases = std::move(bases);
    h.proportions = std::move(props);
    h.block_sizes = detail::hybrid_blocks(h.proportions, dim);
    h.permutation = detail::seeded_permutation(fn_seed, dim);
    spec.kind = std::move(h);
  };

  auto make_composition = [&](std::vector<Base> bases, std::vector<double> sigmas,
                              std::vector<double> lambdas, std::vector<double> biases) {
    CompositionSpec comp;
    for (std::size_t c = 0; c < bases.size(); ++c) {
      CompositionComponent part;
      part.base = bases[c];
      part.sigma = sigmas[c];
      part.lambda = lambdas[c];
      part.bias = biases[c];
      if (c == 0) {
        part.shift = spec.shift;  // the composition's global optimum
        part.rotation = spec.rotation;
      } else {
        auto t = make_transform(rng::mix(fn_seed, 100 + c), spec.lower, spec.upper);
        part.shift = std::move(t.shift);
        part.rotation = std::move(t.rotation);
      }
      comp.components.push_back(std::move(part));
    }
    spec.kind = std::move(comp);
  };

  switch (index) {
    case 1: spec.kind = SimpleSpec{Base::Zakharov}; break;
    case 2: spec.kind = SimpleSpec{Base::Rosenbrock}; break;
    case 3: spec.kind = SimpleSpec{Base::Rastrigin}; break;
    case 4: spec.kind = SimpleSpec{Base::SchafferF6}; break;
    case 5: spec.kind = SimpleSpec{Base::LunacekBiRastrigin}; break;
    case 6: spec.kind = SimpleSpec{Base::NonContRastrigin}; break;
    case 7: spec.kind = SimpleSpec{Base::Levy}; break;
    case 8:
      make_hybrid({Base::Zakharov, Base::Rosenbrock, Base::Rastrigin}, {0.2, 0.4, 0.4});
      break;
    case 9:
      make_hybrid({Base::Elliptic, Base::Ackley, Base::SchafferF6, Base::Rastrigin},
                  {0.2, 0.2, 0.2, 0.4});
      break;
    case 10:
      make_hybrid({Base::BentCigar, Base::HGBat, Base::Rastrigin, Base::Rosenbrock},
                  {0.2, 0.2, 0.3, 0.3});
      break;
    case 11:
      make_hybrid({Base::SchafferF6, Base::HGBat, Base::Rosenbrock, Base::ModSchwefel},
                  {0.2, 0.2, 0.3, 0.3});
      break;
    case 12:
      make_hybrid({Base::Katsuura, Base::Ackley, Base::GriewankRosenbrock, Base::ModSchwefel,
                   Base::Rastrigin},
                  {0.1, 0.2, 0.2, 0.2, 0.3});
      break;
    case 13:
      make_hybrid({Base::BentCigar, Base::GriewankRosenbrock, Base::Rastrigin, Base::SchafferF6},
                  {0.25, 0.25, 0.25, 0.25});
      break;
    case 14:
      make_hybrid({Base::Katsuura, Base::Ackley, Base::Rastrigin, Base::SchafferF6,
                   Base::ModSchwefel},
                  {0.2, 0.2, 0.2, 0.2, 0.2});
      break;
    case 15:
      make_composition({Base::Rosenbrock, Base::Elliptic, Base::Rastrigin}, {10.0, 20.0, 30.0},
                       {1.0, 1e-6, 1.0}, {0.0, 100.0, 200.0});
      break;
    case 16:
      make_composition({Base::Griewank, Base::Rastrigin, Base::ModSchwefel}, {10.0, 20.0, 30.0},
                       {10.0, 1.0, 1.0}, {0.0, 100.0, 200.0});
      break;
    case 17:
      make_composition({Base::Ackley, Base::Griewank, Base::Rastrigin, Base::Elliptic},
                       {10.0, 20.0, 30.0, 40.0}, {1.0, 10.0, 1.0, 1e-6},
                       {0.0, 100.0, 200.0, 300.0});
      break;
    default: break;
  }
  return spec;
}

/// The 17-function suite (7 simple, 7 hybrid, 3 composition).
inline std::vector<ObjectiveSpec> standard_suite(std::size_t dim, std::uint64_t seed) {
  std::vector<ObjectiveSpec> suite;
  suite.reserve(17);
  for (std::size_t i = 1; i <= 17; ++i) suite.push_back(make_suite_function(i, dim, seed));
  return suite;
}

/// Index (1..17) for an id like "F3"; 0 when unknown.
inline std::size_t suite_index(const std::string& id) {
  if (id.size() < 2 || (id[0] != 'F' && id[0] != 'f')) return 0;
  std::size_t value = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return 0;
    value = value * 10 + static_cast<std::size_t>(id[i] - '0');
  }
  return value >= 1 && value <= 17 ? value : 0;
}

}  // namespace qswarm::bench
