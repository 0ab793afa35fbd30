#pragma once

// Heterogeneous comprehensive-learning PSO. The swarm splits into an
// exploration subpopulation (velocity pulled toward a per-dimension learning
// exemplar only) and an exploitation subpopulation (exemplar plus global-best
// terms). Every stochastic factor in the velocity updates draws from a
// pluggable PointStream, so any of them can be bound to a deterministic
// low-discrepancy sequence.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qswarm/bench.hpp"
#include "qswarm/rng.hpp"
#include "qswarm/seq.hpp"

namespace qswarm::hclpso {

/// Iteration-dependent coefficients. With g running 0..G:
/// inertia 0.99 -> 0.20, exploration gain 3 -> 2.5, exploitation learning
/// gain 2.5 -> 0.5, social gain 0.5 -> 2.5 (the last two always sum to 3).
struct Schedule {
  std::size_t max_iters = 0;

  double ratio(std::size_t g) const {
    return static_cast<double>(g) / static_cast<double>(max_iters);
  }
  double inertia(std::size_t g) const { return 0.99 - 0.79 * ratio(g); }
  double explore_gain(std::size_t g) const { return 3.0 - 0.5 * ratio(g); }
  double learning_gain(std::size_t g) const { return 2.5 - 2.0 * ratio(g); }
  double social_gain(std::size_t g) const { return 0.5 + 2.0 * ratio(g); }
};

/// Binds each stochastic role to a stream kind. Presets follow the
/// numbering used throughout: scheme 3 is the all-random baseline, scheme 1
/// replaces the two learning factors with an LDS, scheme 2 only the social
/// factor, scheme 0 all three. Exemplar construction stays pseudo-random in
/// every scheme.
struct VariantScheme {
  seq::StreamSpec init;      // population initializer
  seq::StreamSpec explore;   // exploration learning factor
  seq::StreamSpec learning;  // exploitation learning factor
  seq::StreamSpec social;    // exploitation global-best factor
  std::string label = "rand";

  static VariantScheme all_random() {
    VariantScheme v;
    v.label = "hclpso3";
    return v;
  }

  static VariantScheme lds_learning(const seq::StreamSpec& lds) {
    VariantScheme v;
    v.explore = lds;
    v.learning = lds;
    v.label = "hclpso1-" + lds.label();
    return v;
  }

  static VariantScheme lds_social(const seq::StreamSpec& lds) {
    VariantScheme v;
    v.social = lds;
    v.label = "hclpso2-" + lds.label();
    return v;
  }

  static VariantScheme lds_all(const seq::StreamSpec& lds) {
    VariantScheme v;
    v.explore = lds;
    v.learning = lds;
    v.social = lds;
    v.label = "hclpso0-" + lds.label();
    return v;
  }

  static VariantScheme preset(const std::string& name, const seq::StreamSpec& lds) {
    if (name == "hclpso3" || name == "rand") return all_random();
    if (name == "hclpso1") return lds_learning(lds);
    if (name == "hclpso2") return lds_social(lds);
    if (name == "hclpso0") return lds_all(lds);
    throw std::invalid_argument("unknown variant preset: " + name);
  }
};

enum class BoundsMode {
  Skip,   // out-of-bounds positions kept but not evaluated
  Clamp,  // positions clamped into the box before evaluation
};

struct RunConfig {
  std::size_t n_explore = 15;   // N1
  std::size_t n_exploit = 25;   // N2
  std::size_t max_iters = 2000; // G
  double velocity_clamp = 0.2;  // fraction of per-dimension range
  BoundsMode bounds = BoundsMode::Skip;
  std::size_t refresh_gap = 7;  // stalled iterations before exemplar reassignment
  std::uint64_t seed = 0;

  std::size_t swarm_size() const { return n_explore + n_exploit; }
};

struct Particle {
  std::vector<double> position;
  std::vector<double> velocity;
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::vector<std::uint32_t> exemplar;  // per-dimension source particle
  std::size_t stalled = 0;
};

/// One swarm mid-run. Owns its state and streams' consumption; a single run
/// is single-threaded, independent runs share nothing mutable.
class Swarm {
 public:
  Swarm(const bench::ObjectiveSpec& objective, const RunConfig& cfg,
        seq::PointStream& init_stream, std::uint64_t exemplar_seed)
      : objective_(&objective), cfg_(cfg), exemplar_rng_(exemplar_seed) {
    const std::size_t n = cfg.swarm_size();
    const std::size_t dim = objective.dim;
    if (n < 2) throw std::invalid_argument("swarm needs at least 2 particles");
    if (init_stream.dimension() != dim) {
      throw std::invalid_argument("init stream dimension does not match objective");
    }
    for (std::size_t d = 0; d < dim; ++d) {
      if (!(objective.lower[d] < objective.upper[d])) {
        throw std::invalid_argument("invalid bounds: lower must be < upper");
      }
    }

    learn_prob_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(n - 1);
      learn_prob_[i] = 0.05 + 0.45 * (std::exp(10.0 * t) - 1.0) / (std::exp(10.0) - 1.0);
    }

    particles_.resize(n);
    std::vector<double> u(dim);
    for (std::size_t i = 0; i < n; ++i) {
      auto& p = particles_[i];
      p.position.resize(dim);
      p.velocity.assign(dim, 0.0);
      init_stream.next(std::span<double>(u));
      for (std::size_t d = 0; d < dim; ++d) {
        p.position[d] = objective.lower[d] + u[d] * (objective.upper[d] - objective.lower[d]);
      }
      p.best_position = p.position;
      p.best_fitness = evaluate(p.position);
      p.exemplar.resize(dim);
    }
    best_fitness_ = particles_[0].best_fitness;
    best_position_ = particles_[0].best_position;
    for (std::size_t i = 1; i < n; ++i) {
      if (particles_[i].best_fitness < best_fitness_) {
        best_fitness_ = particles_[i].best_fitness;
        best_position_ = particles_[i].best_position;
      }
    }
    for (std::size_t i = 0; i < n; ++i) assign_exemplar(i);
  }

  std::size_t iteration() const noexcept { return iter_; }
  double best_fitness() const noexcept { return best_fitness_; }
  std::span<const double> best_position() const noexcept { return best_position_; }
  const std::vector<Particle>& particles() const noexcept { return particles_; }
  double learning_probability(std::size_t i) const { return learn_prob_.at(i); }

  /// Rebuilds particle i's exemplar: per dimension, with probability Pc_i a
  /// fitness tournament between two distinct members of the particle's peer
  /// pool (exploration subpopulation for explorers, whole swarm otherwise),
  /// else the particle itself. An all-self exemplar gets one random
  /// dimension redirected to a random peer.
  void assign_exemplar(std::size_t i) {
    auto& p = particles_[i];
    const std::size_t dim = p.exemplar.size();
    const std::size_t pool = i < cfg_.n_explore ? cfg_.n_explore : particles_.size();
    bool all_self = true;
    for (std::size_t d = 0; d < dim; ++d) {
      std::uint32_t choice = static_cast<std::uint32_t>(i);
      if (pool >= 2 && exemplar_rng_.uniform01() < learn_prob_[i]) {
        const std::size_t a = static_cast<std::size_t>(exemplar_rng_.bounded(pool));
        std::size_t b = a;
        while (b == a) b = static_cast<std::size_t>(exemplar_rng_.bounded(pool));
        choice = static_cast<std::uint32_t>(
            particles_[a].best_fitness <= particles_[b].best_fitness ? a : b);
      }
      if (choice != i) all_self = false;
      p.exemplar[d] = choice;
    }
    if (all_self && pool >= 2) {
      const std::size_t d = static_cast<std::size_t>(exemplar_rng_.bounded(dim));
      std::size_t peer = i;
      while (peer == i) peer = static_cast<std::size_t>(exemplar_rng_.bounded(pool));
      p.exemplar[d] = static_cast<std::uint32_t>(peer);
    }
    p.stalled = 0;
  }

  /// Advances one iteration: velocity updates with one point per particle
  /// per bound stream role, clamped; position update; feasible-only fitness
  /// evaluation; personal/global best and exemplar bookkeeping.
  void step(seq::PointStream& explore_eps, seq::PointStream& learning_eps,
            seq::PointStream& social_eps) {
    if (iter_ >= cfg_.max_iters) {
      throw std::logic_error("step past the configured iteration budget");
    }
    const Schedule sched{cfg_.max_iters};
    const double w = sched.inertia(iter_);
    const double k = sched.explore_gain(iter_);
    const double c1 = sched.learning_gain(iter_);
    const double c2 = sched.social_gain(iter_);
    const std::size_t dim = objective_->dim;
    std::vector<double> eps_a(dim), eps_b(dim);

    for (std::size_t i = 0; i < particles_.size(); ++i) {
      auto& p = particles_[i];
      if (i < cfg_.n_explore) {
        explore_eps.next(std::span<double>(eps_a));
        for (std::size_t d = 0; d < dim; ++d) {
          const double guide = particles_[p.exemplar[d]].best_position[d];
          p.velocity[d] = w * p.velocity[d] + k * eps_a[d] * (guide - p.position[d]);
        }
      } else {
        learning_eps.next(std::span<double>(eps_a));
        social_eps.next(std::span<double>(eps_b));
        for (std::size_t d = 0; d < dim; ++d) {
          const double guide = particles_[p.exemplar[d]].best_position[d];
          p.velocity[d] = w * p.velocity[d] + c1 * eps_a[d] * (guide - p.position[d]) +
                          c2 * eps_b[d] * (best_position_[d] - p.position[d]);
        }
      }
      for (std::size_t d = 0; d < dim; ++d) {
        const double vmax = cfg_.velocity_clamp * (objective_->upper[d] - objective_->lower[d]);
        p.velocity[d] = std::clamp(p.velocity[d], -vmax, vmax);
        p.position[d] += p.velocity[d];
      }

      bool feasible = true;
      if (cfg_.bounds == BoundsMode::Clamp) {
        for (std::size_t d = 0; d < dim; ++d) {
          p.position[d] = std::clamp(p.position[d], objective_->lower[d], objective_->upper[d]);
        }
      } else {
        for (std::size_t d = 0; d < dim; ++d) {
          if (p.position[d] < objective_->lower[d] || p.position[d] > objective_->upper[d]) {
            feasible = false;
            break;
          }
        }
      }
      if (feasible) {
        const double f = evaluate(p.position);
        if (f < p.best_fitness) {
          p.best_fitness = f;
          p.best_position = p.position;
          p.stalled = 0;
        } else {
          ++p.stalled;
        }
      } else {
        ++p.stalled;
      }
    }

    for (const auto& p : particles_) {
      if (p.best_fitness < best_fitness_) {
        best_fitness_ = p.best_fitness;
        best_position_ = p.best_position;
      }
    }
    for (std::size_t i = 0; i < particles_.size(); ++i) {
      if (particles_[i].stalled >= cfg_.refresh_gap) assign_exemplar(i);
    }
    ++iter_;
  }

 private:
  double evaluate(std::span<const double> x) const {
    const double f = objective_->eval(x);
    if (!std::isfinite(f)) {
      throw std::runtime_error("objective returned a non-finite fitness");
    }
    return f;
  }

  const bench::ObjectiveSpec* objective_;
  RunConfig cfg_;
  std::vector<Particle> particles_;
  std::vector<double> learn_prob_;
  std::vector<double> best_position_;
  double best_fitness_ = 0.0;
  std::size_t iter_ = 0;
  rng::Engine exemplar_rng_;
};

/// The four streams a run consumes, one per stochastic role.
struct StreamBundle {
  std::unique_ptr<seq::PointStream> init;
  std::unique_ptr<seq::PointStream> explore;
  std::unique_ptr<seq::PointStream> learning;
  std::unique_ptr<seq::PointStream> social;
};

/// Instantiates the bundle for a variant. Random roles derive their seeds
/// from the run seed; deterministic kinds restart from cursor 0.
inline StreamBundle make_streams(const VariantScheme& variant, std::size_t dim,
                                 std::uint64_t run_seed) {
  StreamBundle b;
  b.init = seq::make_stream(variant.init, dim, rng::mix(run_seed, 1));
  b.explore = seq::make_stream(variant.explore, dim, rng::mix(run_seed, 2));
  b.learning = seq::make_stream(variant.learning, dim, rng::mix(run_seed, 3));
  b.social = seq::make_stream(variant.social, dim, rng::mix(run_seed, 4));
  return b;
}

inline std::uint64_t exemplar_seed(std::uint64_t run_seed) { return rng::mix(run_seed, 5); }

struct RunResult {
  std::vector<double> curve;    // best-so-far fitness, length G+1
  std::vector<double> elapsed;  // cumulative seconds per recorded iteration
  std::vector<double> best_position;
  double best_fitness = 0.0;
  std::uint64_t init_points = 0;
  std::uint64_t explore_points = 0;
  std::uint64_t learning_points = 0;
  std::uint64_t social_points = 0;
};

/// Full run against a bundle the caller owns (stream cursors stay inspectable).
inline RunResult run(const bench::ObjectiveSpec& objective, const RunConfig& cfg,
                     StreamBundle& streams, std::uint64_t exemplar_seed_value) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto seconds_since_start = [&] {
    return std::chrono::duration<double>(clock::now() - t0).count();
  };

  RunResult out;
  Swarm swarm(objective, cfg, *streams.init, exemplar_seed_value);
  out.curve.reserve(cfg.max_iters + 1);
  out.elapsed.reserve(cfg.max_iters + 1);
  out.curve.push_back(swarm.best_fitness());
  out.elapsed.push_back(seconds_since_start());
  for (std::size_t g = 0; g < cfg.max_iters; ++g) {
    swarm.step(*streams.explore, *streams.learning, *streams.social);
    out.curve.push_back(swarm.best_fitness());
    out.elapsed.push_back(seconds_since_start());
  }
  out.best_position.assign(swarm.best_position().begin(), swarm.best_position().end());
  out.best_fitness = swarm.best_fitness();
  out.init_points = streams.init->cursor();
  out.explore_points = streams.explore->cursor();
  out.learning_points = streams.learning->cursor();
  out.social_points = streams.social->cursor();
  return out;
}

/// Convenience overload wiring streams from the variant scheme and the
/// config seed.
inline RunResult run(const bench::ObjectiveSpec& objective, const RunConfig& cfg,
                     const VariantScheme& variant) {
  auto streams = make_streams(variant, objective.dim, cfg.seed);
  return run(objective, cfg, streams, exemplar_seed(cfg.seed));
}

}  // namespace qswarm::hclpso
