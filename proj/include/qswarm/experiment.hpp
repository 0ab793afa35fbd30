#pragma once

// Measurement protocol: R-run trials per (function, algorithm) cell, average
// convergence curves, convergence speed (CS) and number-of-successes (NoS)
// metrics, and a deterministic results tree on disk.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qswarm/bench.hpp"
#include "qswarm/hclpso.hpp"
#include "qswarm/rng.hpp"

namespace qswarm::experiment {

using json = nlohmann::ordered_json;

/// All curves of one (function, algorithm) cell.
struct TrialSet {
  std::string function;
  std::string algorithm;
  double z_star = 0.0;
  std::size_t iters = 0;  // G
  std::vector<std::vector<double>> curves;   // R curves of length G+1
  std::vector<std::vector<double>> elapsed;  // cumulative seconds, same shape

  std::size_t runs() const { return curves.size(); }
};

/// Pointwise mean of the best-so-far curves.
inline std::vector<double> average_curve(const TrialSet& ts) {
  if (ts.curves.empty()) throw std::invalid_argument("trial set has no runs");
  const std::size_t len = ts.curves.front().size();
  std::vector<double> avg(len, 0.0);
  for (const auto& curve : ts.curves) {
    if (curve.size() != len) throw std::invalid_argument("curve length mismatch");
    for (std::size_t t = 0; t < len; ++t) avg[t] += curve[t];
  }
  for (double& v : avg) v /= static_cast<double>(ts.curves.size());
  return avg;
}

inline double relative_error(double fitness, double z_star) {
  return (fitness - z_star) / std::abs(z_star);
}

/// Smallest t with (curve[t] - Z*)/|Z*| <= eps, the initial population being
/// t = 0; empty when the curve never crosses the tolerance.
inline std::optional<std::size_t> convergence_speed(std::span<const double> avg_curve,
                                                    double z_star, double eps_tol) {
  if (!(eps_tol > 0.0)) throw std::invalid_argument("eps_tol must be positive");
  for (std::size_t t = 0; t < avg_curve.size(); ++t) {
    if (relative_error(avg_curve[t], z_star) <= eps_tol) return t;
  }
  return std::nullopt;
}

/// Count of runs whose final best-so-far meets the relative-error tolerance.
inline std::size_t number_of_successes(const TrialSet& ts, double eps_tol) {
  if (!(eps_tol > 0.0)) throw std::invalid_argument("eps_tol must be positive");
  std::size_t count = 0;
  for (const auto& curve : ts.curves) {
    if (relative_error(curve.back(), ts.z_star) <= eps_tol) ++count;
  }
  return count;
}

/// Mean wall time to first crossing of the tolerance, over the runs that
/// crossed; empty when none did.
inline std::optional<double> mean_time_to_tolerance(const TrialSet& ts, double eps_tol) {
  double total = 0.0;
  std::size_t count = 0;
  for (std::size_t r = 0; r < ts.runs(); ++r) {
    const auto& curve = ts.curves[r];
    for (std::size_t t = 0; t < curve.size(); ++t) {
      if (relative_error(curve[t], ts.z_star) <= eps_tol) {
        total += ts.elapsed[r][t];
        ++count;
        break;
      }
    }
  }
  if (count == 0) return std::nullopt;
  return total / static_cast<double>(count);
}

struct CellSummary {
  std::string function;
  std::string algorithm;
  double eps_tol = 0.0;
  std::optional<std::size_t> cs;
  std::size_t nos = 0;
  std::optional<double> mean_time_s;
  std::size_t runs = 0;
  std::size_t iters = 0;
};

inline std::vector<CellSummary> summarize(const TrialSet& ts,
                                          std::span<const double> eps_tols) {
  const auto avg = average_curve(ts);
  std::vector<CellSummary> out;
  for (double eps : eps_tols) {
    CellSummary s;
    s.function = ts.function;
    s.algorithm = ts.algorithm;
    s.eps_tol = eps;
    s.cs = convergence_speed(avg, ts.z_star, eps);
    s.nos = number_of_successes(ts, eps);
    s.mean_time_s = mean_time_to_tolerance(ts, eps);
    s.runs = ts.runs();
    s.iters = ts.iters;
    out.push_back(std::move(s));
  }
  return out;
}

// ---------------------------------------------------------------------------
// run matrix

struct AlgorithmSpec {
  std::string label;
  hclpso::VariantScheme variant;
};

struct MatrixConfig {
  std::vector<bench::ObjectiveSpec> functions;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t runs = 30;  // R
  hclpso::RunConfig run;  // per-run settings; seed field unused here
  std::vector<double> eps_tols = {0.05};
  std::uint64_t master_seed = 0;
};

struct Diagnostic {
  std::string function;
  std::string algorithm;
  std::string message;
};

struct MatrixResult {
  std::vector<TrialSet> cells;  // function-major, then algorithm
  std::vector<Diagnostic> diagnostics;
  std::vector<CellSummary> summaries;
};

/// Per-run seed: cells and runs are reproducible in isolation.
inline std::uint64_t derive_run_seed(std::uint64_t master, const std::string& function,
                                     const std::string& algorithm, std::size_t run_index) {
  std::uint64_t s = rng::mix(master, rng::fnv1a(function));
  s = rng::mix(s, rng::fnv1a(algorithm));
  return rng::mix(s, run_index);
}

inline unsigned thread_budget() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("QSWARM_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && v > 0) n = static_cast<unsigned>(std::min<unsigned long>(v, 1024));
  }
  return n;
}

/// Executes R runs per (function, algorithm) cell. Cells and runs execute in
/// parallel; a failing run aborts its own cell (recorded as a diagnostic)
/// and the rest of the matrix proceeds. Output is a pure function of
/// (config, master seed) regardless of scheduling, except recorded wall
/// times.
inline MatrixResult run_matrix(const MatrixConfig& cfg, unsigned threads = thread_budget()) {
  struct Task {
    std::size_t cell;
    std::size_t run;
  };
  const std::size_t n_cells = cfg.functions.size() * cfg.algorithms.size();
  std::vector<Task> tasks;
  tasks.reserve(n_cells * cfg.runs);
  for (std::size_t c = 0; c < n_cells; ++c) {
    for (std::size_t r = 0; r < cfg.runs; ++r) tasks.push_back({c, r});
  }

  std::vector<std::vector<std::vector<double>>> curves(n_cells);
  std::vector<std::vector<std::vector<double>>> elapsed(n_cells);
  std::vector<std::unique_ptr<std::atomic<bool>>> failed(n_cells);
  for (auto& f : failed) f = std::make_unique<std::atomic<bool>>(false);
  for (std::size_t c = 0; c < n_cells; ++c) {
    curves[c].resize(cfg.runs);
    elapsed[c].resize(cfg.runs);
  }
  std::mutex diag_mutex;
  std::vector<Diagnostic> diagnostics;

  auto worker = [&](std::size_t task_index) {
    const Task task = tasks[task_index];
    if (failed[task.cell]->load(std::memory_order_relaxed)) return;
    const std::size_t fn = task.cell / cfg.algorithms.size();
    const std::size_t alg = task.cell % cfg.algorithms.size();
    const auto& objective = cfg.functions[fn];
    const auto& algorithm = cfg.algorithms[alg];
    try {
      hclpso::RunConfig rc = cfg.run;
      rc.seed = derive_run_seed(cfg.master_seed, objective.id, algorithm.label, task.run);
      auto result = hclpso::run(objective, rc, algorithm.variant);
      curves[task.cell][task.run] = std::move(result.curve);
      elapsed[task.cell][task.run] = std::move(result.elapsed);
    } catch (const std::exception& e) {
      failed[task.cell]->store(true, std::memory_order_relaxed);
      std::lock_guard<std::mutex> lock(diag_mutex);
      diagnostics.push_back({objective.id, algorithm.label,
                             "run " + std::to_string(task.run) + ": " + e.what()});
    }
  };

  if (threads <= 1 || tasks.size() <= 1) {
    for (std::size_t t = 0; t < tasks.size(); ++t) worker(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const unsigned count = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
    pool.reserve(count);
    for (unsigned w = 0; w < count; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t t = next.fetch_add(1, std::memory_order_relaxed);
          if (t >= tasks.size()) break;
          worker(t);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  MatrixResult out;
  for (std::size_t fn = 0; fn < cfg.functions.size(); ++fn) {
    for (std::size_t alg = 0; alg < cfg.algorithms.size(); ++alg) {
      const std::size_t cell = fn * cfg.algorithms.size() + alg;
      if (failed[cell]->load()) continue;
      TrialSet ts;
      ts.function = cfg.functions[fn].id;
      ts.algorithm = cfg.algorithms[alg].label;
      ts.z_star = cfg.functions[fn].bias;
      ts.iters = cfg.run.max_iters;
      ts.curves = std::move(curves[cell]);
      ts.elapsed = std::move(elapsed[cell]);
      auto cell_summaries = summarize(ts, cfg.eps_tols);
      out.summaries.insert(out.summaries.end(), cell_summaries.begin(), cell_summaries.end());
      out.cells.push_back(std::move(ts));
    }
  }
  // deterministic order regardless of which thread recorded first
  std::sort(diagnostics.begin(), diagnostics.end(), [](const auto& a, const auto& b) {
    return std::tie(a.function, a.algorithm, a.message) <
           std::tie(b.function, b.algorithm, b.message);
  });
  out.diagnostics = std::move(diagnostics);
  return out;
}

// ---------------------------------------------------------------------------
// persistence

/// Round-trip decimal form of a double, stable across runs.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void write_curve_csv(const std::filesystem::path& path,
                            std::span<const double> curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "iter,best_fitness\n";
  for (std::size_t t = 0; t < curve.size(); ++t) {
    out << t << ',' << format_double(curve[t]) << '\n';
  }
}

inline json summary_json(const std::vector<CellSummary>& summaries) {
  json arr = json::array();
  for (const auto& s : summaries) {
    json item;
    item["function"] = s.function;
    item["algorithm"] = s.algorithm;
    item["eps_tol"] = s.eps_tol;
    item["CS"] = s.cs ? json(*s.cs) : json(nullptr);
    item["NoS"] = s.nos;
    item["mean_time_s"] = s.mean_time_s ? json(*s.mean_time_s) : json(nullptr);
    item["R"] = s.runs;
    item["G"] = s.iters;
    arr.push_back(std::move(item));
  }
  return arr;
}

/// Writes the results tree:
///   <dir>/<fn>/<alg>/run<k>.csv   one curve per run
///   <dir>/summary.json            CS/NoS/time per (fn, alg, eps)
///   <dir>/manifest.json           caller-supplied resolved config
///   <dir>/diagnostics.json        aborted cells, empty array when clean
inline void persist(const std::filesystem::path& dir, const MatrixResult& result,
                    const json& manifest) {
  std::filesystem::create_directories(dir);
  for (const auto& ts : result.cells) {
    const auto cell_dir = dir / ts.function / ts.algorithm;
    std::filesystem::create_directories(cell_dir);
    for (std::size_t r = 0; r < ts.runs(); ++r) {
      write_curve_csv(cell_dir / ("run" + std::to_string(r) + ".csv"), ts.curves[r]);
    }
  }
  {
    std::ofstream out(dir / "summary.json");
    out << summary_json(result.summaries).dump(2) << '\n';
  }
  {
    std::ofstream out(dir / "manifest.json");
    out << manifest.dump(2) << '\n';
  }
  {
    json diag = json::array();
    for (const auto& d : result.diagnostics) {
      diag.push_back({{"function", d.function},
                      {"algorithm", d.algorithm},
                      {"message", d.message}});
    }
    std::ofstream out(dir / "diagnostics.json");
    out << diag.dump(2) << '\n';
  }
}

/// Manifest block describing the exact suite instances in use.
inline json suite_manifest(std::span<const bench::ObjectiveSpec> functions,
                           std::uint64_t suite_seed) {
  json arr = json::array();
  for (const auto& spec : functions) {
    json item;
    item["id"] = spec.id;
    item["name"] = spec.name;
    item["dim"] = spec.dim;
    item["bias"] = spec.bias;
    item["bounds"] = {spec.lower.front(), spec.upper.front()};
    if (const auto* simple = std::get_if<bench::SimpleSpec>(&spec.kind)) {
      item["kind"] = "simple";
      item["base"] = bench::base_name(simple->base);
      item["shrink"] = bench::base_shrink(simple->base);
    } else if (const auto* hybrid = std::get_if<bench::HybridSpec>(&spec.kind)) {
      item["kind"] = "hybrid";
      json bases = json::array();
      for (auto b : hybrid->bases) bases.push_back(bench::base_name(b));
      item["bases"] = std::move(bases);
      item["proportions"] = hybrid->proportions;
      item["blocks"] = hybrid->block_sizes;
    } else {
      const auto& comp = std::get<bench::CompositionSpec>(spec.kind);
      item["kind"] = "composition";
      json parts = json::array();
      for (const auto& part : comp.components) {
        parts.push_back({{"base", bench::base_name(part.base)},
                         {"sigma", part.sigma},
                         {"lambda", part.lambda},
                         {"bias", part.bias}});
      }
      item["components"] = std::move(parts);
    }
    arr.push_back(std::move(item));
  }
  json out;
  out["seed"] = suite_seed;
  out["functions"] = std::move(arr);
  return out;
}

}  // namespace qswarm::experiment
