// qswarm command-line front end: sequence inspection, suite listing,
// experiment execution, Friedman/Nemenyi comparison, and curve plotting.
//
// Exit codes: 0 success, 1 runtime failure under --strict, 2 usage or
// validation error.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qswarm/bench.hpp"
#include "qswarm/experiment.hpp"
#include "qswarm/hclpso.hpp"
#include "qswarm/plot.hpp"
#include "qswarm/seq.hpp"
#include "qswarm/stats.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// seq

struct SeqOptions {
  std::string kind;
  std::size_t dim = 2;
  std::optional<std::size_t> count;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> prime;
  std::string perm_file;
  std::string path;
  std::string wrap = "wrap";
  std::optional<std::uint32_t> oa_levels;
  std::optional<std::uint32_t> oa_strength;
  bool discrepancy = false;
  std::string output;
};

int cmd_seq(const SeqOptions& opt) {
  try {
    qswarm::seq::StreamSpec spec;
    if (opt.kind == "random") {
      spec.kind = qswarm::seq::StreamSpec::Kind::Random;
      spec.seed = opt.seed;
    } else if (opt.kind == "huawang") {
      spec.kind = qswarm::seq::StreamSpec::Kind::HuaWang;
      spec.prime = opt.prime;
    } else if (opt.kind == "halton") {
      spec.kind = qswarm::seq::StreamSpec::Kind::Halton;
      spec.permutation_file = opt.perm_file;
    } else if (opt.kind == "oa") {
      spec.kind = qswarm::seq::StreamSpec::Kind::OrthogonalArray;
      spec.oa_points = opt.count.value_or(16);
      spec.oa_levels = opt.oa_levels;
      spec.oa_strength = opt.oa_strength;
    } else if (opt.kind == "file") {
      spec.kind = qswarm::seq::StreamSpec::Kind::File;
      if (opt.path.empty()) throw ConfigError("seq file requires --path");
      spec.path = opt.path;
      spec.wrap = opt.wrap == "error" ? qswarm::seq::WrapPolicy::Error
                                      : qswarm::seq::WrapPolicy::Wrap;
    } else {
      throw ConfigError("unknown stream kind: " + opt.kind);
    }

    auto stream = qswarm::seq::make_stream(spec, opt.dim, opt.seed);
    std::size_t count = opt.count.value_or(16);
    if (!opt.count && opt.kind == "file") {
      count = dynamic_cast<qswarm::seq::PointSetStream&>(*stream).point_set().size();
    }
    const auto points = qswarm::seq::take(*stream, count);

    std::ostringstream text;
    char buf[32];
    for (std::size_t i = 0; i < points.size(); ++i) {
      auto p = points.point(i);
      for (std::size_t d = 0; d < p.size(); ++d) {
        std::snprintf(buf, sizeof(buf), "%.6f", p[d]);
        text << (d ? " " : "") << buf;
      }
      text << '\n';
    }
    if (opt.discrepancy) {
      std::snprintf(buf, sizeof(buf), "%.10f", qswarm::seq::centered_l2_discrepancy(points));
      text << "# CL2 " << buf << '\n';
    }
    if (opt.output.empty()) {
      std::cout << text.str();
    } else {
      qswarm::plot::write_file(opt.output, text.str());
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "qswarm seq: " << e.what() << '\n';
    return kExitUsage;
  }
}

// ---------------------------------------------------------------------------
// suite list

int cmd_suite_list(std::size_t dim, std::uint64_t seed) {
  try {
    const auto suite = qswarm::bench::standard_suite(dim, seed);
    std::printf("%-5s %-7s %-13s %s\n", "id", "Z*", "kind", "name");
    for (const auto& spec : suite) {
      const char* kind = std::holds_alternative<qswarm::bench::SimpleSpec>(spec.kind) ? "simple"
                         : std::holds_alternative<qswarm::bench::HybridSpec>(spec.kind)
                             ? "hybrid"
                             : "composition";
      std::printf("%-5s %-7g %-13s %s\n", spec.id.c_str(), spec.bias, kind, spec.name.c_str());
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "qswarm suite: " << e.what() << '\n';
    return kExitUsage;
  }
}

// ---------------------------------------------------------------------------
// experiment config

void check_keys(const json& obj, const std::set<std::string>& allowed,
                const std::string& where, std::vector<std::string>& errors) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) errors.push_back(where + ": unknown key '" + key + "'");
  }
}

qswarm::seq::StreamSpec parse_stream_spec(const json& obj, const std::string& where,
                                          std::vector<std::string>& errors) {
  qswarm::seq::StreamSpec spec;
  if (!obj.is_object()) {
    errors.push_back(where + ": must be an object");
    return spec;
  }
  check_keys(obj,
             {"kind", "seed", "prime", "perm_file", "path", "wrap", "oa_points", "oa_levels",
              "oa_strength"},
             where, errors);
  const std::string kind = obj.value("kind", "random");
  if (kind == "random") {
    spec.kind = qswarm::seq::StreamSpec::Kind::Random;
  } else if (kind == "huawang") {
    spec.kind = qswarm::seq::StreamSpec::Kind::HuaWang;
  } else if (kind == "halton") {
    spec.kind = qswarm::seq::StreamSpec::Kind::Halton;
  } else if (kind == "oa") {
    spec.kind = qswarm::seq::StreamSpec::Kind::OrthogonalArray;
  } else if (kind == "file") {
    spec.kind = qswarm::seq::StreamSpec::Kind::File;
  } else {
    errors.push_back(where + ": unknown stream kind '" + kind + "'");
  }
  if (obj.contains("seed")) spec.seed = obj["seed"].get<std::uint64_t>();
  if (obj.contains("prime")) spec.prime = obj["prime"].get<std::uint64_t>();
  if (obj.contains("perm_file")) spec.permutation_file = obj["perm_file"].get<std::string>();
  if (obj.contains("path")) spec.path = obj["path"].get<std::string>();
  if (obj.contains("wrap")) {
    const std::string wrap = obj["wrap"].get<std::string>();
    if (wrap == "wrap") {
      spec.wrap = qswarm::seq::WrapPolicy::Wrap;
    } else if (wrap == "error") {
      spec.wrap = qswarm::seq::WrapPolicy::Error;
    } else {
      errors.push_back(where + ".wrap: must be 'wrap' or 'error'");
    }
  }
  if (obj.contains("oa_points")) spec.oa_points = obj["oa_points"].get<std::uint64_t>();
  if (obj.contains("oa_levels")) spec.oa_levels = obj["oa_levels"].get<std::uint32_t>();
  if (obj.contains("oa_strength")) spec.oa_strength = obj["oa_strength"].get<std::uint32_t>();
  if (spec.kind == qswarm::seq::StreamSpec::Kind::File && spec.path.empty()) {
    errors.push_back(where + ": file stream requires 'path'");
  }
  return spec;
}

json stream_spec_json(const qswarm::seq::StreamSpec& spec) {
  json out;
  out["kind"] = spec.label() == "halton-permuted" ? "halton" : spec.label();
  if (spec.kind == qswarm::seq::StreamSpec::Kind::Random) out["seed"] = spec.seed;
  if (spec.prime) out["prime"] = *spec.prime;
  if (!spec.permutation_file.empty()) out["perm_file"] = spec.permutation_file;
  if (!spec.path.empty()) out["path"] = spec.path;
  if (spec.kind == qswarm::seq::StreamSpec::Kind::File ||
      spec.kind == qswarm::seq::StreamSpec::Kind::OrthogonalArray) {
    out["wrap"] = spec.wrap == qswarm::seq::WrapPolicy::Wrap ? "wrap" : "error";
  }
  if (spec.oa_points) out["oa_points"] = *spec.oa_points;
  if (spec.oa_levels) out["oa_levels"] = *spec.oa_levels;
  if (spec.oa_strength) out["oa_strength"] = *spec.oa_strength;
  return out;
}

struct ExperimentConfig {
  std::string name = "experiment";
  std::size_t dim = 10;
  std::uint64_t suite_seed = 0;
  std::vector<std::string> functions;
  std::map<std::string, std::string> transforms;
  std::vector<qswarm::experiment::AlgorithmSpec> algorithms;
  std::size_t runs = 30;
  std::size_t iters = 2000;
  std::size_t n_explore = 15;
  std::size_t n_exploit = 25;
  std::vector<double> eps_tols = {0.05};
  std::uint64_t master_seed = 0;
  double velocity_clamp = 0.2;
  std::string bounds_mode = "skip";
  std::size_t refresh_gap = 7;
  std::string output;
};

ExperimentConfig parse_config(const json& root) {
  std::vector<std::string> errors;
  ExperimentConfig cfg;
  if (!root.is_object()) throw ConfigError("config root must be an object");
  check_keys(root,
             {"version", "name", "suite", "algorithms", "runs", "iters", "n_explore",
              "n_exploit", "eps_tol", "master_seed", "velocity_clamp", "bounds_mode",
              "refresh_gap", "output", "transforms"},
             "config", errors);
  try {
    if (root.contains("version") && root["version"].get<int>() != 1) {
      errors.push_back("config.version: only version 1 is understood");
    }
    if (root.contains("name")) cfg.name = root["name"].get<std::string>();

    if (!root.contains("suite")) {
      errors.push_back("config.suite: required");
    } else {
      const auto& suite = root["suite"];
      check_keys(suite, {"dim", "seed", "functions"}, "config.suite", errors);
      if (suite.contains("dim")) cfg.dim = suite["dim"].get<std::size_t>();
      if (suite.contains("seed")) cfg.suite_seed = suite["seed"].get<std::uint64_t>();
      if (!suite.contains("functions") || !suite["functions"].is_array() ||
          suite["functions"].empty()) {
        errors.push_back("config.suite.functions: non-empty array required");
      } else {
        std::set<std::string> seen;
        for (const auto& f : suite["functions"]) {
          const auto id = f.get<std::string>();
          if (qswarm::bench::suite_index(id) == 0) {
            errors.push_back("config.suite.functions: unknown function id '" + id + "'");
          }
          if (!seen.insert(id).second) {
            errors.push_back("config.suite.functions: duplicate function id '" + id + "'");
          }
          cfg.functions.push_back(id);
        }
      }
    }

    if (root.contains("transforms")) {
      for (const auto& [fn, path] : root["transforms"].items()) {
        if (qswarm::bench::suite_index(fn) == 0) {
          errors.push_back("config.transforms: unknown function id '" + fn + "'");
        }
        cfg.transforms[fn] = path.get<std::string>();
      }
    }

    if (!root.contains("algorithms") || !root["algorithms"].is_array() ||
        root["algorithms"].empty()) {
      errors.push_back("config.algorithms: non-empty array required");
    } else {
      std::set<std::string> labels;
      std::size_t index = 0;
      for (const auto& entry : root["algorithms"]) {
        const std::string where = "config.algorithms[" + std::to_string(index++) + "]";
        check_keys(entry, {"label", "variant", "lds", "init"}, where, errors);
        if (!entry.contains("label")) {
          errors.push_back(where + ".label: required");
          continue;
        }
        const auto label = entry["label"].get<std::string>();
        if (!labels.insert(label).second) {
          errors.push_back(where + ": duplicate label '" + label + "'");
        }
        const std::string variant = entry.value("variant", "rand");
        const bool wants_lds = variant == "hclpso0" || variant == "hclpso1" ||
                               variant == "hclpso2";
        qswarm::seq::StreamSpec lds;
        if (entry.contains("lds")) {
          if (!wants_lds) {
            errors.push_back(where + ".lds: variant '" + variant + "' does not take an LDS");
          }
          lds = parse_stream_spec(entry["lds"], where + ".lds", errors);
        } else if (wants_lds) {
          errors.push_back(where + ": variant '" + variant + "' requires an 'lds' stream");
        }
        qswarm::experiment::AlgorithmSpec alg;
        alg.label = label;
        try {
          alg.variant = qswarm::hclpso::VariantScheme::preset(variant, lds);
        } catch (const std::exception& e) {
          errors.push_back(where + ".variant: " + e.what());
        }
        alg.variant.label = label;
        if (entry.contains("init")) {
          alg.variant.init = parse_stream_spec(entry["init"], where + ".init", errors);
        }
        cfg.algorithms.push_back(std::move(alg));
      }
    }

    if (root.contains("runs")) cfg.runs = root["runs"].get<std::size_t>();
    if (root.contains("iters")) cfg.iters = root["iters"].get<std::size_t>();
    if (root.contains("n_explore")) cfg.n_explore = root["n_explore"].get<std::size_t>();
    if (root.contains("n_exploit")) cfg.n_exploit = root["n_exploit"].get<std::size_t>();
    if (root.contains("eps_tol")) {
      cfg.eps_tols.clear();
      for (const auto& e : root["eps_tol"]) cfg.eps_tols.push_back(e.get<double>());
    }
    if (root.contains("master_seed")) cfg.master_seed = root["master_seed"].get<std::uint64_t>();
    if (root.contains("velocity_clamp")) cfg.velocity_clamp = root["velocity_clamp"].get<double>();
    if (root.contains("bounds_mode")) {
      cfg.bounds_mode = root["bounds_mode"].get<std::string>();
      if (cfg.bounds_mode != "skip" && cfg.bounds_mode != "clamp") {
        errors.push_back("config.bounds_mode: must be 'skip' or 'clamp'");
      }
    }
    if (root.contains("refresh_gap")) cfg.refresh_gap = root["refresh_gap"].get<std::size_t>();
    if (!root.contains("output")) {
      errors.push_back("config.output: required");
    } else {
      cfg.output = root["output"].get<std::string>();
    }
  } catch (const json::exception& e) {
    errors.push_back(std::string("config: ") + e.what());
  }

  if (cfg.runs == 0) errors.push_back("config.runs: must be >= 1");
  if (cfg.iters == 0) errors.push_back("config.iters: must be >= 1");
  if (cfg.n_explore + cfg.n_exploit < 2) {
    errors.push_back("config: n_explore + n_exploit must be >= 2");
  }
  for (double e : cfg.eps_tols) {
    if (!(e > 0.0)) errors.push_back("config.eps_tol: tolerances must be positive");
  }

  if (!errors.empty()) {
    std::string all = "invalid config:";
    for (const auto& e : errors) all += "\n  " + e;
    throw ConfigError(all);
  }
  return cfg;
}

json resolved_config_json(const ExperimentConfig& cfg) {
  json out;
  out["version"] = 1;
  out["name"] = cfg.name;
  out["suite"] = {{"dim", cfg.dim}, {"seed", cfg.suite_seed}, {"functions", cfg.functions}};
  json algs = json::array();
  for (const auto& alg : cfg.algorithms) {
    json a;
    a["label"] = alg.label;
    a["init"] = stream_spec_json(alg.variant.init);
    a["explore_eps"] = stream_spec_json(alg.variant.explore);
    a["learning_eps"] = stream_spec_json(alg.variant.learning);
    a["social_eps"] = stream_spec_json(alg.variant.social);
    algs.push_back(std::move(a));
  }
  out["algorithms"] = std::move(algs);
  out["runs"] = cfg.runs;
  out["iters"] = cfg.iters;
  out["n_explore"] = cfg.n_explore;
  out["n_exploit"] = cfg.n_exploit;
  out["eps_tol"] = cfg.eps_tols;
  out["master_seed"] = cfg.master_seed;
  out["velocity_clamp"] = cfg.velocity_clamp;
  out["bounds_mode"] = cfg.bounds_mode;
  out["refresh_gap"] = cfg.refresh_gap;
  out["output"] = cfg.output;
  if (!cfg.transforms.empty()) out["transforms"] = cfg.transforms;
  return out;
}

std::string cell_text(const qswarm::experiment::CellSummary& s) {
  std::ostringstream out;
  if (s.cs) {
    out << *s.cs;
  } else {
    out << '-';
  }
  out << " (NoS " << s.nos << '/' << s.runs << ')';
  return out.str();
}

int cmd_run(const std::string& config_path, bool strict) {
  ExperimentConfig cfg;
  json raw;
  try {
    std::ifstream in(config_path);
    if (!in) throw ConfigError("cannot open config file: " + config_path);
    raw = json::parse(in);
    cfg = parse_config(raw);
  } catch (const json::exception& e) {
    std::cerr << "qswarm run: config parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "qswarm run: " << e.what() << '\n';
    return kExitUsage;
  }

  qswarm::experiment::MatrixConfig mc;
  try {
    for (const auto& id : cfg.functions) {
      std::optional<qswarm::bench::Transform> injected;
      if (auto it = cfg.transforms.find(id); it != cfg.transforms.end()) {
        injected = qswarm::bench::load_transform(it->second, cfg.dim);
      }
      mc.functions.push_back(qswarm::bench::make_suite_function(
          qswarm::bench::suite_index(id), cfg.dim, cfg.suite_seed, injected));
    }
  } catch (const std::exception& e) {
    std::cerr << "qswarm run: suite construction failed: " << e.what() << '\n';
    return kExitUsage;
  }
  mc.algorithms = cfg.algorithms;
  mc.runs = cfg.runs;
  mc.run.n_explore = cfg.n_explore;
  mc.run.n_exploit = cfg.n_exploit;
  mc.run.max_iters = cfg.iters;
  mc.run.velocity_clamp = cfg.velocity_clamp;
  mc.run.bounds = cfg.bounds_mode == "clamp" ? qswarm::hclpso::BoundsMode::Clamp
                                             : qswarm::hclpso::BoundsMode::Skip;
  mc.run.refresh_gap = cfg.refresh_gap;
  mc.eps_tols = cfg.eps_tols;
  mc.master_seed = cfg.master_seed;

  const auto result = qswarm::experiment::run_matrix(mc);

  json manifest;
  {
    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    manifest["created"] = stamp;  // the only wall-clock field in the tree
    manifest["master_seed"] = cfg.master_seed;
    manifest["config"] = resolved_config_json(cfg);
    manifest["suite"] = qswarm::experiment::suite_manifest(mc.functions, cfg.suite_seed);
  }
  try {
    qswarm::experiment::persist(cfg.output, result, manifest);
  } catch (const std::exception& e) {
    std::cerr << "qswarm run: persistence failed: " << e.what() << '\n';
    return kExitRuntime;
  }

  // progress table, one row per (function, algorithm) at the first tolerance
  std::printf("%-6s %-20s %s\n", "fn", "algorithm", "CS @ first eps_tol");
  for (const auto& cell : result.cells) {
    for (const auto& s : result.summaries) {
      if (s.function == cell.function && s.algorithm == cell.algorithm &&
          s.eps_tol == cfg.eps_tols.front()) {
        std::printf("%-6s %-20s %s\n", s.function.c_str(), s.algorithm.c_str(),
                    cell_text(s).c_str());
        break;
      }
    }
  }
  for (const auto& d : result.diagnostics) {
    std::cerr << "warning: cell (" << d.function << ", " << d.algorithm
              << ") aborted: " << d.message << '\n';
  }
  std::printf("results written to %s\n", cfg.output.c_str());
  if (strict && !result.diagnostics.empty()) return kExitRuntime;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// compare

std::string rank_text(double r) {
  char buf[16];
  if (r == std::floor(r)) {
    std::snprintf(buf, sizeof(buf), "%d", static_cast<int>(r));
  } else {
    std::snprintf(buf, sizeof(buf), "%.1f", r);
  }
  return buf;
}

int cmd_compare(const std::string& results_dir, const std::string& metric, double eps,
                std::string report_path) {
  try {
    const fs::path dir(results_dir);
    std::ifstream in(dir / "summary.json");
    if (!in) throw ConfigError("no summary.json under " + results_dir);
    const json summary = json::parse(in);

    if (metric != "cs" && metric != "time" && metric != "nos") {
      throw ConfigError("metric must be one of cs|time|nos");
    }

    std::vector<std::string> functions, algorithms;
    std::map<std::string, std::map<std::string, qswarm::stats::Cell>> table;
    for (const auto& entry : summary) {
      if (std::abs(entry["eps_tol"].get<double>() - eps) > 1e-12) continue;
      const auto fn = entry["function"].get<std::string>();
      const auto alg = entry["algorithm"].get<std::string>();
      if (std::find(functions.begin(), functions.end(), fn) == functions.end()) {
        functions.push_back(fn);
      }
      if (std::find(algorithms.begin(), algorithms.end(), alg) == algorithms.end()) {
        algorithms.push_back(alg);
      }
      qswarm::stats::Cell cell;
      if (metric == "cs") {
        if (!entry["CS"].is_null()) cell = entry["CS"].get<double>();
      } else if (metric == "time") {
        if (!entry["mean_time_s"].is_null()) cell = entry["mean_time_s"].get<double>();
      } else {
        cell = entry["NoS"].get<double>();
      }
      table[fn][alg] = cell;
    }
    if (functions.size() < 2 || algorithms.size() < 2) {
      throw ConfigError("comparison needs at least 2 functions and 2 algorithms at eps_tol " +
                        std::to_string(eps));
    }

    std::vector<std::vector<qswarm::stats::Cell>> values;
    for (const auto& fn : functions) {
      std::vector<qswarm::stats::Cell> row;
      for (const auto& alg : algorithms) {
        auto it = table[fn].find(alg);
        row.push_back(it == table[fn].end() ? qswarm::stats::Cell{} : it->second);
      }
      values.push_back(std::move(row));
    }

    const auto direction = metric == "nos" ? qswarm::stats::Direction::HigherIsBetter
                                           : qswarm::stats::Direction::LowerIsBetter;
    const auto cmp = qswarm::stats::compare(values, direction);

    // rendered table
    std::printf("%-6s", "fn");
    for (const auto& alg : algorithms) std::printf(" %16s", alg.c_str());
    std::printf("\n");
    for (std::size_t f = 0; f < functions.size(); ++f) {
      std::printf("%-6s", functions[f].c_str());
      for (std::size_t a = 0; a < algorithms.size(); ++a) {
        std::string cell;
        if (values[f][a]) {
          char buf[32];
          if (metric == "time") {
            std::snprintf(buf, sizeof(buf), "%.3f", *values[f][a]);
          } else {
            std::snprintf(buf, sizeof(buf), "%g", *values[f][a]);
          }
          cell = buf;
        } else {
          cell = "-";
        }
        cell += "(" + rank_text(cmp.table.ranks[f][a]) + ")";
        std::printf(" %16s", cell.c_str());
      }
      std::printf("\n");
    }
    std::printf("%-6s", "AvgRk");
    for (std::size_t a = 0; a < algorithms.size(); ++a) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.3f", cmp.table.average_ranks[a]);
      std::printf(" %16s", buf);
    }
    std::printf("\n");
    if (cmp.friedman.infinite) {
      std::printf("tau_F = inf (degenerate), tau_c = %.4f -> reject\n", cmp.tau_critical);
    } else {
      std::printf("tau_F = %.4f, tau_c = %.4f -> %s\n", cmp.friedman.tau_f, cmp.tau_critical,
                  cmp.reject_null ? "reject (algorithms differ)" : "accept (no difference)");
    }
    std::printf("Nemenyi CD = %.4f\n", cmp.cd);
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      for (std::size_t j = i + 1; j < algorithms.size(); ++j) {
        if (cmp.pairwise[i][j]) {
          std::printf("  %s vs %s: significant\n", algorithms[i].c_str(),
                      algorithms[j].c_str());
        }
      }
    }

    json report;
    report["metric"] = metric;
    report["eps_tol"] = eps;
    report["algorithms"] = algorithms;
    report["functions"] = functions;
    report["avg_ranks"] = cmp.table.average_ranks;
    report["chi2"] = cmp.friedman.chi_squared;
    report["tau_F"] = cmp.friedman.infinite ? json(nullptr) : json(cmp.friedman.tau_f);
    report["tau_F_infinite"] = cmp.friedman.infinite;
    report["tau_c"] = cmp.tau_critical;
    report["reject_null"] = cmp.reject_null;
    report["CD"] = cmp.cd;
    json pairwise = json::array();
    for (const auto& row : cmp.pairwise) {
      json r = json::array();
      for (bool b : row) r.push_back(b);
      pairwise.push_back(std::move(r));
    }
    report["pairwise"] = std::move(pairwise);
    if (report_path.empty()) report_path = (dir / "report.json").string();
    qswarm::plot::write_file(report_path, report.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "qswarm compare: " << e.what() << '\n';
    return kExitUsage;
  }
}

// ---------------------------------------------------------------------------
// plot

std::vector<double> read_curve_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  std::vector<double> curve;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    if (comma == std::string::npos) continue;
    curve.push_back(std::stod(line.substr(comma + 1)));
  }
  return curve;
}

int cmd_plot(const std::string& results_dir, const std::string& function, bool csv_only,
             std::string out_dir) {
  try {
    const fs::path dir(results_dir);
    std::ifstream min(dir / "manifest.json");
    if (!min) throw ConfigError("no manifest.json under " + results_dir);
    const json manifest = json::parse(min);

    double z_star = 0.0;
    bool found = false;
    for (const auto& fn : manifest["suite"]["functions"]) {
      if (fn["id"].get<std::string>() == function) {
        z_star = fn["bias"].get<double>();
        found = true;
        break;
      }
    }
    if (!found) throw ConfigError("unknown function id: " + function);

    std::ifstream sin(dir / "summary.json");
    if (!sin) throw ConfigError("no summary.json under " + results_dir);
    const json summary = json::parse(sin);
    std::vector<std::string> algorithms;
    for (const auto& entry : summary) {
      if (entry["function"].get<std::string>() != function) continue;
      const auto alg = entry["algorithm"].get<std::string>();
      if (std::find(algorithms.begin(), algorithms.end(), alg) == algorithms.end()) {
        algorithms.push_back(alg);
      }
    }
    if (algorithms.empty()) throw ConfigError("no results for function " + function);

    std::vector<qswarm::plot::Series> series;
    for (const auto& alg : algorithms) {
      const fs::path cell = dir / function / alg;
      std::vector<std::vector<double>> curves;
      for (std::size_t r = 0;; ++r) {
        const fs::path file = cell / ("run" + std::to_string(r) + ".csv");
        if (!fs::exists(file)) break;
        curves.push_back(read_curve_csv(file));
      }
      if (curves.empty()) throw ConfigError("no curves under " + cell.string());
      qswarm::plot::Series s;
      s.label = alg;
      s.values.assign(curves.front().size(), 0.0);
      for (const auto& curve : curves) {
        for (std::size_t t = 0; t < curve.size(); ++t) s.values[t] += curve[t];
      }
      for (double& v : s.values) {
        v = (v / static_cast<double>(curves.size()) - z_star) / std::abs(z_star);
      }
      series.push_back(std::move(s));
    }

    if (out_dir.empty()) out_dir = (dir / "plots").string();
    fs::create_directories(out_dir);
    const auto csv_path = fs::path(out_dir) / (function + ".csv");
    qswarm::plot::write_file(csv_path.string(), qswarm::plot::curves_csv(series));
    std::printf("wrote %s\n", csv_path.string().c_str());
    if (!csv_only) {
      const auto svg_path = fs::path(out_dir) / (function + ".svg");
      qswarm::plot::write_file(svg_path.string(),
                               qswarm::plot::curves_svg(series, function + " average curves"));
      std::printf("wrote %s\n", svg_path.string().c_str());
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "qswarm plot: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HCLPSO with pluggable low-discrepancy streams: benchmark and analysis tool"};
  app.require_subcommand(1);

  SeqOptions seq_opt;
  auto* seq_cmd = app.add_subcommand("seq", "emit points from a stream");
  seq_cmd->add_option("kind", seq_opt.kind, "random|huawang|halton|oa|file")->required();
  seq_cmd->add_option("-d,--dim", seq_opt.dim, "dimension");
  std::size_t seq_count = 0;
  auto* count_opt = seq_cmd->add_option("-n,--count", seq_count, "number of points");
  seq_cmd->add_option("--seed", seq_opt.seed, "seed for random streams");
  std::uint64_t seq_prime = 0;
  auto* prime_opt = seq_cmd->add_option("-p,--prime", seq_prime, "hua-wang prime (>= 2D+3)");
  seq_cmd->add_option("--perm-file", seq_opt.perm_file, "halton digit permutation file");
  seq_cmd->add_option("--path", seq_opt.path, "point-set file to stream");
  seq_cmd->add_option("--wrap", seq_opt.wrap, "wrap|error on file exhaustion");
  std::uint32_t seq_levels = 0, seq_strength = 0;
  auto* levels_opt = seq_cmd->add_option("--levels", seq_levels, "OA levels q (prime)");
  auto* strength_opt = seq_cmd->add_option("--strength", seq_strength, "OA strength J");
  seq_cmd->add_flag("--discrepancy", seq_opt.discrepancy, "append the CL2 discrepancy");
  seq_cmd->add_option("-o,--output", seq_opt.output, "write to file instead of stdout");

  auto* suite_cmd = app.add_subcommand("suite", "benchmark suite utilities");
  std::size_t suite_dim = 10;
  std::uint64_t suite_seed = 0;
  auto* suite_list = suite_cmd->add_subcommand("list", "list the 17 suite functions");
  suite_list->add_option("-d,--dim", suite_dim, "dimension");
  suite_list->add_option("--seed", suite_seed, "suite transform seed");

  std::string run_config;
  bool run_strict = false;
  auto* run_cmd = app.add_subcommand("run", "execute an experiment config");
  run_cmd->add_option("config", run_config, "experiment config (JSON)")->required();
  run_cmd->add_flag("--strict", run_strict, "exit 1 when any cell fails");

  std::string cmp_dir, cmp_metric = "cs", cmp_report;
  double cmp_eps = 0.05;
  auto* cmp_cmd = app.add_subcommand("compare", "Friedman/Nemenyi comparison over results");
  cmp_cmd->add_option("results", cmp_dir, "results directory")->required();
  cmp_cmd->add_option("--metric", cmp_metric, "cs|time|nos");
  cmp_cmd->add_option("--eps", cmp_eps, "tolerance to compare at");
  cmp_cmd->add_option("-o,--report", cmp_report, "report.json path");

  std::string plot_dir, plot_fn, plot_out;
  bool plot_csv_only = false;
  auto* plot_cmd = app.add_subcommand("plot", "emit average convergence curves");
  plot_cmd->add_option("results", plot_dir, "results directory")->required();
  plot_cmd->add_option("-f,--function", plot_fn, "function id")->required();
  plot_cmd->add_flag("--csv-only", plot_csv_only, "skip the SVG");
  plot_cmd->add_option("-o,--output", plot_out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (seq_cmd->parsed()) {
    if (*count_opt) seq_opt.count = seq_count;
    if (*prime_opt) seq_opt.prime = seq_prime;
    if (*levels_opt) seq_opt.oa_levels = seq_levels;
    if (*strength_opt) seq_opt.oa_strength = seq_strength;
    return cmd_seq(seq_opt);
  }
  if (suite_cmd->parsed()) {
    if (suite_list->parsed()) return cmd_suite_list(suite_dim, suite_seed);
    std::cerr << "qswarm suite: expected a subcommand (list)\n";
    return kExitUsage;
  }
  if (run_cmd->parsed()) return cmd_run(run_config, run_strict);
  if (cmp_cmd->parsed()) return cmd_compare(cmp_dir, cmp_metric, cmp_eps, cmp_report);
  if (plot_cmd->parsed()) return cmd_plot(plot_dir, plot_fn, plot_csv_only, plot_out);
  return kExitUsage;
}
