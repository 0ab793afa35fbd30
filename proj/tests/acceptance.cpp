// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria 6-8 share one desk-scale experiment (7 simple
// functions, D=10, G=2000, R=30) executed twice for the byte-identity check.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qswarm/bench.hpp"
#include "qswarm/experiment.hpp"
#include "qswarm/hclpso.hpp"
#include "qswarm/seq.hpp"
#include "qswarm/stats.hpp"

namespace fs = std::filesystem;
using namespace qswarm;
using json = nlohmann::ordered_json;

namespace {

int g_failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
  if (!pass) ++g_failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- criterion 1: Nemenyi critical difference oracle ------------------------

void criterion_1() {
  const double cd5 = stats::nemenyi_cd(5, 17);
  const double cd4 = stats::nemenyi_cd(4, 17);
  const bool pass = std::abs(cd5 - 1.4795) <= 0.001 && std::abs(cd4 - 1.137) <= 0.001;
  std::ostringstream d;
  d << "nemenyi_cd(5,17) = " << cd5 << " (want 1.4795 +/- 0.001), nemenyi_cd(4,17) = " << cd4
    << " (want 1.137 +/- 0.001)";
  report(1, pass, d.str());
}

// --- criterion 2: Friedman statistic over the published rank table ----------

void criterion_2() {
  const std::vector<std::vector<double>> ranks = {
      {2, 3.5, 3.5, 5, 1}, {5, 3, 2, 1, 4}, {3, 1, 4, 2, 5}, {5, 1, 3, 2, 4},
      {3, 5, 2, 4, 1},     {1, 2, 5, 3, 4}, {5, 4, 2, 3, 1}, {2, 5, 1, 4, 3},
      {5, 3.5, 3.5, 1, 2}, {2, 1, 3, 4, 5}, {1, 2, 5, 3, 4}, {1, 5, 4, 3, 2},
      {4, 5, 2, 3, 1},     {2, 4, 3, 1, 5}, {4, 4, 4, 2, 1}, {2, 5, 4, 3, 1},
      {5, 3, 2, 4, 1}};
  const auto rt = stats::RankTable::from_ranks(ranks);
  const auto fr = stats::friedman_tau(rt);
  const bool pass = !fr.infinite && std::abs(fr.tau_f - 0.4907) <= 0.05;
  std::ostringstream d;
  d << "tau_F over the 17x5 CS rank table = " << fr.tau_f << " (want 0.4907 +/- 0.05)";
  report(2, pass, d.str());
}

// --- criterion 3: sequence generators against frozen goldens ----------------

void criterion_3() {
  bool pass = true;
  std::string why;

  seq::HuaWangStream hw(1, 5);
  const double hw_expect[] = {0.618034, 0.236068, 0.854102};
  for (double want : hw_expect) {
    if (std::abs(hw.next()[0] - want) > 1e-6) {
      pass = false;
      why = "hua-wang point mismatch";
    }
  }

  seq::HaltonStream halton(2);
  const double base2[] = {0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875, 0.0625};
  const double base3[] = {1.0 / 3, 2.0 / 3, 1.0 / 9, 4.0 / 9, 7.0 / 9, 2.0 / 9, 5.0 / 9, 8.0 / 9};
  for (int i = 0; i < 8; ++i) {
    const auto p = halton.next();
    if (std::abs(p[0] - base2[i]) > 1e-12 || std::abs(p[1] - base3[i]) > 1e-12) {
      pass = false;
      why = "halton radical inverse mismatch";
    }
  }

  const auto oa = seq::oa_point_set(9, 2);
  const double lattice[] = {1.0 / 6.0, 3.0 / 6.0, 5.0 / 6.0};
  std::size_t row = 0;
  for (int i = 0; i < 3 && pass; ++i) {
    for (int j = 0; j < 3; ++j, ++row) {
      if (std::abs(oa.point(row)[0] - lattice[i]) > 1e-12 ||
          std::abs(oa.point(row)[1] - lattice[j]) > 1e-12) {
        pass = false;
        why = "orthogonal array is not the centered 3x3 grid";
      }
    }
  }
  report(3, pass,
         pass ? "hua-wang p=5, halton bases 2/3, and OA L9 grid all match goldens" : why);
}

// --- criterion 4: uniformity premise -----------------------------------------

void criterion_4() {
  seq::HaltonStream h(2);
  const double cl2_halton = seq::centered_l2_discrepancy(seq::take(h, 256));
  std::vector<double> random_cl2;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    seq::RandomStream r(2, s);
    random_cl2.push_back(seq::centered_l2_discrepancy(seq::take(r, 256)));
  }
  double mean = 0.0;
  for (double v : random_cl2) mean += v;
  mean /= static_cast<double>(random_cl2.size());
  double var = 0.0;
  for (double v : random_cl2) var += (v - mean) * (v - mean);
  var /= static_cast<double>(random_cl2.size() - 1);
  const double sd = std::sqrt(var);
  const bool pass = cl2_halton < mean - 2.0 * sd;
  std::ostringstream d;
  d << "CL2(halton,256) = " << cl2_halton << " vs random mean " << mean << " - 2 sd ("
    << mean - 2.0 * sd << ")";
  report(4, pass, d.str());
}

// --- criterion 5: engine invariant property suite ----------------------------

void criterion_5() {
  bool pass = true;
  std::string why;
  rng::Engine gen(20240);
  const seq::StreamSpec kinds[3] = {
      [] { seq::StreamSpec s; s.kind = seq::StreamSpec::Kind::Halton; return s; }(),
      [] { seq::StreamSpec s; s.kind = seq::StreamSpec::Kind::HuaWang; return s; }(),
      [] {
        seq::StreamSpec s;
        s.kind = seq::StreamSpec::Kind::OrthogonalArray;
        s.oa_points = 1024;  // large enough that these short runs never wrap
        return s;
      }()};

  for (int trial = 0; trial < 24 && pass; ++trial) {
    const std::size_t dim = trial % 2 == 0 ? 2 : 10;
    hclpso::RunConfig cfg;
    cfg.n_explore = 2 + gen.bounded(7);
    cfg.n_exploit = 2 + gen.bounded(8);
    cfg.max_iters = 20 + gen.bounded(31);
    cfg.seed = gen.bounded(1u << 30);
    const std::size_t fn_index = 1 + 2 * gen.bounded(4);  // F1, F3, F5, F7: simple
    const auto obj = bench::make_suite_function(fn_index, dim, trial);
    const auto lds = kinds[gen.bounded(3)];
    hclpso::VariantScheme variant;
    switch (gen.bounded(4)) {
      case 0: variant = hclpso::VariantScheme::all_random(); break;
      case 1: variant = hclpso::VariantScheme::lds_learning(lds); break;
      case 2: variant = hclpso::VariantScheme::lds_social(lds); break;
      default: variant = hclpso::VariantScheme::lds_all(lds); break;
    }

    // budget + monotonicity via the run wrapper
    const auto result = hclpso::run(obj, cfg, variant);
    if (result.init_points != cfg.swarm_size() ||
        result.explore_points != cfg.max_iters * cfg.n_explore ||
        result.learning_points != cfg.max_iters * cfg.n_exploit ||
        result.social_points != cfg.max_iters * cfg.n_exploit) {
      pass = false;
      why = "stream budget mismatch";
      break;
    }
    for (std::size_t t = 1; t < result.curve.size(); ++t) {
      if (result.curve[t] > result.curve[t - 1]) {
        pass = false;
        why = "best-so-far curve increased";
        break;
      }
    }
    if (!pass) break;

    // velocity clamp + subpopulation isolation via explicit stepping
    auto streams = hclpso::make_streams(variant, dim, cfg.seed);
    hclpso::Swarm swarm(obj, cfg, *streams.init, hclpso::exemplar_seed(cfg.seed));
    const double vmax = cfg.velocity_clamp * 200.0;
    for (std::size_t g = 0; g < cfg.max_iters && pass; ++g) {
      swarm.step(*streams.explore, *streams.learning, *streams.social);
      for (std::size_t i = 0; i < swarm.particles().size(); ++i) {
        const auto& p = swarm.particles()[i];
        for (double v : p.velocity) {
          if (std::abs(v) > vmax + 1e-9) {
            pass = false;
            why = "velocity clamp violated";
          }
        }
        if (i < cfg.n_explore) {
          for (auto e : p.exemplar) {
            if (e >= cfg.n_explore) {
              pass = false;
              why = "exploration exemplar referenced the exploitation subpopulation";
            }
          }
        }
      }
    }
    if (!pass) break;

    // scheme equivalence: preset 3 == explicit all-random bindings
    const auto preset = hclpso::run(obj, cfg, hclpso::VariantScheme::all_random());
    hclpso::VariantScheme manual;
    const auto explicit_run = hclpso::run(obj, cfg, manual);
    if (preset.curve != explicit_run.curve) {
      pass = false;
      why = "all-random preset diverged from explicit random bindings";
    }
  }
  report(5, pass, pass ? "24 randomized configs: monotone, clamped, budgeted, isolated, "
                         "preset-equivalent"
                       : why);
}

// --- criteria 6-8: desk-scale replication -------------------------------------

struct DeskExperiment {
  experiment::MatrixResult result;
  fs::path dir;
};

constexpr std::uint64_t kSuiteSeed = 1;
constexpr std::uint64_t kMasterSeed = 2024;
constexpr double kEps = 0.05;

experiment::MatrixConfig desk_config() {
  experiment::MatrixConfig cfg;
  for (std::size_t i = 1; i <= 7; ++i) {
    cfg.functions.push_back(bench::make_suite_function(i, 10, kSuiteSeed));
  }
  seq::StreamSpec halton;
  halton.kind = seq::StreamSpec::Kind::Halton;
  seq::StreamSpec huawang;
  huawang.kind = seq::StreamSpec::Kind::HuaWang;
  auto rand_variant = hclpso::VariantScheme::all_random();
  rand_variant.label = "rand";
  auto halton_variant = hclpso::VariantScheme::lds_learning(halton);
  auto hw_variant = hclpso::VariantScheme::lds_learning(huawang);
  cfg.algorithms = {{"rand", rand_variant},
                    {"hclpso1-halton", halton_variant},
                    {"hclpso1-huawang", hw_variant}};
  cfg.runs = 30;
  cfg.run.n_explore = 15;
  cfg.run.n_exploit = 25;
  cfg.run.max_iters = 2000;
  cfg.eps_tols = {kEps};
  cfg.master_seed = kMasterSeed;
  return cfg;
}

DeskExperiment execute_desk(const fs::path& dir) {
  const auto cfg = desk_config();
  DeskExperiment desk;
  desk.result = experiment::run_matrix(cfg);
  desk.dir = dir;
  fs::remove_all(dir);
  json manifest;
  manifest["created"] = "acceptance";  // wall-clock field excluded from identity checks
  manifest["master_seed"] = kMasterSeed;
  manifest["suite"] = experiment::suite_manifest(cfg.functions, kSuiteSeed);
  experiment::persist(dir, desk.result, manifest);
  return desk;
}

std::optional<double> cs_of(const experiment::MatrixResult& result, const std::string& fn,
                            const std::string& alg) {
  for (const auto& s : result.summaries) {
    if (s.function == fn && s.algorithm == alg && s.eps_tol == kEps) {
      if (s.cs) return static_cast<double>(*s.cs);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

void criteria_6_7_8() {
  const auto base = fs::temp_directory_path() / "qswarm_acceptance";
  std::printf("running the desk-scale matrix (7 functions x 3 algorithms x 30 runs, "
              "G=2000) twice...\n");
  const auto first = execute_desk(base / "desk_a");
  const auto second = execute_desk(base / "desk_b");

  const std::vector<std::string> fns = {"F1", "F2", "F3", "F4", "F5", "F6", "F7"};
  const std::vector<std::string> algs = {"rand", "hclpso1-halton", "hclpso1-huawang"};

  // rendered CS table for the log
  std::printf("%-5s %12s %16s %16s\n", "fn", "rand", "hclpso1-halton", "hclpso1-huawang");
  for (const auto& fn : fns) {
    std::printf("%-5s", fn.c_str());
    for (const auto& alg : algs) {
      const auto cs = cs_of(first.result, fn, alg);
      if (cs) {
        std::printf(" %16.0f", *cs);
      } else {
        std::printf(" %16s", "-");
      }
    }
    std::printf("\n");
  }

  // criterion 6a: strictly smaller CS than rand on >= 5 of 7 functions,
  // treating FAIL as worse than any finite CS
  bool pass6 = true;
  std::ostringstream detail6;
  for (std::size_t a = 1; a < algs.size(); ++a) {
    int wins = 0;
    for (const auto& fn : fns) {
      const auto rand_cs = cs_of(first.result, fn, "rand");
      const auto lds_cs = cs_of(first.result, fn, algs[a]);
      const double rand_value = rand_cs ? *rand_cs : std::numeric_limits<double>::infinity();
      const double lds_value = lds_cs ? *lds_cs : std::numeric_limits<double>::infinity();
      if (lds_value < rand_value) ++wins;
    }
    detail6 << algs[a] << " beats rand on " << wins << "/7; ";
    if (wins < 5) pass6 = false;
  }

  // criterion 6b: Friedman rejects and both LDS variants rank above rand
  std::vector<std::vector<stats::Cell>> cs_table;
  for (const auto& fn : fns) {
    std::vector<stats::Cell> row;
    for (const auto& alg : algs) row.push_back(cs_of(first.result, fn, alg));
    cs_table.push_back(std::move(row));
  }
  const auto cs_cmp = stats::compare(cs_table, stats::Direction::LowerIsBetter);
  detail6 << "tau_F = " << (cs_cmp.friedman.infinite ? -1.0 : cs_cmp.friedman.tau_f)
          << (cs_cmp.friedman.infinite ? " (inf)" : "") << ", tau_c = " << cs_cmp.tau_critical
          << ", ranks rand/halton/huawang = " << cs_cmp.table.average_ranks[0] << "/"
          << cs_cmp.table.average_ranks[1] << "/" << cs_cmp.table.average_ranks[2];
  if (!cs_cmp.reject_null) pass6 = false;
  if (!(cs_cmp.table.average_ranks[1] < cs_cmp.table.average_ranks[0]) ||
      !(cs_cmp.table.average_ranks[2] < cs_cmp.table.average_ranks[0])) {
    pass6 = false;
  }
  report(6, pass6, detail6.str());

  // criterion 7: the NoS Friedman test does not reject
  std::vector<std::vector<stats::Cell>> nos_table;
  for (const auto& fn : fns) {
    std::vector<stats::Cell> row;
    for (const auto& alg : algs) {
      for (const auto& s : first.result.summaries) {
        if (s.function == fn && s.algorithm == alg && s.eps_tol == kEps) {
          row.push_back(static_cast<double>(s.nos));
        }
      }
    }
    nos_table.push_back(std::move(row));
  }
  const auto nos_cmp = stats::compare(nos_table, stats::Direction::HigherIsBetter);
  std::ostringstream detail7;
  detail7 << "NoS tau_F = " << (nos_cmp.friedman.infinite ? -1.0 : nos_cmp.friedman.tau_f)
          << " vs tau_c = " << nos_cmp.tau_critical
          << (nos_cmp.reject_null ? " (rejected)" : " (not rejected)");
  report(7, !nos_cmp.reject_null, detail7.str());

  // criterion 8: byte-identical artifacts across the repetition
  bool pass8 = true;
  std::string why8;
  for (const auto& fn : fns) {
    for (const auto& alg : algs) {
      for (std::size_t k = 0; k < 30; ++k) {
        const auto rel = fs::path(fn) / alg / ("run" + std::to_string(k) + ".csv");
        if (slurp(first.dir / rel) != slurp(second.dir / rel)) {
          pass8 = false;
          why8 = "curve CSV differs: " + rel.string();
        }
      }
    }
  }
  // summary.json compared with the wall-clock mean_time_s field masked, the
  // same way the manifest timestamp is excluded
  auto masked_summary = [](const fs::path& dir) {
    auto s = json::parse(slurp(dir / "summary.json"));
    for (auto& entry : s) entry["mean_time_s"] = nullptr;
    return s.dump();
  };
  if (pass8 && masked_summary(first.dir) != masked_summary(second.dir)) {
    pass8 = false;
    why8 = "summary.json differs beyond timing fields";
  }
  report(8, pass8,
         pass8 ? "repeated experiment produced byte-identical curves and summaries" : why8);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criteria_6_7_8();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
  } else {
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
