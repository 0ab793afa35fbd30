#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "qswarm/bench.hpp"
#include "qswarm/rng.hpp"

using namespace qswarm;
using bench::Base;

namespace {

double max_abs_offdiag_error(const bench::Matrix& r) {
  // || R^T R - I ||_max
  double worst = 0.0;
  for (std::size_t i = 0; i < r.n; ++i) {
    for (std::size_t j = 0; j < r.n; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < r.n; ++k) dot += r.at(k, i) * r.at(k, j);
      worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

double determinant(bench::Matrix m) {
  double det = 1.0;
  const std::size_t n = m.n;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m.at(r, c)) > std::abs(m.at(pivot, c))) pivot = r;
    }
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.a[pivot * n + j], m.a[c * n + j]);
      det = -det;
    }
    if (m.at(c, c) == 0.0) return 0.0;
    det *= m.at(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m.at(r, c) / m.at(c, c);
      for (std::size_t j = c; j < n; ++j) m.at(r, j) -= f * m.at(c, j);
    }
  }
  return det;
}

}  // namespace

TEST_CASE("base golden values from hand evaluation") {
  const std::vector<double> z10 = {1.0, 0.0};
  CHECK(bench::eval_base(Base::Zakharov, z10) == Catch::Approx(1.3125).margin(1e-12));

  const std::vector<double> ones = {1.0, 1.0};
  CHECK(bench::eval_base(Base::Rastrigin, ones) == Catch::Approx(2.0).margin(1e-9));
  CHECK(bench::eval_base(Base::Rosenbrock, z10) == Catch::Approx(901.0).margin(1e-9));
  CHECK(bench::eval_base(Base::BentCigar, ones) == Catch::Approx(1.0 + 1e6).margin(1e-6));
  CHECK(bench::eval_base(Base::Elliptic, ones) == Catch::Approx(1.0 + 1e6).margin(1e-6));
  CHECK(bench::eval_base(Base::Ackley, ones) ==
        Catch::Approx(20.0 + std::numbers::e - 20.0 * std::exp(-0.2) - std::exp(1.0))
            .margin(1e-12));
  const std::vector<double> g100 = {100.0, 0.0};
  CHECK(bench::eval_base(Base::Griewank, g100) ==
        Catch::Approx(1.0 + 10000.0 / 4000.0 - std::cos(100.0)).margin(1e-12));
}

TEST_CASE("every base is zero at its origin") {
  for (Base b : {Base::Zakharov, Base::Rosenbrock, Base::Rastrigin, Base::SchafferF6,
                 Base::LunacekBiRastrigin, Base::NonContRastrigin, Base::Levy, Base::Ackley,
                 Base::Griewank, Base::ModSchwefel, Base::BentCigar, Base::HGBat,
                 Base::Elliptic, Base::Katsuura, Base::GriewankRosenbrock}) {
    for (std::size_t dim : {2, 5, 10}) {
      const std::vector<double> zero(dim, 0.0);
      INFO(bench::base_name(b) << " dim " << dim);
      CHECK(std::abs(bench::eval_base(b, zero)) < 1e-10);
    }
  }
}

TEST_CASE("bases are nonnegative on random inputs") {
  rng::Engine eng(3);
  for (Base b : {Base::Zakharov, Base::Rosenbrock, Base::Rastrigin, Base::SchafferF6,
                 Base::LunacekBiRastrigin, Base::NonContRastrigin, Base::Levy, Base::Ackley,
                 Base::Griewank, Base::ModSchwefel, Base::BentCigar, Base::HGBat,
                 Base::Elliptic, Base::Katsuura, Base::GriewankRosenbrock}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> z(6);
      for (auto& v : z) v = (eng.uniform01() - 0.5) * 2.0 * base_shrink(b) * 100.0;
      INFO(bench::base_name(b));
      CHECK(bench::eval_base(b, z) >= -1e-9);
    }
  }
}

TEST_CASE("monotone penalty along the first axis for cigar and elliptic") {
  for (Base b : {Base::BentCigar, Base::Elliptic}) {
    double prev = -1.0;
    for (double t = 0.0; t <= 50.0; t += 2.5) {
      const std::vector<double> z = {t, 0.0, 0.0};
      const double v = bench::eval_base(b, z);
      CHECK(v >= prev);
      prev = v;
    }
  }
}

TEST_CASE("make_transform: deterministic, orthogonal, interior shift, det +1") {
  const std::vector<double> lower(10, -100.0), upper(10, 100.0);
  const auto a = bench::make_transform(42, lower, upper);
  const auto b = bench::make_transform(42, lower, upper);
  CHECK(a.shift == b.shift);
  CHECK(a.rotation.a == b.rotation.a);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    for (std::size_t dim : {2, 10, 30}) {
      const std::vector<double> lo(dim, -100.0), hi(dim, 100.0);
      const auto t = bench::make_transform(seed, lo, hi);
      CHECK(max_abs_offdiag_error(t.rotation) < 1e-10);
      for (double s : t.shift) {
        CHECK(s > -100.0 + 0.1 * 200.0 - 1e-12);
        CHECK(s < 100.0 - 0.1 * 200.0 + 1e-12);
      }
      CHECK(determinant(t.rotation) == Catch::Approx(1.0).margin(1e-8));
    }
  }
}

TEST_CASE("simple spec: rastrigin with no transform evaluates bias at the origin") {
  bench::ObjectiveSpec spec;
  spec.id = "unit";
  spec.dim = 3;
  spec.bias = 500.0;
  spec.lower.assign(3, -100.0);
  spec.upper.assign(3, 100.0);
  spec.shift.assign(3, 0.0);
  spec.rotation = bench::Matrix::identity(3);
  spec.kind = bench::SimpleSpec{Base::Rastrigin};
  const std::vector<double> origin(3, 0.0);
  CHECK(spec.eval(origin) == Catch::Approx(500.0).margin(1e-9));
  const std::vector<double> wrong(4, 0.0);
  CHECK_THROWS_AS(spec.eval(wrong), std::invalid_argument);
}

TEST_CASE("standard suite shape and bias table") {
  const auto suite = bench::standard_suite(10, 7);
  REQUIRE(suite.size() == 17);
  const double biases[] = {300, 400, 500, 600, 700, 800, 900, 1100, 1400,
                           1500, 1600, 1700, 1900, 2000, 2100, 2200, 2400};
  for (std::size_t i = 0; i < 17; ++i) {
    CHECK(suite[i].bias == biases[i]);
    CHECK(suite[i].dim == 10);
  }
  CHECK(suite[0].id == "F1");
  int simple = 0, hybrid = 0, composition = 0;
  for (const auto& spec : suite) {
    if (std::holds_alternative<bench::SimpleSpec>(spec.kind)) ++simple;
    if (std::holds_alternative<bench::HybridSpec>(spec.kind)) ++hybrid;
    if (std::holds_alternative<bench::CompositionSpec>(spec.kind)) ++composition;
  }
  CHECK(simple == 7);
  CHECK(hybrid == 7);
  CHECK(composition == 3);
}

TEST_CASE("every suite function attains its bias at the shift") {
  for (std::uint64_t seed : {1ull, 99ull}) {
    const auto suite = bench::standard_suite(10, seed);
    for (const auto& spec : suite) {
      INFO(spec.id << " seed " << seed);
      CHECK(spec.eval(spec.shift) == Catch::Approx(spec.bias).margin(1e-9));
    }
  }
}

TEST_CASE("suite functions are reproducible per (seed, index) and differ across seeds") {
  const auto a = bench::make_suite_function(3, 10, 5);
  const auto b = bench::make_suite_function(3, 10, 5);
  CHECK(a.shift == b.shift);
  CHECK(a.rotation.a == b.rotation.a);
  const auto c = bench::make_suite_function(3, 10, 6);
  CHECK(a.shift != c.shift);
  // identical whether built alone or inside the full suite
  const auto suite = bench::standard_suite(10, 5);
  CHECK(suite[2].shift == a.shift);
}

TEST_CASE("hybrid partition: blocks cover D and small D fails") {
  const auto f8 = bench::make_suite_function(8, 10, 1);
  const auto& h = std::get<bench::HybridSpec>(f8.kind);
  std::size_t total = 0;
  for (auto s : h.block_sizes) {
    CHECK(s >= 1);
    total += s;
  }
  CHECK(total == 10);
  double prop_sum = 0.0;
  for (double p : h.proportions) prop_sum += p;
  CHECK(prop_sum == Catch::Approx(1.0).margin(1e-12));
  CHECK_THROWS_AS(bench::make_suite_function(8, 2, 1), std::invalid_argument);
}

TEST_CASE("hybrid evaluation equals the hand-summed block oracle") {
  bench::ObjectiveSpec spec;
  spec.id = "H";
  spec.dim = 4;
  spec.bias = 100.0;
  spec.lower.assign(4, -100.0);
  spec.upper.assign(4, 100.0);
  spec.shift = {1.0, 2.0, 3.0, 4.0};
  spec.rotation = bench::Matrix::identity(4);
  bench::HybridSpec h;
  h.bases = {Base::Rastrigin, Base::Ackley};
  h.proportions = {0.5, 0.5};
  h.block_sizes = {2, 2};
  h.permutation = {2, 0, 3, 1};
  spec.kind = h;

  rng::Engine eng(21);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> x(4);
    for (auto& v : x) v = (eng.uniform01() - 0.5) * 200.0;
    std::vector<double> w(4);
    for (std::size_t d = 0; d < 4; ++d) w[d] = x[h.permutation[d]] - spec.shift[h.permutation[d]];
    const double shrink = bench::base_shrink(Base::Rastrigin);
    const std::vector<double> block1 = {w[0] * shrink, w[1] * shrink};
    const std::vector<double> block2 = {w[2], w[3]};
    const double manual = 100.0 + bench::eval_base(Base::Rastrigin, block1) +
                          bench::eval_base(Base::Ackley, block2);
    CHECK(spec.eval(x) == Catch::Approx(manual).margin(1e-9));
  }
}

TEST_CASE("composition weights are a partition of unity") {
  const auto f15 = bench::make_suite_function(15, 10, 3);
  const auto& comp = std::get<bench::CompositionSpec>(f15.kind);
  rng::Engine eng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> x(10);
    for (auto& v : x) v = (eng.uniform01() - 0.5) * 200.0;
    const auto w = bench::composition_weights(comp, x);
    double total = 0.0;
    for (double v : w) {
      CHECK(v >= 0.0);
      total += v;
    }
    CHECK(total == Catch::Approx(1.0).margin(1e-12));
  }
  // exactly at a component shift the weight collapses onto that component
  const auto w0 = bench::composition_weights(comp, comp.components[1].shift);
  CHECK(w0[1] == 1.0);
  CHECK(w0[0] == 0.0);
}

TEST_CASE("transform file loads and injects") {
  const auto path = std::filesystem::temp_directory_path() / "qswarm_transform.txt";
  {
    std::ofstream out(path);
    out << "# shift\n10 -20\n# rotation\n0 1\n1 0\n";
  }
  const auto t = bench::load_transform(path.string(), 2);
  CHECK(t.shift == std::vector<double>{10.0, -20.0});
  CHECK(t.rotation.at(0, 1) == 1.0);

  const auto injected = bench::make_suite_function(1, 2, 0, t);
  CHECK(injected.shift == t.shift);
  CHECK(injected.eval(injected.shift) == Catch::Approx(300.0).margin(1e-9));

  const auto bad = std::filesystem::temp_directory_path() / "qswarm_transform_bad.txt";
  {
    std::ofstream out(bad);
    out << "# shift\n10 -20 30\n# rotation\n0 1\n1 0\n";
  }
  CHECK_THROWS_AS(bench::load_transform(bad.string(), 2), std::runtime_error);
}

TEST_CASE("suite_index parses ids") {
  CHECK(bench::suite_index("F1") == 1);
  CHECK(bench::suite_index("f17") == 17);
  CHECK(bench::suite_index("F18") == 0);
  CHECK(bench::suite_index("G2") == 0);
  CHECK(bench::suite_index("") == 0);
}
