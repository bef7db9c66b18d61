#include <benchmark/benchmark.h>

#include <cmath>

#include "qp/census.hpp"
#include "qp/covers.hpp"
#include "qp/ellfib.hpp"
#include "qp/heights.hpp"

using namespace qp;

namespace {

ProjectivePoint golden_point() { return point_from_minimal_data(QuadMinimalData{1, -1, -1}); }

CyclicCoverModel sextic() {
  MultiPoly s(std::vector<std::string>{"x", "y"});
  s.add_term({6, 0}, Rat(1));
  s.add_term({0, 6}, Rat(1));
  return CyclicCoverModel(1, 2, 3, std::move(s));
}

void bm_weil_height(benchmark::State& state) {
  ProjectivePoint P = golden_point();
  for (auto _ : state) benchmark::DoNotOptimize(weil_height(P).value);
}
BENCHMARK(bm_weil_height);

void bm_enumerate_quadratic(benchmark::State& state) {
  double B = std::log(static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_points(1, B, PointField::Quadratic));
}
BENCHMARK(bm_enumerate_quadratic)->Arg(2)->Arg(3);

void bm_audit(benchmark::State& state) {
  CyclicCoverModel c = sextic();
  for (auto _ : state) benchmark::DoNotOptimize(vojta_audit(c, std::log(2.0), 0.01));
}
BENCHMARK(bm_audit);

void bm_ec_mul(benchmark::State& state) {
  WeierstrassModel<Rat> E;
  E.a4 = -1020;
  auto G = ECPoint<Rat>::affine(Rat(34), Rat(68));
  for (auto _ : state) benchmark::DoNotOptimize(ec_mul(E, state.range(0), G));
}
BENCHMARK(bm_ec_mul)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
