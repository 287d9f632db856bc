// Copyright 2026 The infodisc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>

#include <benchmark/benchmark.h>

#include "infodisc/conditions.hpp"
#include "infodisc/experiment.hpp"
#include "infodisc/linalg.hpp"
#include "infodisc/principal.hpp"

namespace {

using namespace infodisc;

Matrix random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::srand(seed);
  return Matrix::Random(rows, cols);
}

void BM_SubspaceProjection(benchmark::State& state) {
  const Matrix data = random_matrix(state.range(0), 24, 1);
  for (auto _ : state) benchmark::DoNotOptimize(subspace_projection(data, 5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SubspaceProjection)->Arg(1000)->Arg(10000)->Arg(30000);

PopulationModel random_population(Eigen::Index d) {
  const Matrix x1 = random_matrix(4 * d, d, 2);
  const Matrix x2 = random_matrix(4 * d, d, 3);
  const Matrix b = random_matrix(d, d, 4);
  const Matrix a = b * b.transpose() + Matrix::Identity(d, d);
  const auto k = static_cast<std::size_t>(d / 2);
  return PopulationModel(ScoringRule::ones(static_cast<std::size_t>(d)),
                         SubgroupSpec::from_data(GroupId::kFirst, CostMatrix(a), x1, k),
                         SubgroupSpec::from_data(GroupId::kSecond, CostMatrix::identity(static_cast<std::size_t>(d)), x2, k));
}

void BM_WelfareRuleAndConditions(benchmark::State& state) {
  const PopulationModel pop = random_population(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(welfare_maximizing_rule(pop));
    benchmark::DoNotOptimize(check_conditions(pop));
  }
}
BENCHMARK(BM_WelfareRuleAndConditions)->Arg(14)->Arg(24)->Arg(100);

void BM_Alignment(benchmark::State& state) {
  const PopulationModel pop = random_population(24);
  for (auto _ : state) {
    benchmark::DoNotOptimize(alignment(pop.group1().projection(), pop.group2().projection(),
                                       static_cast<std::size_t>(state.range(0)), 0));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Alignment)->Arg(10000)->Arg(100000);

void BM_AnalyzeDisparityModel(benchmark::State& state) {
  const PopulationModel pop = disparity_example(0.1);
  for (auto _ : state) benchmark::DoNotOptimize(analyze_population("p1", pop, 10000, 0));
}
BENCHMARK(BM_AnalyzeDisparityModel);

}  // namespace

BENCHMARK_MAIN();
