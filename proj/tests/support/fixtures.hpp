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

#pragma once

// Builders that turn oracle matrices into library objects, plus a synthetic
// table with the column layout of the public credit-default data.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include "infodisc/principal.hpp"
#include "oracles.hpp"

namespace fixtures {

inline infodisc::PopulationModel to_population(const oracle::Instance& s) {
  using namespace infodisc;
  return PopulationModel(ScoringRule(s.w_star),
                         SubgroupSpec(GroupId::kFirst, CostMatrix(s.a1), ProjectionMatrix(s.p1)),
                         SubgroupSpec(GroupId::kSecond, CostMatrix(s.a2), ProjectionMatrix(s.p2)));
}

/// Random SPD costs, random subspaces of random rank, random w*.
inline oracle::Instance random_instance(std::size_t d, oracle::Rng& rng) {
  oracle::Instance s;
  s.w_star = oracle::gaussian_vector(d, rng);
  s.a1 = oracle::random_spd(d, rng);
  s.a2 = oracle::random_spd(d, rng);
  s.p1 = oracle::random_projection(d, oracle::uniform_int(1, d, rng), rng);
  s.p2 = oracle::random_projection(d, oracle::uniform_int(1, d, rng), rng);
  return s;
}

/// Writes `rows` records with the 25 columns of the credit-default table.
/// Ages, education, sex and marriage codes follow the public coding.
inline void write_credit_like_csv(const std::filesystem::path& path, std::size_t rows,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_int_distribution<int> age(21, 70), sex(1, 2), edu(1, 4), mar(1, 3), pay(-2, 3);
  std::ofstream out(path);
  out << "ID,LIMIT_BAL,SEX,EDUCATION,MARRIAGE,AGE";
  for (const char* p : {"PAY_0", "PAY_2", "PAY_3", "PAY_4", "PAY_5", "PAY_6"}) out << ',' << p;
  for (int i = 1; i <= 6; ++i) out << ",BILL_AMT" << i;
  for (int i = 1; i <= 6; ++i) out << ",PAY_AMT" << i;
  out << ",default payment next month\n";
  for (std::size_t r = 0; r < rows; ++r) {
    const int a = age(rng);
    const int e = edu(rng);
    const double wealth = std::exp(0.5 * n(rng)) * (1.0 + 0.03 * (a - 20) + 0.4 * (4 - e));
    out << (r + 1) << ',' << static_cast<long>(50000 * wealth) << ',' << sex(rng) << ',' << e
        << ',' << mar(rng) << ',' << a;
    const int p0 = pay(rng);
    for (int i = 0; i < 6; ++i) out << ',' << std::clamp(p0 + (i % 2) * pay(rng) / 2, -2, 8);
    const double bill = 20000 * wealth * std::exp(0.3 * n(rng));
    for (int i = 0; i < 6; ++i) out << ',' << static_cast<long>(bill * (1.0 - 0.05 * i) + 1000 * n(rng));
    for (int i = 0; i < 6; ++i) out << ',' << static_cast<long>(std::abs(2000 * wealth * (1.0 + 0.5 * n(rng))));
    out << ',' << (n(rng) + 0.3 * p0 > 1.0 ? 1 : 0) << '\n';
  }
}

}  // namespace fixtures
