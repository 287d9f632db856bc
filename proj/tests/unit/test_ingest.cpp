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

#include <functional>
#include <sstream>

#include <gtest/gtest.h>

#include "infodisc/csv.hpp"
#include "infodisc/error.hpp"
#include "infodisc/ingest.hpp"
#include "oracles.hpp"

namespace {

using namespace infodisc;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an infodisc::Error";
  return ErrorCode::kConfigError;
}

CsvTable parse(const std::string& text, bool header = true) {
  std::istringstream in(text);
  return parse_csv(in, header);
}

Dataset load(const std::string& text, const EncodingManifest& m = {}, const LoadOptions& o = {}) {
  std::istringstream in(text);
  return load_csv(in, m, o);
}

TEST(Csv, QuotesEscapesAndLineEndings) {
  const CsvTable t = parse("\xEF\xBB\xBF" "a,b,c\r\n1,\"x, y\",\"he said \"\"hi\"\"\"\r\n\r\n2,\"multi\nline\",3\n");
  ASSERT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0][1], "x, y");
  EXPECT_EQ(t.rows[0][2], "he said \"hi\"");
  EXPECT_EQ(t.rows[1][1], "multi\nline");
}

TEST(Csv, Errors) {
  EXPECT_EQ(code_of([] { parse("a,b\n1,2,3\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { parse("a,b\n1,\"open\n"); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { read_csv_file("/nonexistent/file.csv"); }), ErrorCode::kIoError);
}

TEST(Encoding, OrdinalAndPassthrough) {
  const auto edu = ColumnEncoding::ordinal_sequence({"HS-grad", "Bachelors", "Masters"});
  EXPECT_EQ(edu.encode(" Bachelors "), 2.0);
  EXPECT_EQ(edu.decode(3.0), "Masters");
  EXPECT_EQ(code_of([&] { edu.encode("PhD"); }), ErrorCode::kUnmappedCategory);
  EXPECT_EQ(ColumnEncoding::passthrough().encode("2.5e1"), 25.0);
  EXPECT_EQ(code_of([] { ColumnEncoding::passthrough().encode("abc"); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { ColumnEncoding::ordinal({{"a", 1.0}, {"a", 2.0}}); }), ErrorCode::kConfigError);
}

TEST(Load, EncodesExcludesAndDropsMissing) {
  EncodingManifest m;
  m.columns.emplace("edu", ColumnEncoding::ordinal_sequence({"low", "mid", "high"}));
  LoadOptions o;
  o.exclude_columns = {"id"};
  const Dataset ds = load("id,age,edu\n1,30,mid\n2,?,low\n3,41,high\n", m, o);
  EXPECT_EQ(ds.feature_names, (std::vector<std::string>{"age", "edu"}));
  ASSERT_EQ(ds.rows(), 2u);
  EXPECT_EQ(ds.dropped_missing, 1u);
  EXPECT_EQ(ds.features(0, 0), 30.0);
  EXPECT_EQ(ds.features(1, 1), 3.0);
  EXPECT_EQ(ds.column_values("id")(1), 3.0);
}

TEST(Load, HeaderlessWithColumnNames) {
  LoadOptions o;
  o.column_names = {"x", "y"};
  const Dataset ds = load("1,2\n3,4\n", {}, o);
  EXPECT_EQ(ds.rows(), 2u);
  o.column_names = {"x"};
  EXPECT_EQ(code_of([&] { load("1,2\n", {}, o); }), ErrorCode::kParseError);
}

TEST(Load, ErrorsCarryContext) {
  EncodingManifest m;
  m.columns.emplace("c", ColumnEncoding::ordinal_sequence({"a"}));
  try {
    load("c\na\nb\n", m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnmappedCategory);
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("'c'"), std::string::npos);
  }
  LoadOptions o;
  o.exclude_columns = {"nope"};
  EXPECT_EQ(code_of([&] { load("a\n1\n", {}, o); }), ErrorCode::kMissingColumn);
}

TEST(Load, Standardize) {
  LoadOptions o;
  o.standardize = true;
  const Dataset ds = load("a,b\n1,5\n3,5\n5,5\n", {}, o);
  EXPECT_NEAR(ds.features.col(0).mean(), 0.0, 1e-15);
  EXPECT_NEAR(ds.features.col(0).squaredNorm() / 3.0, 1.0, 1e-12);
  EXPECT_TRUE(ds.features.col(1).isZero());
}

GroupingSpec age_split() {
  GroupingSpec s;
  s.name = "age";
  s.group1.all_of = {Clause{"age", Comparator::kLe, {25.0}}};
  s.group2.all_of = {Clause{"age", Comparator::kGt, {25.0}}};
  return s;
}

TEST(Split, PredicatesAndOtherwise) {
  LoadOptions o;
  o.exclude_columns = {"race"};
  const Dataset ds = load("age,x,race\n20,1,White\n30,2,Black\n25,3,White\n50,4,Other\n", {}, o);
  GroupSplit split = split_groups(ds, age_split());
  EXPECT_EQ(split.group1.rows(), 2);
  EXPECT_EQ(split.group2.rows(), 2);
  EXPECT_EQ(split.group1(1, 1), 3.0);

  GroupingSpec race;
  race.name = "race";
  race.group1.all_of = {Clause{"race", Comparator::kEq, {std::string("White")}}};
  race.group2.otherwise = true;
  split = split_groups(ds, race);
  EXPECT_EQ(split.group1.rows(), 2);
  EXPECT_EQ(split.group2.rows(), 2);

  GroupingSpec partial;
  partial.name = "partial";
  partial.group1.all_of = {Clause{"race", Comparator::kEq, {std::string("White")}},
                           Clause{"age", Comparator::kLt, {21.0}}};
  partial.group2.all_of = {Clause{"race", Comparator::kIn, {std::string("Black"), std::string("Other")}}};
  split = split_groups(ds, partial);
  EXPECT_EQ(split.group1.rows(), 1);
  EXPECT_EQ(split.group2.rows(), 2);
  EXPECT_EQ(split.excluded, 1u);
}

TEST(Split, Errors) {
  const Dataset ds = load("age,x\n20,1\n22,2\n");
  EXPECT_EQ(code_of([&] { split_groups(ds, age_split()); }), ErrorCode::kEmptyGroup);
  GroupingSpec bad = age_split();
  bad.group1.all_of[0].column = "missing";
  EXPECT_EQ(code_of([&] { split_groups(ds, bad); }), ErrorCode::kMissingColumn);
  bad = age_split();
  bad.group1.all_of[0].values = {std::string("x")};
  EXPECT_EQ(code_of([&] { split_groups(ds, bad); }), ErrorCode::kConfigError);
  bad = age_split();
  bad.group1.otherwise = bad.group2.otherwise = true;
  EXPECT_EQ(code_of([&] { split_groups(ds, bad); }), ErrorCode::kConfigError);
}

TEST(Comparators, ParseAllSpellings) {
  EXPECT_EQ(parse_comparator("<="), Comparator::kLe);
  EXPECT_EQ(parse_comparator("not_in"), Comparator::kNotIn);
  EXPECT_FALSE(parse_comparator("~").has_value());
}

TEST(GroundTruth, FitRecoversExactLinearLabel) {
  oracle::Rng rng(61);
  const Matrix x = oracle::gaussian_matrix(50, 6, rng);
  const Vector w = oracle::gaussian_vector(6, rng);
  EXPECT_LT((fit_ground_truth(x, x * w).weights() - w).norm(), 1e-10);
}

}  // namespace
