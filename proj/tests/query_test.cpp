// Copyright 2026 The ODK Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "odk/query.hpp"
#include "odk/vocab.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

namespace odk {
namespace {

std::string nt(std::string_view iri) { return "<" + std::string(iri) + ">"; }

oracle::Rows to_rows(const ResultTable& table) {
  oracle::Rows rows;
  for (const auto& r : table.rows) {
    std::vector<std::string> row;
    for (const auto& cell : r) row.push_back(cell ? cell->ntriples() : "");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::pair<std::string, std::string>> lexical_pairs(const ResultTable& t) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& r : t.rows) out.emplace_back(r.at(0)->value(), r.at(1)->value());
  return out;
}

ErrorCode parse_error(std::string_view q) {
  try {
    parse_query(q);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parsed: " << q;
  return ErrorCode::InternalConsistency;
}

// Hand translation of the two listings, evaluated by enumeration.
oracle::OQuery fig1_oracle() {
  oracle::OQuery q;
  q.select = {"task"};
  q.concats.push_back({"dataset", ",", "dataset", true});
  q.patterns = {
      {nt(testing::kComparisonRoot), {nt(vocab::kCompareContribution)}, "?contribution"},
      {"?contribution", {nt(vocab::kRdfType)}, nt(vocab::kDataset)},
      {"?contribution", {nt(vocab::kRdfsLabel)}, "?dataset"},
      {"?contribution", {nt(vocab::kResearchProblem), nt(vocab::kRdfsLabel)}, "?task"}};
  q.group_by = {"task"};
  return q;
}

oracle::OQuery fig2_oracle() {
  oracle::OQuery q;
  q.distinct = true;
  q.select = {"concept"};
  q.concats.push_back({"dataset", ",", std::nullopt, false});
  q.patterns = {
      {nt(testing::kComparisonRoot), {nt(vocab::kCompareContribution)}, "?contribution"},
      {"?contribution", {nt(vocab::kRdfType)}, nt(vocab::kDataset)},
      {"?contribution", {nt(vocab::kRdfsLabel)}, "?dataset"},
      {"?contribution", {nt(vocab::kLabeledEntityType), nt(vocab::kRdfsLabel)}, "?concept"}};
  q.filters = {{{"concept", "=", "\"Method\""}, {"concept", "=", "\"Research problem\""}}};
  q.group_by = {"concept"};
  return q;
}

class FixtureQueries : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { graph_ = new Graph(testing::fixture_graph()); }
  static void TearDownTestSuite() { delete graph_; }
  static Graph* graph_;
};
Graph* FixtureQueries::graph_ = nullptr;

TEST_F(FixtureQueries, TaskListingGroupsDatasetsPerProblem) {
  const auto result = evaluate(*graph_, parse_query(testing::fixture_text("fig1.rq")));
  EXPECT_EQ(result.columns, (std::vector<std::string>{"task", "dataset"}));
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"Automated leaderboard construction", "TDMS-Tables"},
      {"Citation classification", "CiteIntent"},
      {"Coreference resolution", "SciGraphIE"},
      {"Relation extraction", "SciGraphIE,TDMS-Tables"},
      {"Rhetorics annotation", "RhetoSent"},
      {"Scientific claim verification", "ClaimCheck"},
      {"Sentence classification", "RhetoSent"}};
  EXPECT_EQ(lexical_pairs(result), expected);
  EXPECT_EQ(to_rows(result), oracle::brute_force(*graph_, fig1_oracle()));
}

TEST_F(FixtureQueries, ConceptListingFiltersEntityTypes) {
  const auto result = evaluate(*graph_, parse_query(testing::fixture_text("fig2.rq")));
  EXPECT_EQ(result.columns, (std::vector<std::string>{"concept", "agg1"}));
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"Method", "RhetoSent,SciGraphIE"}, {"Research problem", "CiteIntent"}};
  EXPECT_EQ(lexical_pairs(result), expected);
  EXPECT_EQ(to_rows(result), oracle::brute_force(*graph_, fig2_oracle()));
}

TEST_F(FixtureQueries, OracleTranslationsRoundTripThroughTheParser) {
  for (const auto& q : {fig1_oracle(), fig2_oracle()})
    EXPECT_EQ(to_rows(evaluate(*graph_, parse_query(q.to_sparql()))),
              oracle::brute_force(*graph_, q))
        << q.to_sparql();
}

TEST_F(FixtureQueries, SelectStarProjectsPatternVariables) {
  const auto result =
      evaluate(*graph_, parse_query("SELECT * WHERE { res:R280270 pred:compareContribution ?c . "
                                    "?c rdfs:label ?l }"));
  EXPECT_EQ(result.columns, (std::vector<std::string>{"c", "l"}));
  EXPECT_EQ(result.rows.size(), 5u);
}

TEST_F(FixtureQueries, NumericFilterComparesValues) {
  const auto result = evaluate(*graph_, parse_query(R"(
    SELECT DISTINCT ?name WHERE {
      ?c pred:hasLeaderboard ?b . ?c rdfs:label ?name .
      ?b qudt:numericValue ?score .
      FILTER(?score > 0.7)
      FILTER(0.8 >= ?score)
    })"));
  ASSERT_EQ(result.rows.size(), 2u);
  EXPECT_EQ(result.rows[0][0]->value(), "CiteIntent");
  EXPECT_EQ(result.rows[1][0]->value(), "SciGraphIE");
}

TEST_F(FixtureQueries, AggregateWithoutGroupingYieldsOneRow) {
  const auto result = evaluate(
      *graph_, parse_query("SELECT (GROUP_CONCAT(?x) AS ?all) WHERE { ?x a class:Nothing }"));
  ASSERT_EQ(result.rows.size(), 1u);
  EXPECT_EQ(result.rows[0][0], Term::literal(""));
}

TEST(QueryParse, ProducesPatternsFiltersAndGroups) {
  const auto ast = parse_query(testing::fixture_text("fig2.rq"));
  EXPECT_TRUE(ast.distinct);
  EXPECT_EQ(ast.patterns.size(), 4u);
  EXPECT_EQ(ast.patterns[3].path.size(), 2u);
  ASSERT_EQ(ast.filters.size(), 1u);
  EXPECT_EQ(ast.filters[0].disjuncts.size(), 2u);
  EXPECT_EQ(ast.filters[0].disjuncts[0].value, Term::literal("Method"));
  EXPECT_EQ(ast.group_by, std::vector<std::string>{"concept"});
  EXPECT_TRUE(ast.has_aggregate());
}

TEST(QueryParse, AcceptsFullIrisAndOperatorsNextToThem) {
  const auto ast = parse_query(
      "select ?s where { ?s <http://example.org/p> ?o FILTER(?o<3 && ?o != <http://x.org/a>) }");
  EXPECT_EQ(ast.filters.size(), 2u);
  EXPECT_EQ(ast.filters[0].disjuncts[0].op, CompareOp::Lt);
}

TEST(QueryParse, ReversedComparisonIsNormalised) {
  const auto ast = parse_query("SELECT ?s WHERE { ?s pred:P29 ?y FILTER(2015 < ?y) }");
  ASSERT_EQ(ast.filters.size(), 1u);
  EXPECT_EQ(ast.filters[0].disjuncts[0].variable, "y");
  EXPECT_EQ(ast.filters[0].disjuncts[0].op, CompareOp::Gt);
}

TEST(QueryParse, SyntaxErrorsCarryPositions) {
  try {
    parse_query("SELECT ?s\nWHERE { ?s <http://x.org/p> }");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
  EXPECT_EQ(parse_error("SELECT ?s WHERE { ?s nope:p ?o }"), ErrorCode::UnknownPrefix);
  EXPECT_EQ(parse_error("SELECT ?s WHERE { ?s ?p ?o }"), ErrorCode::UnsupportedConstruct);
  EXPECT_EQ(parse_error("SELECT ?s WHERE { _:b <http://x.org/p> ?s }"),
            ErrorCode::UnsupportedConstruct);
}

TEST(QueryParse, UnsupportedConstructsAreNamed) {
  for (const char* q :
       {"SELECT ?s WHERE { ?s ?p ?o OPTIONAL { ?s ?q ?x } }",
        "SELECT ?s WHERE { { ?s ?p ?o } UNION { ?o ?p ?s } }",
        "SELECT ?s WHERE { ?s ?p ?o } ORDER BY ?s", "SELECT ?s WHERE { ?s ?p ?o } LIMIT 3",
        "SELECT (COUNT(?s) AS ?n) WHERE { ?s ?p ?o }", "ASK { ?s ?p ?o }",
        "CONSTRUCT { ?s ?p ?o } WHERE { ?s ?p ?o }"}) {
    EXPECT_EQ(parse_error(q), ErrorCode::UnsupportedConstruct) << q;
  }
}

TEST(QueryParse, ScopingViolationsAreRejected) {
  EXPECT_EQ(parse_error("SELECT ?x WHERE { ?s pred:P32 ?o }"), ErrorCode::ProjectionMismatch);
  EXPECT_EQ(parse_error("SELECT ?s ?o (GROUP_CONCAT(?t) AS ?ts) WHERE { ?s pred:P32 ?o . "
                        "?o rdfs:label ?t } GROUP BY ?s"),
            ErrorCode::ProjectionMismatch);
  EXPECT_EQ(parse_error("SELECT ?s WHERE { ?s pred:P32 ?o FILTER(?z = 1) }"),
            ErrorCode::ProjectionMismatch);
}

TEST(QueryPlan, ExplainListsScansThenOperators) {
  const auto fig1 = explain(parse_query(testing::fixture_text("fig1.rq")));
  const auto fig2 = explain(parse_query(testing::fixture_text("fig2.rq")));
  auto count = [](const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1))
      ++n;
    return n;
  };
  EXPECT_EQ(count(fig1, ". scan "), 5u) << fig1;
  EXPECT_NE(fig1.find("group by ?task; group_concat(?dataset) as ?dataset"), std::string::npos)
      << fig1;
  EXPECT_EQ(count(fig2, ". scan "), 5u) << fig2;
  const auto filter = fig2.find(". filter");
  const auto group = fig2.find(". group by ?concept");
  const auto distinct = fig2.find(". distinct");
  ASSERT_NE(filter, std::string::npos) << fig2;
  EXPECT_LT(filter, group);
  EXPECT_LT(group, distinct);
  // The bound comparison root is scanned first.
  EXPECT_EQ(fig1.rfind("1. scan res:R280270", 0), 0u) << fig1;
}

TEST(QueryPlan, JoinPlanPrefersBoundPositions) {
  const auto ast = parse_query(
      "SELECT ?a WHERE { ?a <http://x.org/p> ?b . <http://x.org/n> <http://x.org/q> ?a }");
  const auto plan = join_plan(ast);
  ASSERT_EQ(plan.size(), 2u);
  EXPECT_TRUE(std::holds_alternative<Term>(plan[0].subject));
}

TEST(QueryOutput, CsvQuotesAndUsesCrlf) {
  ResultTable t;
  t.columns = {"a", "b"};
  t.rows = {{Term::literal("x,y"), std::nullopt}, {Term::literal("say \"hi\""), Term::integer(3)}};
  EXPECT_EQ(result_to_csv(t), "a,b\r\n\"x,y\",\r\n\"say \"\"hi\"\"\",3\r\n");
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
}

TEST(QueryOutput, JsonHasColumnsAndRows) {
  ResultTable t;
  t.columns = {"a", "b"};
  t.rows = {{Term::literal("x"), std::nullopt}};
  EXPECT_EQ(result_to_json(t), R"({"columns":["a","b"],"rows":[["x",null]]})");
}

TEST(QueryProperty, AgreesWithBruteForceOn200RandomPairs) {
  std::mt19937 rng(4242);
  for (int round = 0; round < 200; ++round) {
    const Graph g = oracle::random_graph(rng, 6, 3, 18);
    const auto q = oracle::random_query(rng, 6, 3);
    const auto text = q.to_sparql();
    ResultTable got;
    try {
      got = evaluate(g, parse_query(text));
    } catch (const Error& e) {
      FAIL() << "round " << round << ": " << e.what() << "\n" << text;
    }
    ASSERT_EQ(to_rows(got), oracle::brute_force(g, q)) << "round " << round << "\n" << text;
  }
}

TEST(QueryProperty, EvaluationIsDeterministic) {
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    const Graph g = oracle::random_graph(rng, 5, 2, 14);
    const auto ast = parse_query(oracle::random_query(rng, 5, 2).to_sparql());
    EXPECT_EQ(evaluate(g, ast), evaluate(g, ast));
  }
}

}  // namespace
}  // namespace odk
