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

#include <random>

#include "odk/templates.hpp"
#include "odk/vocab.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

namespace odk {
namespace {

const std::string kEx = "http://example.org/";
Term ex(const std::string& local) { return Term::iri(kEx + local); }
Term iri(std::string_view v) { return Term::iri(v); }

const Term kR1 = Term::iri("https://orkg.org/resource/R1");

std::vector<ViolationCode> codes(const ConformanceReport& r) {
  std::vector<ViolationCode> out;
  for (const auto& v : r.violations) out.push_back(v.code);
  return out;
}

TEST(BuiltinTemplates, ShapeCounts) {
  const auto& reg = TemplateRegistry::builtin();
  EXPECT_EQ(reg.at("R178304").shapes().size(), 19u);
  EXPECT_EQ(reg.at("orkgt:R220250").shapes().size(), 9u);
  EXPECT_EQ(reg.at(templates::kDataCentricResult).label(), "Data-centric result");
  EXPECT_EQ(reg.at("R221194").label(), "Evaluation item");
  EXPECT_EQ(reg.at("R107801").label(), "Leaderboard");
  EXPECT_EQ(reg.all().size(), 5u);
  EXPECT_THROW(reg.at("R0"), Error);
}

TEST(BuiltinTemplates, DatasetMetadataRequiresOnlyName) {
  const auto& t = TemplateRegistry::builtin().at("R178304");
  for (const auto& s : t.shapes()) {
    EXPECT_TRUE(s.property.starts_with(vocab::kSchema)) << s.property;
    EXPECT_EQ(s.min_count, s.property == vocab::schema("name") ? 1u : 0u) << s.property;
  }
}

TEST(TemplateTest, ConstructorRejectsBadShapes) {
  const PropertyShape ok{kEx + "p", "p", 0, std::nullopt, LiteralRange{vocab::kXsdString}};
  EXPECT_THROW(Template("t", "t", kEx + "C", {}), Error);
  EXPECT_THROW(Template("t", "t", kEx + "C", {ok, ok}), Error);
  auto bad = ok;
  bad.min_count = 2;
  bad.max_count = 1;
  EXPECT_THROW(Template("t", "t", kEx + "C", {bad}), Error);
  bad.min_count = 0;
  bad.max_count = 0;
  EXPECT_THROW(Template("t", "t", kEx + "C", {bad}), Error);
}

TEST(TemplateTest, RegistryRejectsDanglingNestedTemplate) {
  const Template t(kEx + "T", "t", kEx + "C",
                   {{kEx + "p", "p", 0, std::nullopt, NestedRange{kEx + "Missing"}}});
  try {
    TemplateRegistry reg({t});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DanglingTemplate);
  }
}

TEST(TemplateTest, GraphAndJsonRoundTrip) {
  for (const auto& t : builtin_templates()) {
    EXPECT_EQ(graph_to_template(template_to_graph(t), t.id()), t) << t.id();
    EXPECT_EQ(template_from_json(template_to_json(t)), t) << t.id();
    const Graph g = template_to_graph(t);
    EXPECT_EQ(parse_turtle(serialize_turtle(g)), g);
  }
  EXPECT_EQ(templates_from_json(templates_to_json(builtin_templates())), builtin_templates());
}

TEST(TemplateTest, GraphWithoutTargetClassIsInvalid) {
  const auto& t = TemplateRegistry::builtin().at("R220250");
  Graph g = template_to_graph(t);
  for (const auto& tr : g.match(iri(t.id()), iri(vocab::sh("targetClass")), {})) g.erase(tr);
  try {
    graph_to_template(g, t.id());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidTemplate);
  }
}

class FixtureValidation : public ::testing::Test {
 protected:
  Graph graph = testing::fixture_graph();
  const TemplateRegistry& reg = TemplateRegistry::builtin();
};

TEST_F(FixtureValidation, FullyPopulatedContributionConforms) {
  for (const auto* id : {"R178304", "R220250"}) {
    const auto r = validate(graph, kR1, reg.at(id), reg);
    EXPECT_TRUE(r.conforms) << id << " " << report_to_json(r);
  }
  for (const auto& t : graph.match({}, iri(vocab::kRdfType), iri(vocab::kLeaderboard)))
    EXPECT_TRUE(validate(graph, t.subject, reg.at("R107801"), reg).conforms);
  for (const auto& t : graph.match({}, iri(vocab::kRdfType), iri(vocab::kDataCentricResult)))
    EXPECT_TRUE(validate(graph, t.subject, reg.at("R220939"), reg).conforms);
}

TEST_F(FixtureValidation, RemovingNameGivesOneCardinalityLow) {
  for (const auto& t : graph.match(kR1, iri(vocab::schema("name")), {})) graph.erase(t);
  const auto r = validate(graph, kR1, reg.at("R178304"), reg);
  EXPECT_FALSE(r.conforms);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].code, ViolationCode::CardinalityLow);
  EXPECT_EQ(r.violations[0].property, vocab::schema("name"));
}

TEST_F(FixtureValidation, RemovingRequiredUrlGivesOneCardinalityLow) {
  // A curated variant of the metadata template that makes the URL mandatory.
  const auto& base = reg.at("R178304");
  auto shapes = base.shapes();
  for (auto& s : shapes)
    if (s.property == vocab::schema("url")) s.min_count = 1;
  const Template strict(kEx + "StrictMetadata", "strict", base.target_class(), shapes);
  ASSERT_TRUE(validate(graph, kR1, strict, reg).conforms);
  for (const auto& t : graph.match(kR1, iri(vocab::schema("url")), {})) graph.erase(t);
  const auto r = validate(graph, kR1, strict, reg);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].code, ViolationCode::CardinalityLow);
  EXPECT_EQ(r.violations[0].property, vocab::schema("url"));
}

TEST_F(FixtureValidation, WrongDatatypeAndMissingType) {
  graph.insert({kR1, iri(vocab::pred("numberOfAnnotators")), Term::literal("three")});
  graph.erase({kR1, iri(vocab::kRdfType), iri(vocab::kDataset)});
  const auto r = validate(graph, kR1, reg.at("R220250"), reg);
  EXPECT_EQ(codes(r), (std::vector<ViolationCode>{ViolationCode::MissingType,
                                                  ViolationCode::CardinalityHigh,
                                                  ViolationCode::WrongDatatype}));
}

TEST_F(FixtureValidation, NestedFailureIsReportedOnBothLevels) {
  const auto results = graph.match({}, iri(vocab::kRdfType), iri(vocab::kDataCentricResult));
  ASSERT_FALSE(results.empty());
  const Term result = results.front().subject;
  const Term item = *graph.first_object(result, iri(vocab::kHasEvaluationItem));
  for (const auto& t : graph.match(item, iri(vocab::kGranularity), {})) graph.erase(t);
  const auto r = validate(graph, result, reg.at("R220939"), reg);
  ASSERT_EQ(r.violations.size(), 2u);
  EXPECT_EQ(r.violations[0].code, ViolationCode::CardinalityLow);
  EXPECT_EQ(r.violations[0].node, item.value());
  EXPECT_EQ(r.violations[1].code, ViolationCode::NestedNonconform);
  EXPECT_EQ(r.violations[1].node, result.value());
}

TEST_F(FixtureValidation, WrongClassForMetric) {
  const auto boards = graph.match({}, iri(vocab::kRdfType), iri(vocab::kLeaderboard));
  const Term board = boards.front().subject;
  for (const auto& t : graph.match(board, iri(vocab::kHasQuantityKind), {})) graph.erase(t);
  graph.insert({board, iri(vocab::kHasQuantityKind), ex("notAMetric")});
  const auto r = validate(graph, board, reg.at("R107801"), reg);
  EXPECT_EQ(codes(r), std::vector<ViolationCode>{ViolationCode::WrongClass});
}

TEST(ValidationDepth, CyclicDataExceedsDepthBound) {
  const Template loop(kEx + "Loop", "loop", kEx + "Node",
                      {{kEx + "next", "next", 0, std::nullopt, NestedRange{kEx + "Loop"}}});
  const TemplateRegistry reg({loop});
  Graph g;
  g.insert({ex("a"), iri(vocab::kRdfType), ex("Node")});
  g.insert({ex("a"), ex("next"), ex("a")});
  try {
    validate(g, ex("a"), loop, reg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DepthExceeded);
  }
}

TEST(ValidationDepth, EightLevelsAreAllowed) {
  const Template loop(kEx + "Loop", "loop", kEx + "Node",
                      {{kEx + "next", "next", 0, std::nullopt, NestedRange{kEx + "Loop"}}});
  const TemplateRegistry reg({loop});
  Graph g;
  for (int i = 0; i <= kMaxNestingDepth; ++i) {
    g.insert({ex("n" + std::to_string(i)), iri(vocab::kRdfType), ex("Node")});
    if (i < kMaxNestingDepth)
      g.insert({ex("n" + std::to_string(i)), ex("next"), ex("n" + std::to_string(i + 1))});
  }
  EXPECT_TRUE(validate(g, ex("n0"), loop, reg).conforms);
}

TEST(ValidationProperty, MatchesNaiveValidatorOn200RandomPairs) {
  std::mt19937 rng(7);
  for (int round = 0; round < 200; ++round) {
    const auto templates = oracle::random_templates(rng);
    const TemplateRegistry reg(templates);
    const Graph g = oracle::random_instance_graph(rng);
    const auto& root_template = templates.back();  // T0
    const std::string root = kEx + "n" + std::to_string(round % 6);
    std::vector<oracle::ViolationKey> got;
    for (const auto& v : validate(g, Term::iri(root), root_template, reg).violations)
      got.emplace_back(v.node, v.property, std::string(to_string(v.code)));
    std::sort(got.begin(), got.end());
    ASSERT_EQ(got, oracle::naive_violations(g, root, root_template, templates))
        << "round " << round << "\n" << serialize_turtle(g);
  }
}

}  // namespace
}  // namespace odk
