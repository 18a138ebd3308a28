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

#include "odk/rdf.hpp"
#include "odk/vocab.hpp"
#include "support/oracles.hpp"

namespace odk {
namespace {

const std::string kEx = "http://example.org/";

Term ex(const std::string& local) { return Term::iri(kEx + local); }

TEST(TermTest, PlainAndStringTypedLiteralsAreTheSameTerm) {
  EXPECT_EQ(Term::literal("x"), Term::literal("x", vocab::kXsdString));
  EXPECT_EQ(Term::literal("x").ntriples(), "\"x\"");
  EXPECT_NE(Term::literal("1"), Term::integer(1));
}

TEST(TermTest, NTriplesEscapesControlCharacters) {
  EXPECT_EQ(Term::literal("a\"b\\c\nd").ntriples(), "\"a\\\"b\\\\c\\nd\"");
  EXPECT_EQ(Term::lang_literal("chat", "fr").ntriples(), "\"chat\"@fr");
  EXPECT_EQ(Term::integer(42).ntriples(),
            "\"42\"^^<http://www.w3.org/2001/XMLSchema#integer>");
}

TEST(TermTest, RelativeIriIsRejected) {
  EXPECT_THROW(Term::iri("relative/path"), Error);
  EXPECT_TRUE(is_absolute_iri("urn:x"));
  EXPECT_FALSE(is_absolute_iri("1abc:x"));
}

TEST(TermTest, NumericValueCoversXsdNumbers) {
  EXPECT_EQ(numeric_value(Term::integer(7)), 7.0);
  EXPECT_EQ(numeric_value(Term::literal("0.25", vocab::kXsdDecimal)), 0.25);
  EXPECT_EQ(numeric_value(Term::literal("1e3", vocab::kXsdDouble)), 1000.0);
  EXPECT_FALSE(numeric_value(Term::literal("7")));
  EXPECT_FALSE(numeric_value(Term::literal("seven", vocab::kXsdInteger)));
}

TEST(TermTest, DecimalFormattingHasNoExponent) {
  EXPECT_EQ(format_decimal(0.7), "0.7");
  EXPECT_EQ(format_decimal(3), "3");
  EXPECT_EQ(format_decimal(1e-7), "0.0000001");
}

TEST(TripleTest, LiteralSubjectIsRejected) {
  EXPECT_THROW(Triple(Term::literal("x"), ex("p"), ex("o")), Error);
}

TEST(GraphTest, MatchUsesEveryIndex) {
  Graph g;
  g.insert({ex("a"), ex("p"), ex("b")});
  g.insert({ex("a"), ex("q"), Term::literal("v")});
  g.insert({ex("c"), ex("p"), ex("b")});
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.match(ex("a"), {}, {}).size(), 2u);
  EXPECT_EQ(g.match({}, ex("p"), {}).size(), 2u);
  EXPECT_EQ(g.match({}, {}, ex("b")).size(), 2u);
  EXPECT_EQ(g.match({}, ex("p"), ex("b")).front().subject, ex("a"));
  EXPECT_EQ(g.match(ex("c"), {}, ex("b")).size(), 1u);
  EXPECT_TRUE(g.match(ex("c"), ex("q"), {}).empty());
}

TEST(GraphTest, InsertIsIdempotentAndEraseCleansIndexes) {
  Graph g;
  const Triple t{ex("a"), ex("p"), ex("b")};
  EXPECT_TRUE(g.insert(t));
  EXPECT_FALSE(g.insert(t));
  EXPECT_TRUE(g.erase(t));
  EXPECT_FALSE(g.erase(t));
  EXPECT_TRUE(g.empty());
  EXPECT_TRUE(g.match({}, {}, ex("b")).empty());
  EXPECT_FALSE(g.has_subject(ex("a")));
}

TEST(GraphTest, EqualityIgnoresPrefixes) {
  Graph a;
  Graph b;
  a.insert({ex("a"), ex("p"), ex("b")});
  b.insert({ex("a"), ex("p"), ex("b")});
  b.prefixes().set("ex", kEx);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.fingerprint(), b.fingerprint());
}

TEST(PrefixMapTest, ExpandsAndCompacts) {
  const auto m = PrefixMap::builtin();
  EXPECT_EQ(m.expand("res:R1"), "https://orkg.org/resource/R1");
  EXPECT_EQ(m.compact("https://orkg.org/property/P32"), "pred:P32");
  EXPECT_EQ(m.compact("http://unknown.org/x"), std::nullopt);
  EXPECT_EQ(m.resolve("<http://x.org/a>"), "http://x.org/a");
  EXPECT_EQ(m.resolve("urn:isbn:1"), "urn:isbn:1");
  EXPECT_THROW(m.resolve("1nope:x"), Error);
}

TEST(TurtleTest, ParsesAbbreviations) {
  const auto g = parse_turtle(R"(
    @prefix ex: <http://example.org/> .
    PREFIX ex2: <http://example.org/two/>
    ex:a a ex:C ;
      ex:p ex:b , ex:c ;
      ex:q "x"@en, 5, 2.5, 1e2, true, """multi
line""" .
    ex2:z ex:p 'single' .
  )");
  EXPECT_EQ(g.size(), 10u);
  EXPECT_TRUE(g.contains({ex("a"), Term::iri(vocab::kRdfType), ex("C")}));
  EXPECT_TRUE(g.contains({ex("a"), ex("q"), Term::integer(5)}));
  EXPECT_TRUE(g.contains({ex("a"), ex("q"), Term::literal("2.5", vocab::kXsdDecimal)}));
  EXPECT_TRUE(g.contains({ex("a"), ex("q"), Term::literal("1e2", vocab::kXsdDouble)}));
  EXPECT_TRUE(g.contains({ex("a"), ex("q"), Term::literal("true", vocab::kXsdBoolean)}));
  EXPECT_TRUE(g.contains({ex("a"), ex("q"), Term::literal("multi\nline")}));
  EXPECT_TRUE(g.contains({Term::iri(kEx + "two/z"), ex("p"), Term::literal("single")}));
}

TEST(TurtleTest, BlankNodesAreRejected) {
  for (const char* doc : {"<http://x/a> <http://x/p> [ <http://x/q> 1 ] .",
                          "_:b <http://x/p> 1 .", "<http://x/a> <http://x/p> ( 1 2 ) ."}) {
    try {
      parse_turtle(doc);
      FAIL() << doc;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::BlankNodeRejected) << doc;
    }
  }
}

TEST(TurtleTest, ErrorsCarryPositions) {
  try {
    parse_turtle("@prefix ex: <http://x/> .\nex:a ex:p \"unterminated .\n");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), ErrorCode::Syntax);
    EXPECT_EQ(e.line(), 2u);
  }
  try {
    parse_turtle("zz:a <http://x/p> 1 .");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownPrefix);
  }
}

TEST(TurtleTest, SerializationIsSortedAndUsesPrefixes) {
  Graph g;
  g.insert({Term::iri("https://orkg.org/resource/R2"), Term::iri(vocab::kRdfsLabel),
            Term::literal("b")});
  g.insert({Term::iri("https://orkg.org/resource/R1"), Term::iri(vocab::kRdfType),
            Term::iri(vocab::kDataset)});
  g.insert({Term::iri("https://orkg.org/resource/R1"), Term::iri(vocab::kRdfsLabel),
            Term::literal("a")});
  const auto text = serialize_turtle(g);
  const auto r1 = text.find("res:R1 a class:Dataset ;\n    rdfs:label \"a\" .\n");
  const auto r2 = text.find("res:R2 rdfs:label \"b\" .\n");
  ASSERT_NE(r1, std::string::npos) << text;
  ASSERT_NE(r2, std::string::npos) << text;
  EXPECT_LT(r1, r2);
  EXPECT_EQ(serialize_turtle(parse_turtle(text)), text);
}

TEST(TurtleTest, RandomGraphsRoundTrip) {
  std::mt19937 rng(20240101);
  const std::vector<Term> odd = {
      Term::literal("quote \" and \\ backslash"), Term::literal("tab\tnew\nline\rcr"),
      Term::literal("ünïcødé ✓"),            Term::lang_literal("hello", "en-GB"),
      Term::literal("", vocab::kXsdString),       Term::literal("-0.5", vocab::kXsdDecimal),
      Term::literal("2024-01-01T00:00:00Z", vocab::kXsdDateTime),
      Term::iri("https://orkg.org/resource/R9"), Term::iri("http://example.org/with%20escape")};
  for (int round = 0; round < 100; ++round) {
    Graph g = oracle::random_graph(rng, 6, 3, 25);
    std::uniform_int_distribution<std::size_t> pick(0, odd.size() - 1);
    for (int i = 0; i < 5; ++i) g.insert({ex("n0"), ex("odd"), odd[pick(rng)]});
    const auto text = serialize_turtle(g);
    const Graph back = parse_turtle(text);
    ASSERT_EQ(back, g) << text;
    ASSERT_EQ(serialize_turtle(back), text);
  }
}

TEST(TurtleTest, SectionsPutHeaderTriplesFirst) {
  Graph g;
  g.insert({ex("a"), ex("meta"), Term::literal("m")});
  g.insert({ex("a"), ex("data"), Term::literal("d")});
  const auto text = serialize_turtle_sections(
      g, [](const Triple& t) { return t.predicate.value().ends_with("meta"); }, "header", "body");
  EXPECT_LT(text.find("\"m\""), text.find("\"d\""));
  EXPECT_EQ(parse_turtle(text), g);
}

}  // namespace
}  // namespace odk
