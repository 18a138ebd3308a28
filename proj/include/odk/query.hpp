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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odk/rdf.hpp"

namespace odk {

// SELECT queries over a SPARQL subset:
//
//   [PREFIX p: <iri>]* SELECT [DISTINCT] (?v | GROUP_CONCAT(...) | (GROUP_CONCAT(...) AS ?v))+
//   [WHERE] { triples with ';' ',' '.' and p1/p2 sequence paths, FILTER(...)* }
//   [GROUP BY ?v+]
//
// FILTER bodies are conjunctions of disjunctions of `?v op value`, with op
// one of = != < <= > >= and disjunction spelled `||` or `OR`. The built-in
// prefix map is always in scope.

struct Variable {
  std::string name;  ///< without the leading '?'
  friend bool operator==(const Variable&, const Variable&) = default;
};

using PatternTerm = std::variant<Term, Variable>;

struct TriplePattern {
  PatternTerm subject;
  std::vector<Term> path;  ///< one IRI for a plain predicate
  PatternTerm object;
  std::size_t block = 0;   ///< index of the subject block the pattern came from
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

struct Comparison {
  std::string variable;
  CompareOp op = CompareOp::Eq;
  Term value;
};

/// Disjunction of comparisons; at least one.
struct FilterExpr {
  std::vector<Comparison> disjuncts;
};

struct GroupConcat {
  std::string variable;
  std::string separator = " ";
  bool distinct = false;
  std::optional<std::string> alias;
};

using ProjectionItem = std::variant<Variable, GroupConcat>;

struct QueryAst {
  bool distinct = false;
  std::vector<ProjectionItem> projection;
  std::vector<TriplePattern> patterns;
  std::vector<FilterExpr> filters;  ///< conjunction
  std::vector<std::string> group_by;
  std::size_t block_count = 0;

  /// Output column names; unaliased aggregates are named agg1, agg2, ...
  std::vector<std::string> columns() const;
  bool has_aggregate() const;
};

/// Throws SyntaxError (Syntax, UnknownPrefix, UnsupportedConstruct) with a
/// position, or Error(ProjectionMismatch) for scoping/grouping violations.
QueryAst parse_query(std::string_view text);

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<Term>>> rows;

  friend bool operator==(const ResultTable&, const ResultTable&) = default;
};

/// Pure over the graph snapshot. Rows are sorted by their serialized cells.
ResultTable evaluate(const Graph& graph, const QueryAst& ast);

/// One line per evaluation step: scans in join order (paths expanded), then
/// filter, grouping and distinct.
std::string explain(const QueryAst& ast);

/// Patterns after path expansion, in the order evaluate() joins them.
/// Intermediate path variables are named `_pathN`.
std::vector<TriplePattern> join_plan(const QueryAst& ast);

std::string result_to_csv(const ResultTable& table);
std::string result_to_json(const ResultTable& table);

/// RFC 4180 field quoting, shared by the CSV writers.
std::string csv_field(std::string_view value);

}  // namespace odk
