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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "odk/rdf.hpp"
#include "odk/store.hpp"

namespace odk {

/// One rendered value in a comparison cell.
struct CellValue {
  std::string text;      ///< display form; "label: score (metric)" for nested results
  std::string node;      ///< N-Triples form of the graph object
  std::string property;  ///< predicate IRI the value was read through
  std::optional<double> number;  ///< numeric literal value or nested score
  std::string metric;    ///< metric label of a nested result, else empty

  friend bool operator==(const CellValue&, const CellValue&) = default;
};

struct ComparisonColumn {
  std::string contribution;  ///< IRI
  std::string label;
  std::string paper_title;
  std::optional<int> year;

  friend bool operator==(const ComparisonColumn&, const ComparisonColumn&) = default;
};

struct ComparisonRow {
  std::string property;              ///< representative IRI of the same-as class
  std::string label;
  std::vector<std::string> members;  ///< every aligned predicate IRI, sorted
  std::vector<std::vector<CellValue>> cells;  ///< one entry per column

  std::size_t coverage() const;
  friend bool operator==(const ComparisonRow&, const ComparisonRow&) = default;
};

struct ComparisonTable {
  std::string id;
  std::string label;
  std::vector<ComparisonColumn> columns;
  std::vector<ComparisonRow> rows;
  std::optional<Provenance> provenance;
  std::optional<std::string> persistent_id;
  std::vector<std::string> warnings;

  friend bool operator==(const ComparisonTable&, const ComparisonTable&) = default;
};

/// Properties x contributions view of `root`. Rows are aligned through the
/// owl:sameAs closure and ordered by coverage (descending), then label.
/// Throws NotFound for an unknown root and TypeViolation for a member that
/// is not a class:Dataset.
ComparisonTable build_comparison(const Graph& graph, const Term& root);

/// Fixed rendering of nested result nodes.
std::string render_compound(std::string_view label, std::string_view score,
                            std::string_view metric);

enum class FilterOp { Eq, Ne, Lt, Le, Gt, Ge };
std::string_view to_string(FilterOp op);

/// Keeps a column when some value under `key` satisfies `op value`. The key
/// names a row (IRI, CURIE or label) or the metric of nested results.
struct FilterClause {
  std::string key;
  FilterOp op = FilterOp::Eq;
  std::string value;

  friend bool operator==(const FilterClause&, const FilterClause&) = default;
};

struct YearRange {
  int from = 0;
  int to = 0;
  friend bool operator==(const YearRange&, const YearRange&) = default;
};

struct FilterSpec {
  std::set<std::string> hide_properties;  ///< IRI, CURIE or label
  std::vector<FilterClause> require;
  std::optional<YearRange> year_range;

  bool empty() const { return hide_properties.empty() && require.empty() && !year_range; }
};

/// Parses "KEY OP VALUE", e.g. "F1-score > 0.7". Ordering operators need a
/// numeric value. Throws Error(InvalidArgument).
FilterClause parse_filter_clause(std::string_view text);
/// Parses "2011-2022" or a single year. Throws Error(InvalidArgument).
YearRange parse_year_range(std::string_view text);
/// `{"hide": [...], "require": [{"key","op","value"} | "KEY OP VALUE"],
///   "years": {"from","to"} | "2011-2022"}`
FilterSpec filter_spec_from_json(std::string_view json);

/// Pure: drops hidden rows and columns that fail a clause or the year
/// range. Values a clause cannot compare are skipped and reported in
/// `warnings`.
ComparisonTable filter_table(const ComparisonTable& table, const FilterSpec& spec);

enum class ExportFormat { Csv, Json, Html, Turtle };
/// Accepts csv, json, html, ttl and turtle.
ExportFormat parse_export_format(std::string_view name);
std::string_view content_type(ExportFormat format);

std::string export_table(const ComparisonTable& table, ExportFormat format);
/// Inverse of the JSON export.
ComparisonTable table_from_json(std::string_view json);

struct TimelineBucket {
  std::string year;  ///< decimal year or "unknown"
  std::vector<std::string> contributions;

  friend bool operator==(const TimelineBucket&, const TimelineBucket&) = default;
};

/// Year buckets in ascending order; contributions without a year go last.
std::vector<TimelineBucket> timeline(const ComparisonTable& table);
std::string timeline_to_json(const std::vector<TimelineBucket>& buckets);

}  // namespace odk
