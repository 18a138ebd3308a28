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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "odk/rdf.hpp"

namespace odk {

struct LiteralRange {
  std::string datatype;
  friend bool operator==(const LiteralRange&, const LiteralRange&) = default;
};
struct ResourceRange {
  std::string class_iri;
  friend bool operator==(const ResourceRange&, const ResourceRange&) = default;
};
struct NestedRange {
  std::string template_id;
  friend bool operator==(const NestedRange&, const NestedRange&) = default;
};
using ShapeRange = std::variant<LiteralRange, ResourceRange, NestedRange>;

struct PropertyShape {
  std::string property;
  std::string label;
  std::size_t min_count = 0;
  std::optional<std::size_t> max_count;  ///< nullopt = unbounded
  ShapeRange range;

  friend bool operator==(const PropertyShape&, const PropertyShape&) = default;
};

/// A recurring subgraph pattern: a target class plus ordered property shapes.
/// Construction enforces non-empty shapes, unique properties and
/// min_count <= max_count >= 1.
class Template {
 public:
  Template(std::string id, std::string label, std::string target_class,
           std::vector<PropertyShape> shapes);

  const std::string& id() const noexcept { return id_; }
  const std::string& label() const noexcept { return label_; }
  const std::string& target_class() const noexcept { return target_class_; }
  const std::vector<PropertyShape>& shapes() const noexcept { return shapes_; }
  const PropertyShape* find_shape(std::string_view property) const;

  friend bool operator==(const Template&, const Template&) = default;

 private:
  std::string id_;
  std::string label_;
  std::string target_class_;
  std::vector<PropertyShape> shapes_;
};

/// Id-indexed template set. Construction fails with DanglingTemplate when a
/// nested range names a template that is not in the set.
class TemplateRegistry {
 public:
  explicit TemplateRegistry(std::vector<Template> templates);

  /// Registry of builtin_templates().
  static const TemplateRegistry& builtin();

  const Template* find(std::string_view id) const;
  /// Accepts a full IRI, an orkgt: CURIE or a bare local id like "R178304".
  const Template& at(std::string_view id) const;
  const std::vector<Template>& all() const noexcept { return templates_; }

 private:
  std::vector<Template> templates_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

namespace templates {
inline constexpr std::string_view kDatasetMetadata = "https://orkg.org/template/R178304";
inline constexpr std::string_view kStatistics = "https://orkg.org/template/R220250";
inline constexpr std::string_view kDataCentricResult = "https://orkg.org/template/R220939";
inline constexpr std::string_view kEvaluationItem = "https://orkg.org/template/R221194";
inline constexpr std::string_view kLeaderboard = "https://orkg.org/template/R107801";
}  // namespace templates

/// The five ORKG-Dataset templates: Dataset metadata, Statistics,
/// Data-centric result, Evaluation item and Leaderboard.
std::vector<Template> builtin_templates();

enum class ViolationCode {
  MissingType,
  CardinalityLow,
  CardinalityHigh,
  WrongDatatype,
  WrongClass,
  NestedNonconform,
};
std::string_view to_string(ViolationCode code);

struct Violation {
  std::string node;
  std::string property;
  ViolationCode code;
  std::string message;
};

struct ConformanceReport {
  std::string root;
  std::string template_id;
  bool conforms = true;
  std::vector<Violation> violations;
};

inline constexpr int kMaxNestingDepth = 8;

/// Checks `root` against `tmpl`, collecting every violation. Nested shapes
/// are validated recursively up to kMaxNestingDepth levels; deeper nesting
/// throws Error(DepthExceeded). Unknown nested templates throw
/// Error(DanglingTemplate).
ConformanceReport validate(const Graph& graph, const Term& root, const Template& tmpl,
                           const TemplateRegistry& registry);

Graph template_to_graph(const Template& tmpl);
/// Throws Error(InvalidTemplate) naming the first missing field.
Template graph_to_template(const Graph& graph, std::string_view id);

std::string template_to_json(const Template& tmpl);
std::string templates_to_json(const std::vector<Template>& templates);
Template template_from_json(std::string_view json);
std::vector<Template> templates_from_json(std::string_view json);

std::string report_to_json(const ConformanceReport& report);

}  // namespace odk
