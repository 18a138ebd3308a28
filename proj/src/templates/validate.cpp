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

#include "odk/templates.hpp"
#include "odk/vocab.hpp"

namespace odk {

std::string_view to_string(ViolationCode code) {
  switch (code) {
    case ViolationCode::MissingType: return "MissingType";
    case ViolationCode::CardinalityLow: return "CardinalityLow";
    case ViolationCode::CardinalityHigh: return "CardinalityHigh";
    case ViolationCode::WrongDatatype: return "WrongDatatype";
    case ViolationCode::WrongClass: return "WrongClass";
    case ViolationCode::NestedNonconform: return "NestedNonconform";
  }
  return "Unknown";
}

namespace {

class Validator {
 public:
  Validator(const Graph& graph, const TemplateRegistry& registry)
      : graph_(graph), registry_(registry) {}

  void check(const Term& node, const Template& tmpl, int depth, std::vector<Violation>& out) {
    if (depth > kMaxNestingDepth)
      throw Error(ErrorCode::DepthExceeded, "nested validation exceeded depth " +
                                                std::to_string(kMaxNestingDepth) + " at " +
                                                node.value());
    if (!graph_.has_type(node, tmpl.target_class()))
      out.push_back({node.value(), vocab::kRdfType, ViolationCode::MissingType,
                     "not typed " + tmpl.target_class()});

    for (const auto& shape : tmpl.shapes()) {
      const auto objects = graph_.objects(node, Term::iri(shape.property));
      if (objects.size() < shape.min_count)
        out.push_back({node.value(), shape.property, ViolationCode::CardinalityLow,
                       "expected at least " + std::to_string(shape.min_count) + " value(s) for '" +
                           shape.label + "', found " + std::to_string(objects.size())});
      if (shape.max_count && objects.size() > *shape.max_count)
        out.push_back({node.value(), shape.property, ViolationCode::CardinalityHigh,
                       "expected at most " + std::to_string(*shape.max_count) + " value(s) for '" +
                           shape.label + "', found " + std::to_string(objects.size())});
      for (const auto& object : objects) check_range(node, shape, object, depth, out);
    }
  }

 private:
  void check_range(const Term& node, const PropertyShape& shape, const Term& object, int depth,
                   std::vector<Violation>& out) {
    if (const auto* lit = std::get_if<LiteralRange>(&shape.range)) {
      if (!object.is_literal() || object.datatype() != lit->datatype)
        out.push_back({node.value(), shape.property, ViolationCode::WrongDatatype,
                       object.ntriples() + " is not a literal of type " + lit->datatype});
    } else if (const auto* res = std::get_if<ResourceRange>(&shape.range)) {
      if (!object.is_iri() || !graph_.has_type(object, res->class_iri))
        out.push_back({node.value(), shape.property, ViolationCode::WrongClass,
                       object.ntriples() + " is not an instance of " + res->class_iri});
    } else {
      const auto& nested_id = std::get<NestedRange>(shape.range).template_id;
      const Template* nested = registry_.find(nested_id);
      if (nested == nullptr)
        throw Error(ErrorCode::DanglingTemplate, "unknown nested template " + nested_id);
      std::vector<Violation> inner;
      if (object.is_iri()) check(object, *nested, depth + 1, inner);
      if (!object.is_iri() || !inner.empty()) {
        out.insert(out.end(), inner.begin(), inner.end());
        out.push_back({node.value(), shape.property, ViolationCode::NestedNonconform,
                       object.ntriples() + " does not conform to " + nested_id});
      }
    }
  }

  const Graph& graph_;
  const TemplateRegistry& registry_;
};

}  // namespace

ConformanceReport validate(const Graph& graph, const Term& root, const Template& tmpl,
                           const TemplateRegistry& registry) {
  if (!root.is_iri()) throw Error(ErrorCode::InvalidArgument, "validation root must be an IRI");
  ConformanceReport report;
  report.root = root.value();
  report.template_id = tmpl.id();
  Validator(graph, registry).check(root, tmpl, 0, report.violations);
  report.conforms = report.violations.empty();
  return report;
}

}  // namespace odk
