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

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "odk/templates.hpp"
#include "odk/vocab.hpp"

namespace odk {
namespace {

using json = nlohmann::ordered_json;

Term iri(std::string_view s) { return Term::iri(s); }

std::string shape_iri(const Template& t, std::size_t index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "-S%02zu", index);
  return t.id() + buf;
}

[[noreturn]] void missing(std::string_view id, std::string_view what) {
  throw Error(ErrorCode::InvalidTemplate,
              "template " + std::string(id) + ": missing " + std::string(what));
}

std::size_t count_value(const Term& t, std::string_view id, std::string_view field) {
  const auto v = numeric_value(t);
  if (!v || *v < 0 || *v != static_cast<double>(static_cast<std::size_t>(*v)))
    throw Error(ErrorCode::InvalidTemplate, "template " + std::string(id) + ": " +
                                                std::string(field) + " is not a count");
  return static_cast<std::size_t>(*v);
}

std::string range_kind(const ShapeRange& r) {
  switch (r.index()) {
    case 0: return "literal";
    case 1: return "resource";
    default: return "nested";
  }
}

std::string range_value(const ShapeRange& r) {
  return std::visit(
      [](const auto& v) -> std::string {
        using R = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<R, LiteralRange>) return v.datatype;
        else if constexpr (std::is_same_v<R, ResourceRange>) return v.class_iri;
        else return v.template_id;
      },
      r);
}

json to_json(const Template& t) {
  json shapes = json::array();
  for (const auto& s : t.shapes()) {
    json shape;
    shape["property"] = s.property;
    shape["label"] = s.label;
    shape["min_count"] = s.min_count;
    shape["max_count"] = s.max_count ? json(*s.max_count) : json(nullptr);
    shape["range"] = {{"kind", range_kind(s.range)}, {"value", range_value(s.range)}};
    shapes.push_back(std::move(shape));
  }
  json out;
  out["id"] = t.id();
  out["label"] = t.label();
  out["target_class"] = t.target_class();
  out["shapes"] = std::move(shapes);
  return out;
}

std::string required_string(const json& j, const char* key, std::string_view where) {
  if (!j.contains(key) || !j[key].is_string())
    throw Error(ErrorCode::InvalidTemplate,
                std::string(where) + ": missing string field '" + key + "'");
  return j[key].get<std::string>();
}

Template from_json(const json& j) {
  static const PrefixMap prefixes = PrefixMap::builtin();
  if (!j.is_object()) throw Error(ErrorCode::InvalidTemplate, "template must be a JSON object");
  const auto id = prefixes.resolve(required_string(j, "id", "template"));
  const auto label = required_string(j, "label", id);
  const auto target = prefixes.resolve(required_string(j, "target_class", id));
  if (!j.contains("shapes") || !j["shapes"].is_array())
    throw Error(ErrorCode::InvalidTemplate, id + ": missing array field 'shapes'");
  std::vector<PropertyShape> shapes;
  for (const auto& s : j["shapes"]) {
    PropertyShape shape;
    shape.property = prefixes.resolve(required_string(s, "property", id));
    shape.label = required_string(s, "label", id);
    if (s.contains("min_count")) {
      if (!s["min_count"].is_number_unsigned())
        throw Error(ErrorCode::InvalidTemplate, id + ": min_count must be a non-negative integer");
      shape.min_count = s["min_count"].get<std::size_t>();
    }
    if (s.contains("max_count") && !s["max_count"].is_null()) {
      if (!s["max_count"].is_number_unsigned())
        throw Error(ErrorCode::InvalidTemplate, id + ": max_count must be a positive integer");
      shape.max_count = s["max_count"].get<std::size_t>();
    }
    if (!s.contains("range") || !s["range"].is_object())
      throw Error(ErrorCode::InvalidTemplate, id + ": shape " + shape.property + " missing 'range'");
    const auto kind = required_string(s["range"], "kind", id);
    const auto value = prefixes.resolve(required_string(s["range"], "value", id));
    if (kind == "literal") shape.range = LiteralRange{value};
    else if (kind == "resource") shape.range = ResourceRange{value};
    else if (kind == "nested") shape.range = NestedRange{value};
    else throw Error(ErrorCode::InvalidTemplate, id + ": unknown range kind '" + kind + "'");
    shapes.push_back(std::move(shape));
  }
  return Template(id, label, target, std::move(shapes));
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidTemplate, std::string("malformed template JSON: ") + e.what());
  }
}

}  // namespace

Graph template_to_graph(const Template& t) {
  using namespace vocab;
  Graph g;
  const Term root = iri(t.id());
  const Term type = iri(kRdfType);
  g.insert({root, type, iri(sh("NodeShape"))});
  g.insert({root, iri(kRdfsLabel), Term::literal(t.label())});
  g.insert({root, iri(sh("targetClass")), iri(t.target_class())});
  for (std::size_t i = 0; i < t.shapes().size(); ++i) {
    const auto& s = t.shapes()[i];
    const Term node = iri(shape_iri(t, i + 1));
    g.insert({root, iri(sh("property")), node});
    g.insert({node, type, iri(sh("PropertyShape"))});
    g.insert({node, iri(sh("path")), iri(s.property)});
    g.insert({node, iri(sh("name")), Term::literal(s.label)});
    g.insert({node, iri(sh("order")), Term::integer(static_cast<long long>(i + 1))});
    g.insert({node, iri(sh("minCount")), Term::integer(static_cast<long long>(s.min_count))});
    if (s.max_count)
      g.insert({node, iri(sh("maxCount")), Term::integer(static_cast<long long>(*s.max_count))});
    if (const auto* lit = std::get_if<LiteralRange>(&s.range))
      g.insert({node, iri(sh("datatype")), iri(lit->datatype)});
    else if (const auto* res = std::get_if<ResourceRange>(&s.range))
      g.insert({node, iri(sh("class")), iri(res->class_iri)});
    else
      g.insert({node, iri(sh("node")), iri(std::get<NestedRange>(s.range).template_id)});
  }
  return g;
}

Template graph_to_template(const Graph& g, std::string_view id) {
  using namespace vocab;
  const Term root = iri(id);
  if (!g.has_subject(root)) missing(id, "template description");
  const auto label = g.first_object(root, iri(kRdfsLabel));
  if (!label || !label->is_literal()) missing(id, "rdfs:label");
  const auto target = g.first_object(root, iri(sh("targetClass")));
  if (!target || !target->is_iri()) missing(id, "sh:targetClass");

  std::vector<std::pair<std::size_t, PropertyShape>> ordered;
  for (const auto& node : g.objects(root, iri(sh("property")))) {
    const std::string where = "shape " + node.value() + " sh:";
    auto field = [&](const char* name) { return g.first_object(node, iri(sh(name))); };
    const auto path = field("path");
    if (!path || !path->is_iri()) missing(id, where + "path");
    const auto name = field("name");
    if (!name || !name->is_literal()) missing(id, where + "name");
    const auto order = field("order");
    if (!order) missing(id, where + "order");

    PropertyShape shape;
    shape.property = path->value();
    shape.label = name->value();
    if (const auto min = field("minCount")) shape.min_count = count_value(*min, id, "sh:minCount");
    if (const auto max = field("maxCount")) shape.max_count = count_value(*max, id, "sh:maxCount");
    const auto datatype = field("datatype");
    const auto cls = field("class");
    const auto node_ref = field("node");
    const int ranges = !!datatype + !!cls + !!node_ref;
    if (ranges == 0) missing(id, where + "datatype, sh:class or sh:node");
    if (ranges > 1)
      throw Error(ErrorCode::InvalidTemplate,
                  "template " + std::string(id) + ": " + node.value() + " has more than one range");
    if (datatype) shape.range = LiteralRange{datatype->value()};
    else if (cls) shape.range = ResourceRange{cls->value()};
    else shape.range = NestedRange{node_ref->value()};
    ordered.emplace_back(count_value(*order, id, "sh:order"), std::move(shape));
  }
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<PropertyShape> shapes;
  for (auto& [_, s] : ordered) shapes.push_back(std::move(s));
  return Template(std::string(id), label->value(), target->value(), std::move(shapes));
}

std::string template_to_json(const Template& t) { return to_json(t).dump(2); }

std::string templates_to_json(const std::vector<Template>& templates) {
  json out = json::array();
  for (const auto& t : templates) out.push_back(to_json(t));
  return out.dump(2);
}

Template template_from_json(std::string_view text) { return from_json(parse_json(text)); }

std::vector<Template> templates_from_json(std::string_view text) {
  const auto j = parse_json(text);
  std::vector<Template> out;
  if (j.is_array()) {
    for (const auto& t : j) out.push_back(from_json(t));
  } else {
    out.push_back(from_json(j));
  }
  return out;
}

std::string report_to_json(const ConformanceReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"node", v.node},
                          {"property", v.property},
                          {"code", std::string(to_string(v.code))},
                          {"message", v.message}});
  json out;
  out["root"] = report.root;
  out["template"] = report.template_id;
  out["conforms"] = report.conforms;
  out["violations"] = std::move(violations);
  return out.dump(2);
}

}  // namespace odk
