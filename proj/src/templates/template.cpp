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

#include <set>

#include "odk/templates.hpp"
#include "odk/vocab.hpp"

namespace odk {

Template::Template(std::string id, std::string label, std::string target_class,
                   std::vector<PropertyShape> shapes)
    : id_(std::move(id)),
      label_(std::move(label)),
      target_class_(std::move(target_class)),
      shapes_(std::move(shapes)) {
  if (!is_absolute_iri(id_))
    throw Error(ErrorCode::InvalidTemplate, "template id is not an absolute IRI: '" + id_ + "'");
  if (!is_absolute_iri(target_class_))
    throw Error(ErrorCode::InvalidTemplate, "template " + id_ + ": target class is not an IRI");
  if (shapes_.empty())
    throw Error(ErrorCode::InvalidTemplate, "template " + id_ + " has no property shapes");
  std::set<std::string> seen;
  for (const auto& shape : shapes_) {
    if (!is_absolute_iri(shape.property))
      throw Error(ErrorCode::InvalidTemplate,
                  "template " + id_ + ": shape property is not an IRI: '" + shape.property + "'");
    if (!seen.insert(shape.property).second)
      throw Error(ErrorCode::InvalidTemplate,
                  "template " + id_ + ": duplicate shape for " + shape.property);
    if (shape.max_count && (*shape.max_count == 0 || shape.min_count > *shape.max_count))
      throw Error(ErrorCode::InvalidTemplate,
                  "template " + id_ + ": bad cardinality for " + shape.property);
    const bool empty_range = std::visit(
        [](const auto& r) {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, LiteralRange>) return r.datatype.empty();
          else if constexpr (std::is_same_v<R, ResourceRange>) return r.class_iri.empty();
          else return r.template_id.empty();
        },
        shape.range);
    if (empty_range)
      throw Error(ErrorCode::InvalidTemplate,
                  "template " + id_ + ": empty range for " + shape.property);
  }
}

const PropertyShape* Template::find_shape(std::string_view property) const {
  for (const auto& shape : shapes_)
    if (shape.property == property) return &shape;
  return nullptr;
}

TemplateRegistry::TemplateRegistry(std::vector<Template> templates)
    : templates_(std::move(templates)) {
  for (std::size_t i = 0; i < templates_.size(); ++i) {
    if (!index_.emplace(templates_[i].id(), i).second)
      throw Error(ErrorCode::InvalidTemplate, "duplicate template id " + templates_[i].id());
  }
  for (const auto& t : templates_) {
    for (const auto& shape : t.shapes()) {
      if (const auto* nested = std::get_if<NestedRange>(&shape.range);
          nested && !index_.contains(nested->template_id))
        throw Error(ErrorCode::DanglingTemplate, "template " + t.id() + " references unknown template " +
                                                     nested->template_id);
    }
  }
}

const TemplateRegistry& TemplateRegistry::builtin() {
  static const TemplateRegistry registry(builtin_templates());
  return registry;
}

const Template* TemplateRegistry::find(std::string_view id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &templates_[it->second];
}

const Template& TemplateRegistry::at(std::string_view id) const {
  std::string full;
  if (id.starts_with("orkgt:")) {
    full = std::string(vocab::kTemplate) + std::string(id.substr(6));
  } else if (is_absolute_iri(id)) {
    full = std::string(id);
  } else {
    full = std::string(vocab::kTemplate) + std::string(id);
  }
  if (const auto* t = find(full)) return *t;
  throw Error(ErrorCode::NotFound, "unknown template " + std::string(id));
}

namespace {

PropertyShape literal(std::string property, std::string label, std::string datatype,
                      std::size_t min = 0, std::optional<std::size_t> max = std::nullopt) {
  return {std::move(property), std::move(label), min, max, LiteralRange{std::move(datatype)}};
}

PropertyShape resource(std::string property, std::string label, std::string class_iri,
                       std::size_t min = 0, std::optional<std::size_t> max = std::nullopt) {
  return {std::move(property), std::move(label), min, max, ResourceRange{std::move(class_iri)}};
}

}  // namespace

std::vector<Template> builtin_templates() {
  using namespace vocab;
  const auto s = [](std::string_view local, std::string label,
                    const std::string& datatype = kXsdString, std::size_t min = 0) {
    return literal(schema(local), std::move(label), datatype, min);
  };
  std::vector<Template> out;

  out.emplace_back(std::string(templates::kDatasetMetadata), "Dataset metadata", kDataset,
                   std::vector<PropertyShape>{
                       s("name", "name", kXsdString, 1),
                       s("alternateName", "alternate name"),
                       s("assesses", "assesses"),
                       s("description", "description"),
                       s("url", "URL", kXsdAnyUri),
                       s("citation", "citation"),
                       s("creator", "creator"),
                       s("dateCreated", "date created"),
                       s("datePublished", "date published"),
                       s("distribution", "distribution", kXsdAnyUri),
                       s("encodingFormat", "encoding format"),
                       s("identifier", "identifier"),
                       s("inLanguage", "in language"),
                       s("keywords", "keywords"),
                       s("license", "license"),
                       s("measurementTechnique", "measurement technique"),
                       s("sameAs", "same as", kXsdAnyUri),
                       s("size", "size"),
                       s("version", "version"),
                   });

  const auto stat = [](std::string_view local, std::string label) {
    return literal(pred(local), std::move(label), kXsdInteger, 0, 1);
  };
  out.emplace_back(std::string(templates::kStatistics), "Statistics", kDataset,
                   std::vector<PropertyShape>{
                       stat("numberOfDocuments", "number of documents"),
                       stat("numberOfSentences", "number of sentences"),
                       stat("numberOfTokens", "number of tokens"),
                       stat("numberOfEntities", "number of entities"),
                       stat("numberOfRelations", "number of relations"),
                       stat("numberOfEntityTypes", "number of entity types"),
                       stat("numberOfRelationTypes", "number of relation types"),
                       stat("numberOfAnnotators", "number of annotators"),
                       stat("numberOfAnnotatedItems", "number of annotated items"),
                   });

  out.emplace_back(std::string(templates::kDataCentricResult), "Data-centric result",
                   kDataCentricResult,
                   std::vector<PropertyShape>{
                       resource(kHasQuantityKind, "metric", kMetric, 1, 1),
                       literal(kNumericValue, "score", kXsdDecimal, 1, 1),
                       PropertyShape{kHasEvaluationItem, "has evaluation item", 0, std::nullopt,
                                     NestedRange{std::string(templates::kEvaluationItem)}},
                   });

  out.emplace_back(std::string(templates::kEvaluationItem), "Evaluation item", kEvaluationItem,
                   std::vector<PropertyShape>{
                       literal(kRdfsLabel, "label", kXsdString, 1, 1),
                       literal(kGranularity, "granularity", kXsdString, 1, 1),
                   });

  out.emplace_back(std::string(templates::kLeaderboard), "Leaderboard", kLeaderboard,
                   std::vector<PropertyShape>{
                       literal(kModelName, "model name", kXsdString, 1, 1),
                       literal(kModelCodeUrl, "model code URL", kXsdAnyUri, 0, 1),
                       resource(kHasQuantityKind, "metric", kMetric, 1, 1),
                       literal(kNumericValue, "score", kXsdDecimal, 1, 1),
                   });
  return out;
}

}  // namespace odk
