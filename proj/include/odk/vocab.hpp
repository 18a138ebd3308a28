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

// IRIs used across the toolkit. Namespaces first, then individual terms.
namespace odk::vocab {

inline constexpr std::string_view kRes = "https://orkg.org/resource/";
inline constexpr std::string_view kPred = "https://orkg.org/property/";
inline constexpr std::string_view kClass = "https://orkg.org/class/";
inline constexpr std::string_view kTemplate = "https://orkg.org/template/";
inline constexpr std::string_view kRdf = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
inline constexpr std::string_view kRdfs = "http://www.w3.org/2000/01/rdf-schema#";
inline constexpr std::string_view kXsd = "http://www.w3.org/2001/XMLSchema#";
inline constexpr std::string_view kSchema = "https://schema.org/";
inline constexpr std::string_view kQudt = "https://qudt.org/schema/qudt/";
inline constexpr std::string_view kOwl = "http://www.w3.org/2002/07/owl#";
inline constexpr std::string_view kDcterms = "http://purl.org/dc/terms/";
inline constexpr std::string_view kSh = "http://www.w3.org/ns/shacl#";

inline std::string res(std::string_view local) { return std::string(kRes) + std::string(local); }
inline std::string pred(std::string_view local) { return std::string(kPred) + std::string(local); }
inline std::string cls(std::string_view local) { return std::string(kClass) + std::string(local); }
inline std::string tmpl(std::string_view local) { return std::string(kTemplate) + std::string(local); }
inline std::string xsd(std::string_view local) { return std::string(kXsd) + std::string(local); }
inline std::string schema(std::string_view local) { return std::string(kSchema) + std::string(local); }
inline std::string qudt(std::string_view local) { return std::string(kQudt) + std::string(local); }
inline std::string sh(std::string_view local) { return std::string(kSh) + std::string(local); }
inline std::string dcterms(std::string_view local) { return std::string(kDcterms) + std::string(local); }

inline const std::string kRdfType = std::string(kRdf) + "type";
inline const std::string kRdfLangString = std::string(kRdf) + "langString";
inline const std::string kRdfsLabel = std::string(kRdfs) + "label";
inline const std::string kOwlSameAs = std::string(kOwl) + "sameAs";

inline const std::string kXsdString = xsd("string");
inline const std::string kXsdInteger = xsd("integer");
inline const std::string kXsdDecimal = xsd("decimal");
inline const std::string kXsdDouble = xsd("double");
inline const std::string kXsdBoolean = xsd("boolean");
inline const std::string kXsdAnyUri = xsd("anyURI");
inline const std::string kXsdDate = xsd("date");
inline const std::string kXsdDateTime = xsd("dateTime");

// ORKG classes and properties.
inline const std::string kContribution = cls("Contribution");
inline const std::string kDataset = cls("Dataset");
inline const std::string kPaper = cls("Paper");
inline const std::string kProblem = cls("Problem");
inline const std::string kResearchField = cls("ResearchField");
inline const std::string kEntityType = cls("EntityType");
inline const std::string kMetric = cls("Metric");
inline const std::string kDataCentricResult = cls("DataCentricResult");
inline const std::string kEvaluationItem = cls("EvaluationItem");
inline const std::string kLeaderboard = cls("Leaderboard");
inline const std::string kComparison = cls("Comparison");

inline const std::string kDoi = pred("P26");
inline const std::string kAuthor = pred("P27");
inline const std::string kPublicationYear = pred("P29");
inline const std::string kResearchFieldProp = pred("P30");
inline const std::string kHasContribution = pred("P31");
inline const std::string kResearchProblem = pred("P32");
inline const std::string kLabeledEntityType = pred("P34062");
inline const std::string kHasEvaluationItem = pred("P71154");
inline const std::string kCompareContribution = pred("compareContribution");
inline const std::string kHasDataCentricResult = pred("hasDataCentricResult");
inline const std::string kHasLeaderboard = pred("hasLeaderboard");
inline const std::string kGranularity = pred("granularity");
inline const std::string kModelName = pred("modelName");
inline const std::string kModelCodeUrl = pred("modelCodeUrl");

inline const std::string kQudtQuantity = qudt("Quantity");
inline const std::string kHasQuantityKind = qudt("hasQuantityKind");
inline const std::string kNumericValue = qudt("numericValue");

// Provenance.
inline const std::string kCreated = dcterms("created");
inline const std::string kCreator = dcterms("creator");
inline const std::string kLicense = dcterms("license");
inline const std::string kIdentifier = schema("identifier");
inline constexpr std::string_view kCcBySa = "https://creativecommons.org/licenses/by-sa/2.0/";

/// Display labels of the vocabulary predicates written by ingestion. They
/// are stored in the graph as rdfs:label statements on the predicates.
inline std::optional<std::string_view> builtin_property_label(std::string_view iri) {
  static const std::map<std::string, std::string_view, std::less<>> labels = {
      {kDoi, "DOI"},
      {kAuthor, "author"},
      {kPublicationYear, "publication year"},
      {kResearchFieldProp, "research field"},
      {kHasContribution, "contribution"},
      {kResearchProblem, "research problem"},
      {kLabeledEntityType, "labeled entity type"},
      {kHasEvaluationItem, "has evaluation item"},
      {kCompareContribution, "compare contribution"},
      {kHasDataCentricResult, "data-centric result"},
      {kHasLeaderboard, "leaderboard"},
      {kGranularity, "granularity"},
      {kModelName, "model name"},
      {kModelCodeUrl, "model code URL"},
  };
  const auto it = labels.find(iri);
  if (it == labels.end()) return std::nullopt;
  return it->second;
}

}  // namespace odk::vocab
