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
#include <vector>

#include "odk/rdf.hpp"
#include "odk/store.hpp"

namespace odk {

struct EvaluationItemRecord {
  std::string label;
  std::string granularity;  ///< entities, relations, sentences, documents or spans
};

struct QualityResultRecord {
  std::string metric;
  double score = 0;
  std::vector<EvaluationItemRecord> evaluation_items;
};

struct LeaderboardRecord {
  std::string model_name;
  std::string model_code_url;  ///< optional, empty when absent
  std::string metric;
  double score = 0;
};

struct ContributionRecord {
  std::string name;
  std::vector<std::string> research_problems;
  /// Keyed by schema.org local name ("name", "url", ...); multi-valued.
  std::map<std::string, std::vector<std::string>> metadata;
  /// Keyed by statistics property local name ("numberOfDocuments", ...).
  std::map<std::string, long long> statistics;
  std::vector<QualityResultRecord> quality_results;
  std::vector<LeaderboardRecord> leaderboards;
  std::vector<std::string> same_as;
  /// Labels of the entity types annotated in the dataset ("Method", ...).
  std::vector<std::string> entity_types;
};

struct PaperRecord {
  std::string title;
  std::vector<std::string> authors;
  int publication_year = 0;
  std::optional<std::string> doi;
  std::string research_field;
  std::vector<ContributionRecord> contributions;
};

/// Optional comparison declared alongside the papers of an ingestion file.
struct ComparisonRecord {
  std::string id;  ///< local id ("R280270"), CURIE or full IRI
  std::string label;
};

struct IngestionFile {
  std::vector<PaperRecord> papers;
  std::optional<ComparisonRecord> comparison;
};

/// Parses `{"papers": [...], "comparison": {...}?}`. Throws
/// Error(InvalidRecord) naming the offending field.
IngestionFile parse_ingestion_json(std::string_view text);

/// Throws Error(InvalidRecord) naming the first invalid field.
void check_record(const PaperRecord& record);

struct IngestOptions {
  /// Skip papers whose title already exists as a class:Paper resource.
  bool deduplicate = true;
};

struct IngestResult {
  Term paper;
  std::vector<Term> contributions;
};

/// Writes one paper and its dataset contributions into the session. Each
/// contribution is typed both class:Contribution and class:Dataset and is
/// validated against the builtin templates before returning.
IngestResult ingest_paper(Session& session, const PaperRecord& record,
                          const Provenance& provenance, const IngestOptions& options = {});

/// Creates (or extends) a comparison resource linking `contributions` via
/// pred:compareContribution.
Term create_comparison(Session& session, const Term& id, std::string_view label,
                       const std::vector<Term>& contributions);

/// Ingests every paper of `file` and, when declared, the comparison over all
/// of their contributions. Returns contribution roots in ingestion order.
std::vector<Term> ingest_file(Session& session, const IngestionFile& file,
                              const Provenance& provenance, const IngestOptions& options = {});

void link_same_as(Session& session, const Term& a, const Term& b);

/// owl:sameAs equivalence classes of a graph (symmetric, transitive).
class SameAsClosure {
 public:
  explicit SameAsClosure(const Graph& graph);

  /// Smallest member of the class containing `term` (the term itself when
  /// it has no owl:sameAs links).
  const Term& representative(const Term& term) const;
  bool equivalent(const Term& a, const Term& b) const;
  /// Every class with at least two members, each sorted.
  std::vector<std::vector<Term>> classes() const;

 private:
  std::map<Term, Term> rep_;
};

struct PersistentId {
  std::string value;  ///< e.g. 10.0000/orkgdk.R280270
};

inline constexpr std::string_view kLocalDoiPrefix = "10.0000/orkgdk.";

/// Assigns persistent identifiers. The default registrar mints local
/// DOI-like ids; a real DOI service plugs in here.
class Registrar {
 public:
  virtual ~Registrar() = default;
  virtual PersistentId assign(const Term& root) = 0;
};

class LocalRegistrar final : public Registrar {
 public:
  PersistentId assign(const Term& root) override;
};

/// Stamps identifier and provenance on `root` and freezes its subgraph.
/// Throws NotFound, AlreadyPublished or ImmutablePublished.
PersistentId publish(Session& session, const Term& root, const Provenance& provenance,
                     Registrar& registrar);
PersistentId publish(Session& session, const Term& root, const Provenance& provenance);

/// Published metadata of `root`; nullopt when it was never published.
struct PublicationRecord {
  std::string root;
  std::string persistent_id;
  Provenance provenance;
};
std::optional<PublicationRecord> publication_of(const Graph& graph, const Term& root);
std::string publication_to_json(const PublicationRecord& record);

/// Resolves "R12", "res:R12", "<iri>" or a full IRI to a res: resource term.
Term resource_term(std::string_view text);

}  // namespace odk
