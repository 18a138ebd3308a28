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

#include <deque>

#include <nlohmann/json.hpp>

#include "odk/ingest.hpp"
#include "odk/templates.hpp"
#include "odk/vocab.hpp"

namespace odk {
namespace {

Term iri(std::string_view s) { return Term::iri(s); }

// Writes triples for one paper. Keeps the session and the shared terms in
// one place so the construction code below reads like the graph it builds.
class PaperWriter {
 public:
  PaperWriter(Session& session, const Provenance& provenance)
      : session_(session), provenance_(provenance) {}

  IngestResult write(const PaperRecord& record) {
    // Contributions are minted before the paper so that the first
    // contribution of a fresh store is res:R1.
    std::vector<Term> contributions;
    for (std::size_t i = 0; i < record.contributions.size(); ++i)
      contributions.push_back(session_.mint(IdKind::Resource));
    IngestResult result{session_.mint(IdKind::Resource), std::move(contributions)};
    write_paper(record, result);
    for (std::size_t i = 0; i < record.contributions.size(); ++i)
      write_contribution(record.contributions[i], result.contributions[i]);
    return result;
  }

  std::vector<Term> instances_of(const std::string& template_id) const {
    auto it = instances_.find(template_id);
    return it == instances_.end() ? std::vector<Term>{} : it->second;
  }

 private:
  void add(const Term& s, const std::string& p, const Term& o) {
    const Term predicate = iri(p);
    session_.insert({s, predicate, o});
    if (auto label = vocab::builtin_property_label(p);
        label && !session_.graph().first_object(predicate, iri(vocab::kRdfsLabel)))
      session_.insert({predicate, iri(vocab::kRdfsLabel), Term::literal(*label)});
  }

  // Resources such as research problems are shared: same class + same label
  // means same node.
  Term labeled_resource(const std::string& class_iri, const std::string& label) {
    const Term lit = Term::literal(label);
    for (const auto& t : session_.graph().match({}, iri(vocab::kRdfsLabel), lit)) {
      if (session_.graph().has_type(t.subject, class_iri)) return t.subject;
    }
    Term node = session_.mint(IdKind::Resource);
    add(node, vocab::kRdfType, iri(class_iri));
    add(node, vocab::kRdfsLabel, lit);
    return node;
  }

  void write_paper(const PaperRecord& record, const IngestResult& ids) {
    using namespace vocab;
    const Term& paper = ids.paper;
    add(paper, kRdfType, iri(kPaper));
    add(paper, kRdfsLabel, Term::literal(record.title));
    add(paper, kPublicationYear, Term::integer(record.publication_year));
    for (const auto& author : record.authors) add(paper, kAuthor, Term::literal(author));
    if (record.doi) add(paper, kDoi, Term::literal(*record.doi));
    if (!record.research_field.empty())
      add(paper, kResearchFieldProp, labeled_resource(kResearchField, record.research_field));
    for (const auto& c : ids.contributions) add(paper, kHasContribution, c);
    add(paper, kCreated, Term::literal(provenance_.created_at, kXsdDateTime));
    add(paper, kCreator, Term::literal(provenance_.created_by));
    add(paper, kLicense, iri(provenance_.license));
  }

  void write_contribution(const ContributionRecord& c, const Term& node) {
    using namespace vocab;
    add(node, kRdfType, iri(kContribution));
    add(node, kRdfType, iri(kDataset));
    add(node, kRdfsLabel, Term::literal(c.name));
    for (const auto& problem : c.research_problems)
      add(node, kResearchProblem, labeled_resource(kProblem, problem));

    const auto& dataset = TemplateRegistry::builtin().at(templates::kDatasetMetadata);
    if (!c.metadata.contains("name")) add(node, schema("name"), Term::literal(c.name));
    for (const auto& [key, values] : c.metadata) {
      const auto* shape = dataset.find_shape(schema(key));
      const auto& datatype = std::get<LiteralRange>(shape->range).datatype;
      for (const auto& v : values) add(node, schema(key), Term::literal(v, datatype));
    }
    for (const auto& [key, value] : c.statistics) add(node, pred(key), Term::integer(value));

    for (const auto& type : c.entity_types)
      add(node, kLabeledEntityType, labeled_resource(kEntityType, type));

    for (const auto& q : c.quality_results) {
      const Term result = session_.mint(IdKind::Resource);
      add(node, kHasDataCentricResult, result);
      add(result, kRdfType, iri(kDataCentricResult));
      add(result, kRdfType, iri(kQudtQuantity));
      add(result, kHasQuantityKind, labeled_resource(kMetric, q.metric));
      add(result, kNumericValue, Term::decimal(q.score));
      for (const auto& e : q.evaluation_items) {
        const Term item = session_.mint(IdKind::Resource);
        add(result, kHasEvaluationItem, item);
        add(item, kRdfType, iri(kEvaluationItem));
        add(item, kRdfsLabel, Term::literal(e.label));
        add(item, kGranularity, Term::literal(e.granularity));
      }
      instances_[std::string(templates::kDataCentricResult)].push_back(result);
    }

    for (const auto& l : c.leaderboards) {
      const Term board = session_.mint(IdKind::Resource);
      add(node, kHasLeaderboard, board);
      add(board, kRdfType, iri(kLeaderboard));
      add(board, kRdfsLabel, Term::literal(l.model_name));
      add(board, kModelName, Term::literal(l.model_name));
      if (!l.model_code_url.empty())
        add(board, kModelCodeUrl, Term::literal(l.model_code_url, kXsdAnyUri));
      add(board, kHasQuantityKind, labeled_resource(kMetric, l.metric));
      add(board, kNumericValue, Term::decimal(l.score));
      instances_[std::string(templates::kLeaderboard)].push_back(board);
    }

    for (const auto& other : c.same_as)
      add(node, kOwlSameAs, iri(PrefixMap::builtin().resolve(other)));
  }

  Session& session_;
  const Provenance& provenance_;
  std::map<std::string, std::vector<Term>> instances_;
};

std::optional<Term> existing_paper(const Graph& graph, const std::string& title) {
  for (const auto& t : graph.match({}, iri(vocab::kRdfsLabel), Term::literal(title))) {
    if (graph.has_type(t.subject, vocab::kPaper)) return t.subject;
  }
  return std::nullopt;
}

void require_conformance(const Graph& graph, const Term& root, std::string_view template_id) {
  const auto& registry = TemplateRegistry::builtin();
  const auto report = validate(graph, root, registry.at(template_id), registry);
  if (!report.conforms) {
    const auto& v = report.violations.front();
    throw Error(ErrorCode::InternalConsistency,
                "ingested " + root.value() + " does not conform to " + std::string(template_id) +
                    ": " + std::string(to_string(v.code)) + " on " + v.property + " (" +
                    v.message + ")");
  }
}

}  // namespace

IngestResult ingest_paper(Session& session, const PaperRecord& record,
                          const Provenance& provenance, const IngestOptions& options) {
  check_record(record);
  if (provenance.created_at.empty() || provenance.created_by.empty())
    throw Error(ErrorCode::InvalidArgument, "provenance requires created_at and created_by");
  if (options.deduplicate) {
    if (auto paper = existing_paper(session.graph(), record.title)) {
      return {*paper, session.graph().objects(*paper, iri(vocab::kHasContribution))};
    }
  }
  PaperWriter writer(session, provenance);
  auto result = writer.write(record);

  const Graph& g = session.graph();
  for (const auto& c : result.contributions) {
    require_conformance(g, c, templates::kDatasetMetadata);
    require_conformance(g, c, templates::kStatistics);
  }
  for (const auto& r : writer.instances_of(std::string(templates::kDataCentricResult)))
    require_conformance(g, r, templates::kDataCentricResult);
  for (const auto& l : writer.instances_of(std::string(templates::kLeaderboard)))
    require_conformance(g, l, templates::kLeaderboard);
  return result;
}

Term create_comparison(Session& session, const Term& id, std::string_view label,
                       const std::vector<Term>& contributions) {
  using namespace vocab;
  if (contributions.empty())
    throw Error(ErrorCode::InvalidArgument, "a comparison needs at least one contribution");
  for (const auto& c : contributions) {
    if (!session.graph().has_type(c, kDataset))
      throw Error(ErrorCode::TypeViolation, c.value() + " is not typed class:Dataset");
  }
  session.insert({id, iri(kRdfType), iri(kComparison)});
  if (!label.empty()) session.insert({id, iri(kRdfsLabel), Term::literal(label)});
  for (const auto& c : contributions) session.insert({id, iri(kCompareContribution), c});
  const Term link = iri(kCompareContribution);
  if (!contributions.empty() && !session.graph().first_object(link, iri(kRdfsLabel)))
    session.insert({link, iri(kRdfsLabel), Term::literal(*builtin_property_label(kCompareContribution))});
  return id;
}

std::vector<Term> ingest_file(Session& session, const IngestionFile& file,
                              const Provenance& provenance, const IngestOptions& options) {
  std::vector<Term> roots;
  for (const auto& paper : file.papers) {
    auto result = ingest_paper(session, paper, provenance, options);
    roots.insert(roots.end(), result.contributions.begin(), result.contributions.end());
  }
  if (file.comparison && !roots.empty())
    create_comparison(session, resource_term(file.comparison->id), file.comparison->label, roots);
  return roots;
}

void link_same_as(Session& session, const Term& a, const Term& b) {
  if (!a.is_iri() || !b.is_iri())
    throw Error(ErrorCode::InvalidArgument, "owl:sameAs links IRIs only");
  session.insert({a, iri(vocab::kOwlSameAs), b});
}

SameAsClosure::SameAsClosure(const Graph& graph) {
  std::map<Term, std::vector<Term>> adjacent;
  for (const auto& t : graph.match({}, iri(vocab::kOwlSameAs), {})) {
    if (!t.object.is_iri() || t.object == t.subject) continue;
    adjacent[t.subject].push_back(t.object);
    adjacent[t.object].push_back(t.subject);
  }
  std::set<Term> visited;
  for (const auto& [start, _] : adjacent) {
    if (visited.contains(start)) continue;
    std::set<Term> component{start};
    std::deque<Term> queue{start};
    while (!queue.empty()) {
      const Term node = queue.front();
      queue.pop_front();
      for (const auto& next : adjacent[node])
        if (component.insert(next).second) queue.push_back(next);
    }
    visited.insert(component.begin(), component.end());
    const Term& smallest = *component.begin();
    for (const auto& member : component) rep_.emplace(member, smallest);
  }
}

const Term& SameAsClosure::representative(const Term& term) const {
  auto it = rep_.find(term);
  return it == rep_.end() ? term : it->second;
}

bool SameAsClosure::equivalent(const Term& a, const Term& b) const {
  return representative(a) == representative(b);
}

std::vector<std::vector<Term>> SameAsClosure::classes() const {
  std::map<Term, std::vector<Term>> grouped;
  for (const auto& [member, rep] : rep_) grouped[rep].push_back(member);
  std::vector<std::vector<Term>> out;
  for (auto& [_, members] : grouped) out.push_back(std::move(members));
  return out;
}

PersistentId LocalRegistrar::assign(const Term& root) {
  const std::string& v = root.value();
  const auto cut = v.find_last_of("/#:");
  return {std::string(kLocalDoiPrefix) + v.substr(cut == std::string::npos ? 0 : cut + 1)};
}

PersistentId publish(Session& session, const Term& root, const Provenance& provenance,
                     Registrar& registrar) {
  using namespace vocab;
  const Graph& g = session.graph();
  if (!g.has_subject(root)) throw Error(ErrorCode::NotFound, root.value() + " does not exist");
  if (publication_of(g, root))
    throw Error(ErrorCode::AlreadyPublished, root.value() + " is already published");
  if (session.is_protected(root))
    throw Error(ErrorCode::ImmutablePublished,
                root.value() + " belongs to a published subgraph and cannot be modified");
  if (provenance.license != kCcBySa)
    throw Error(ErrorCode::InvalidArgument,
                "published artifacts are licensed " + std::string(kCcBySa));
  if (provenance.created_at.empty() || provenance.created_by.empty())
    throw Error(ErrorCode::InvalidArgument, "provenance requires created_at and created_by");

  PersistentId pid = registrar.assign(root);
  for (const auto* p : {&kCreated, &kCreator, &kLicense})
    for (const auto& t : g.match(root, iri(*p), {})) session.erase(t);
  session.insert({root, iri(kCreated), Term::literal(provenance.created_at, kXsdDateTime)});
  session.insert({root, iri(kCreator), Term::literal(provenance.created_by)});
  session.insert({root, iri(kLicense), iri(provenance.license)});
  session.insert({root, iri(kIdentifier), Term::literal(pid.value)});
  session.protect_subgraph(root);
  return pid;
}

PersistentId publish(Session& session, const Term& root, const Provenance& provenance) {
  LocalRegistrar registrar;
  return publish(session, root, provenance, registrar);
}

std::optional<PublicationRecord> publication_of(const Graph& graph, const Term& root) {
  using namespace vocab;
  std::optional<PublicationRecord> out;
  for (const auto& t : graph.match(root, iri(kIdentifier), {})) {
    if (!is_metadata_triple(t)) continue;
    out = PublicationRecord{root.value(), t.object.value(), {}};
    break;
  }
  if (!out) return out;
  if (auto v = graph.first_object(root, iri(kCreated))) out->provenance.created_at = v->value();
  if (auto v = graph.first_object(root, iri(kCreator))) out->provenance.created_by = v->value();
  if (auto v = graph.first_object(root, iri(kLicense))) out->provenance.license = v->value();
  return out;
}

std::string publication_to_json(const PublicationRecord& record) {
  nlohmann::ordered_json j;
  j["id"] = record.root;
  j["persistent_id"] = record.persistent_id;
  j["created_at"] = record.provenance.created_at;
  j["created_by"] = record.provenance.created_by;
  j["license"] = record.provenance.license;
  return j.dump(2);
}

Term resource_term(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::InvalidArgument, "empty resource id");
  if (text.find(':') == std::string_view::npos && text.front() != '<')
    return Term::iri(vocab::res(text));
  return Term::iri(PrefixMap::builtin().resolve(text));
}

}  // namespace odk
