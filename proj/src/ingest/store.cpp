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

#include <chrono>
#include <ctime>
#include <deque>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "odk/ingest.hpp"
#include "odk/store.hpp"
#include "odk/vocab.hpp"

namespace odk {
namespace {

std::optional<std::uint64_t> numbered_local(std::string_view iri, std::string_view ns, char tag) {
  if (!iri.starts_with(ns)) return std::nullopt;
  const auto local = iri.substr(ns.size());
  if (local.size() < 2 || local[0] != tag || local.size() > 19) return std::nullopt;
  std::uint64_t n = 0;
  for (const char c : local.substr(1)) {
    if (c < '0' || c > '9') return std::nullopt;
    n = n * 10 + static_cast<std::uint64_t>(c - '0');
  }
  return n;
}

std::set<Term> published_nodes(const Graph& graph) {
  std::set<Term> out;
  for (const auto& t : graph.match({}, Term::iri(vocab::kIdentifier), {})) {
    if (!is_metadata_triple(t)) continue;
    auto reach = reachable_subgraph(graph, t.subject);
    out.insert(reach.begin(), reach.end());
  }
  return out;
}

}  // namespace

Term IdMinter::mint(IdKind kind) {
  const auto n = next_[static_cast<int>(kind)]++;
  switch (kind) {
    case IdKind::Resource: return Term::iri(vocab::res("R" + std::to_string(n)));
    case IdKind::Property: return Term::iri(vocab::pred("P" + std::to_string(n)));
    case IdKind::Class: return Term::iri(vocab::cls("C" + std::to_string(n)));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown id kind");
}

void IdMinter::observe(const Graph& graph) {
  auto bump = [this](const Term& t) {
    if (!t.is_iri()) return;
    const std::string& v = t.value();
    if (auto n = numbered_local(v, vocab::kRes, 'R')) next_[0] = std::max(next_[0], *n + 1);
    if (auto n = numbered_local(v, vocab::kPred, 'P')) next_[1] = std::max(next_[1], *n + 1);
    if (auto n = numbered_local(v, vocab::kClass, 'C')) next_[2] = std::max(next_[2], *n + 1);
  };
  for (const auto& t : graph.triples()) {
    bump(t.subject);
    bump(t.predicate);
    bump(t.object);
  }
}

Provenance Provenance::now(std::string created_by) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  Provenance p;
  p.created_at = buf;
  p.created_by = std::move(created_by);
  return p;
}

bool Session::insert(const Triple& triple) {
  if (graph_.contains(triple)) return false;
  if (protected_.contains(triple.subject))
    throw Error(ErrorCode::ImmutablePublished,
                triple.subject.value() + " belongs to a published subgraph and cannot be modified");
  return graph_.insert(triple);
}

bool Session::erase(const Triple& triple) {
  if (!graph_.contains(triple)) return false;
  if (protected_.contains(triple.subject))
    throw Error(ErrorCode::ImmutablePublished,
                triple.subject.value() + " belongs to a published subgraph and cannot be modified");
  return graph_.erase(triple);
}

void Session::protect_subgraph(const Term& root) {
  auto reach = reachable_subgraph(graph_, root);
  protected_.insert(reach.begin(), reach.end());
}

Store::Store(Graph graph, std::uint64_t mint_start) : minter_(mint_start) {
  minter_.observe(graph);
  protected_ = published_nodes(graph);
  snapshot_ = std::make_shared<const Graph>(std::move(graph));
}

Store Store::load(const std::filesystem::path& path, std::uint64_t mint_start) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read store " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return Store(parse_turtle(buf.str()), mint_start);
}

std::shared_ptr<const Graph> Store::snapshot() const {
  std::shared_lock lock(snapshot_mu_);
  return snapshot_;
}

void Store::commit(Session&& session) {
  auto next = std::make_shared<const Graph>(std::move(session.graph_));
  std::unique_lock lock(snapshot_mu_);
  snapshot_ = std::move(next);
  minter_ = session.minter_;
  protected_ = std::move(session.protected_);
}

void Store::save(const std::filesystem::path& path) const {
  const std::string text = export_turtle(*snapshot());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorCode::Io, "cannot replace " + path.string() + ": " + ec.message());
  }
}

std::set<Term> reachable_subgraph(const Graph& graph, const Term& root) {
  const Term type = Term::iri(vocab::kRdfType);
  std::set<Term> seen{root};
  std::deque<Term> queue{root};
  while (!queue.empty()) {
    const Term node = queue.front();
    queue.pop_front();
    for (const auto& t : graph.match(node, {}, {})) {
      if (t.predicate == type || !t.object.is_iri()) continue;
      if (seen.insert(t.object).second) queue.push_back(t.object);
    }
  }
  return seen;
}

bool is_metadata_triple(const Triple& t) {
  const std::string& p = t.predicate.value();
  if (p == vocab::kCreated || p == vocab::kCreator || p == vocab::kLicense) return true;
  return p == vocab::kIdentifier && t.object.is_literal() &&
         t.object.value().starts_with(kLocalDoiPrefix);
}

std::string export_turtle(const Graph& graph) {
  return serialize_turtle_sections(graph, is_metadata_triple,
                                   "metadata: provenance and persistent identifiers", "data");
}

}  // namespace odk
