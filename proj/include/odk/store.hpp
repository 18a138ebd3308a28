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

#include <filesystem>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>

#include "odk/rdf.hpp"

namespace odk {

enum class IdKind { Resource, Property, Class };

/// Mints R{n} / P{n} / C{n} identifiers in the res:, pred: and class:
/// namespaces. Counters only move forward.
class IdMinter {
 public:
  explicit IdMinter(std::uint64_t start = 1) : next_{start, start, start} {}

  Term mint(IdKind kind);
  std::uint64_t peek(IdKind kind) const { return next_[static_cast<int>(kind)]; }
  /// Bumps counters past every R/P/C id already present in `graph`.
  void observe(const Graph& graph);

 private:
  std::uint64_t next_[3];
};

/// Provenance stamped on published artifacts.
struct Provenance {
  std::string created_at;  ///< ISO-8601 UTC, e.g. 2024-01-01T00:00:00Z
  std::string created_by;
  std::string license = "https://creativecommons.org/licenses/by-sa/2.0/";

  /// Provenance timestamped with the current UTC time.
  static Provenance now(std::string created_by);

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

class Store;

/// Exclusive write access to a store. Obtained through Store::update; all
/// changes become visible atomically when the update function returns.
class Session {
 public:
  const Graph& graph() const noexcept { return graph_; }

  /// Rejects (with ImmutablePublished) new triples whose subject lies in a
  /// published subgraph. Re-inserting an existing triple is a no-op.
  bool insert(const Triple& triple);
  bool erase(const Triple& triple);
  Term mint(IdKind kind) { return minter_.mint(kind); }

  /// True when `node` is reachable from a published root.
  bool is_protected(const Term& node) const { return protected_.contains(node); }
  /// Freezes everything reachable from `root`. Called by publish().
  void protect_subgraph(const Term& root);

 private:
  friend class Store;
  Session(Graph graph, IdMinter minter, std::set<Term> protected_nodes)
      : graph_(std::move(graph)), minter_(minter), protected_(std::move(protected_nodes)) {}

  Graph graph_;
  IdMinter minter_;
  std::set<Term> protected_;
};

/// Snapshot-isolated triple store: any number of concurrent readers, one
/// writer at a time. Readers hold immutable Graph snapshots.
class Store {
 public:
  explicit Store(Graph graph = {}, std::uint64_t mint_start = 1);

  static Store load(const std::filesystem::path& path, std::uint64_t mint_start = 1);

  std::shared_ptr<const Graph> snapshot() const;

  /// Runs `fn(Session&)` with exclusive access. If `fn` throws, nothing is
  /// committed.
  template <class Fn>
  decltype(auto) update(Fn&& fn) {
    std::lock_guard writer(write_mu_);
    Session session(*snapshot(), minter_, protected_);
    if constexpr (std::is_void_v<decltype(fn(session))>) {
      fn(session);
      commit(std::move(session));
    } else {
      auto result = fn(session);
      commit(std::move(session));
      return result;
    }
  }

  /// Atomic save: write to a temporary sibling, then rename.
  void save(const std::filesystem::path& path) const;

 private:
  void commit(Session&& session);

  mutable std::shared_mutex snapshot_mu_;
  std::mutex write_mu_;
  std::shared_ptr<const Graph> snapshot_;
  IdMinter minter_;
  std::set<Term> protected_;
};

/// Nodes reachable from `root` through non-rdf:type edges, root included.
std::set<Term> reachable_subgraph(const Graph& graph, const Term& root);

/// Provenance and persistent-identifier triples, which are exported apart
/// from the data they describe.
bool is_metadata_triple(const Triple& triple);

/// Turtle export with the metadata block first, then the data block.
std::string export_turtle(const Graph& graph);

}  // namespace odk
