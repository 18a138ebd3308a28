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
#include <fstream>
#include <sstream>
#include <string>

#include "odk/ingest.hpp"
#include "odk/store.hpp"

#ifndef ODK_FIXTURE_DIR
#error "ODK_FIXTURE_DIR must point at the fixtures directory"
#endif

namespace odk::testing {

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture_text(const std::string& name) {
  return read_file(std::filesystem::path(ODK_FIXTURE_DIR) / name);
}

inline Provenance fixed_provenance() {
  return Provenance{"2024-01-01T00:00:00Z", "fixture-curator",
                    "https://creativecommons.org/licenses/by-sa/2.0/"};
}

/// Graph holding the five-paper fixture and its comparison R280270.
inline Graph fixture_graph() {
  Store store;
  const auto file = parse_ingestion_json(fixture_text("scientific_ie.json"));
  store.update([&](Session& s) { ingest_file(s, file, fixed_provenance()); });
  return *store.snapshot();
}

inline const char* kComparisonRoot = "https://orkg.org/resource/R280270";

}  // namespace odk::testing
