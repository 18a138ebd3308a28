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
#include <array>
#include <cmath>

#include <nlohmann/json.hpp>

#include "odk/ingest.hpp"
#include "odk/templates.hpp"
#include "odk/vocab.hpp"

namespace odk {
namespace {

using json = nlohmann::json;

constexpr std::array<std::string_view, 5> kGranularities = {"entities", "relations", "sentences",
                                                            "documents", "spans"};

[[noreturn]] void bad(const std::string& field, const std::string& why) {
  throw Error(ErrorCode::InvalidRecord, field + ": " + why);
}

bool template_has(std::string_view template_id, const std::string& property) {
  return TemplateRegistry::builtin().at(template_id).find_shape(property) != nullptr;
}

std::string get_string(const json& j, const char* key, const std::string& where,
                       bool required = true) {
  if (!j.contains(key) || j[key].is_null()) {
    if (required) bad(where + "." + key, "missing");
    return {};
  }
  if (!j[key].is_string()) bad(where + "." + key, "must be a string");
  return j[key].get<std::string>();
}

std::vector<std::string> get_strings(const json& j, const char* key, const std::string& where) {
  std::vector<std::string> out;
  if (!j.contains(key) || j[key].is_null()) return out;
  if (!j[key].is_array()) bad(where + "." + key, "must be an array of strings");
  for (std::size_t i = 0; i < j[key].size(); ++i) {
    const auto& v = j[key][i];
    if (!v.is_string()) bad(where + "." + key + "[" + std::to_string(i) + "]", "must be a string");
    out.push_back(v.get<std::string>());
  }
  return out;
}

const json& get_array(const json& j, const char* key, const std::string& where) {
  static const json kEmpty = json::array();
  if (!j.contains(key) || j[key].is_null()) return kEmpty;
  if (!j[key].is_array()) bad(where + "." + key, "must be an array");
  return j[key];
}

double get_score(const json& j, const std::string& where) {
  if (!j.contains("score") || !j["score"].is_number()) bad(where + ".score", "must be a number");
  return j["score"].get<double>();
}

std::string scalar_text(const json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return format_decimal(v.get<double>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  bad(where, "must be a string or number");
}

ContributionRecord parse_contribution(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "must be an object");
  ContributionRecord c;
  c.name = get_string(j, "name", where);
  c.research_problems = get_strings(j, "research_problems", where);
  c.same_as = get_strings(j, "same_as", where);
  c.entity_types = get_strings(j, "entity_types", where);

  if (j.contains("metadata") && !j["metadata"].is_null()) {
    if (!j["metadata"].is_object()) bad(where + ".metadata", "must be an object");
    for (const auto& [key, value] : j["metadata"].items()) {
      const std::string field = where + ".metadata." + key;
      auto& values = c.metadata[key];
      if (value.is_array()) {
        for (std::size_t i = 0; i < value.size(); ++i)
          values.push_back(scalar_text(value[i], field + "[" + std::to_string(i) + "]"));
      } else {
        values.push_back(scalar_text(value, field));
      }
    }
  }
  if (j.contains("statistics") && !j["statistics"].is_null()) {
    if (!j["statistics"].is_object()) bad(where + ".statistics", "must be an object");
    for (const auto& [key, value] : j["statistics"].items()) {
      if (!value.is_number_integer()) bad(where + ".statistics." + key, "must be an integer");
      c.statistics[key] = value.get<long long>();
    }
  }
  const auto& quality = get_array(j, "quality_results", where);
  for (std::size_t i = 0; i < quality.size(); ++i) {
    const std::string w = where + ".quality_results[" + std::to_string(i) + "]";
    QualityResultRecord q;
    q.metric = get_string(quality[i], "metric", w);
    q.score = get_score(quality[i], w);
    const auto& items = get_array(quality[i], "evaluation_items", w);
    for (std::size_t k = 0; k < items.size(); ++k) {
      const std::string wi = w + ".evaluation_items[" + std::to_string(k) + "]";
      q.evaluation_items.push_back({get_string(items[k], "label", wi),
                                    get_string(items[k], "granularity", wi)});
    }
    c.quality_results.push_back(std::move(q));
  }
  const auto& boards = get_array(j, "leaderboards", where);
  for (std::size_t i = 0; i < boards.size(); ++i) {
    const std::string w = where + ".leaderboards[" + std::to_string(i) + "]";
    LeaderboardRecord l;
    l.model_name = get_string(boards[i], "model_name", w);
    l.model_code_url = get_string(boards[i], "model_code_url", w, false);
    l.metric = get_string(boards[i], "metric", w);
    l.score = get_score(boards[i], w);
    c.leaderboards.push_back(std::move(l));
  }
  return c;
}

PaperRecord parse_paper(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "must be an object");
  PaperRecord p;
  p.title = get_string(j, "title", where);
  p.authors = get_strings(j, "authors", where);
  if (!j.contains("publication_year") || !j["publication_year"].is_number_integer())
    bad(where + ".publication_year", "must be an integer");
  p.publication_year = j["publication_year"].get<int>();
  if (j.contains("doi") && !j["doi"].is_null()) p.doi = get_string(j, "doi", where);
  p.research_field = get_string(j, "research_field", where, false);
  const auto& contributions = get_array(j, "contributions", where);
  for (std::size_t i = 0; i < contributions.size(); ++i)
    p.contributions.push_back(
        parse_contribution(contributions[i], where + ".contributions[" + std::to_string(i) + "]"));
  return p;
}

}  // namespace

IngestionFile parse_ingestion_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidRecord, std::string("malformed ingestion JSON: ") + e.what());
  }
  if (!j.is_object()) bad("$", "top level must be an object");
  if (!j.contains("papers") || !j["papers"].is_array()) bad("papers", "missing array");
  IngestionFile file;
  for (std::size_t i = 0; i < j["papers"].size(); ++i) {
    const std::string where = "papers[" + std::to_string(i) + "]";
    file.papers.push_back(parse_paper(j["papers"][i], where));
    check_record(file.papers.back());
  }
  if (j.contains("comparison") && !j["comparison"].is_null()) {
    const auto& c = j["comparison"];
    if (!c.is_object()) bad("comparison", "must be an object");
    file.comparison = ComparisonRecord{get_string(c, "id", "comparison"),
                                       get_string(c, "label", "comparison", false)};
  }
  return file;
}

void check_record(const PaperRecord& record) {
  if (record.title.empty()) bad("title", "must not be empty");
  if (record.publication_year < 1900 || record.publication_year > 2100)
    bad("publication_year", "must be within 1900..2100, got " +
                                std::to_string(record.publication_year));
  if (record.contributions.empty()) bad("contributions", "at least one contribution is required");
  for (std::size_t i = 0; i < record.contributions.size(); ++i) {
    const auto& c = record.contributions[i];
    const std::string where = "contributions[" + std::to_string(i) + "]";
    if (c.name.empty()) bad(where + ".name", "must not be empty");
    for (const auto& [key, values] : c.metadata) {
      if (!template_has(templates::kDatasetMetadata, vocab::schema(key)))
        bad(where + ".metadata." + key, "not a Dataset metadata property");
      if (values.empty()) bad(where + ".metadata." + key, "must have at least one value");
    }
    for (const auto& [key, value] : c.statistics) {
      if (!template_has(templates::kStatistics, vocab::pred(key)))
        bad(where + ".statistics." + key, "not a statistics property");
      if (value < 0) bad(where + ".statistics." + key, "must be non-negative");
    }
    for (std::size_t k = 0; k < c.quality_results.size(); ++k) {
      const auto& q = c.quality_results[k];
      const std::string w = where + ".quality_results[" + std::to_string(k) + "]";
      if (q.metric.empty()) bad(w + ".metric", "must not be empty");
      if (!std::isfinite(q.score)) bad(w + ".score", "must be finite");
      for (const auto& item : q.evaluation_items) {
        if (item.label.empty()) bad(w + ".evaluation_items.label", "must not be empty");
        if (std::find(kGranularities.begin(), kGranularities.end(), item.granularity) ==
            kGranularities.end())
          bad(w + ".evaluation_items.granularity",
              "'" + item.granularity +
                  "' is not one of entities, relations, sentences, documents, spans");
      }
    }
    for (std::size_t k = 0; k < c.leaderboards.size(); ++k) {
      const auto& l = c.leaderboards[k];
      const std::string w = where + ".leaderboards[" + std::to_string(k) + "]";
      if (l.model_name.empty()) bad(w + ".model_name", "must not be empty");
      if (l.metric.empty()) bad(w + ".metric", "must not be empty");
      if (!std::isfinite(l.score)) bad(w + ".score", "must be finite");
    }
    for (const auto& iri : c.same_as) {
      try {
        (void)Term::iri(PrefixMap::builtin().resolve(iri));
      } catch (const Error&) {
        bad(where + ".same_as", "'" + iri + "' is not an IRI");
      }
    }
  }
}

}  // namespace odk
