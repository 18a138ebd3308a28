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

#include "odk/odk.h"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

std::string fixture(const std::string& name) {
  std::ifstream in(std::filesystem::path(ODK_FIXTURE_DIR) / name);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  odk_string_free(s);
  return out;
}

class CApi : public ::testing::Test {
 protected:
  void SetUp() override {
    ASSERT_EQ(odk_store_new(&store_), ODK_OK);
    char* out = nullptr;
    ASSERT_EQ(odk_ingest_json(store_, fixture("scientific_ie.json").c_str(), "capi",
                              "2024-01-01T00:00:00Z", &out),
              ODK_OK)
        << odk_last_error();
    ingested_ = take(out);
  }
  void TearDown() override { odk_store_free(store_); }

  odk_store* store_ = nullptr;
  std::string ingested_;
};

TEST(CApiBasics, VersionAndStatusNames) {
  EXPECT_STREQ(odk_version(), "1.0.0");
  EXPECT_STREQ(odk_status_name(ODK_OK), "Ok");
  EXPECT_STREQ(odk_status_name(ODK_E_NOT_FOUND), "NotFound");
  odk_string_free(nullptr);
}

TEST(CApiBasics, NullArgumentsAreRejected) {
  EXPECT_EQ(odk_store_new(nullptr), ODK_E_INVALID_ARGUMENT);
  char* out = nullptr;
  EXPECT_EQ(odk_query(nullptr, "SELECT * WHERE { ?s <http://x/p> ?o }", "json", &out),
            ODK_E_INVALID_ARGUMENT);
  EXPECT_NE(std::string(odk_last_error()), "");
  odk_store_free(nullptr);
}

TEST_F(CApi, IngestReportsContributions) {
  EXPECT_EQ(json::parse(ingested_)["contributions"].size(), 5u);
  size_t n = 0;
  ASSERT_EQ(odk_store_size(store_, &n), ODK_OK);
  EXPECT_GT(n, 100u);
  char* out = nullptr;
  EXPECT_EQ(odk_ingest_json(store_, "{\"papers\":[{}]}", "capi", nullptr, &out),
            ODK_E_INVALID_RECORD);
  EXPECT_EQ(out, nullptr);
}

TEST_F(CApi, QueryAndExplain) {
  char* out = nullptr;
  ASSERT_EQ(odk_query(store_, fixture("fig2.rq").c_str(), "csv", &out), ODK_OK);
  EXPECT_EQ(take(out), "concept,agg1\r\nMethod,\"RhetoSent,SciGraphIE\"\r\nResearch problem,CiteIntent\r\n");
  ASSERT_EQ(odk_query(store_, fixture("fig1.rq").c_str(), "json", &out), ODK_OK);
  EXPECT_EQ(json::parse(take(out))["rows"].size(), 7u);
  ASSERT_EQ(odk_explain(fixture("fig1.rq").c_str(), &out), ODK_OK);
  EXPECT_NE(take(out).find("group by ?task"), std::string::npos);
  EXPECT_EQ(odk_query(store_, "SELECT ?s WHERE {", "json", &out), ODK_E_SYNTAX);
  EXPECT_EQ(odk_query(store_, fixture("fig1.rq").c_str(), "xml", &out), ODK_E_INVALID_ARGUMENT);
}

TEST_F(CApi, ValidateReportsConformance) {
  int conforms = 0;
  char* report = nullptr;
  ASSERT_EQ(odk_validate(store_, "R1", "R178304", nullptr, &conforms, &report), ODK_OK)
      << odk_last_error();
  EXPECT_EQ(conforms, 1);
  EXPECT_TRUE(json::parse(take(report))["conforms"].get<bool>());
  EXPECT_EQ(odk_validate(store_, "R1", "R0", nullptr, &conforms, &report), ODK_E_NOT_FOUND);
}

TEST_F(CApi, CompareFilterAndTimeline) {
  char* out = nullptr;
  ASSERT_EQ(odk_compare(store_, "R280270", "json", "{\"require\":[\"F1-score > 0.7\"]}", &out),
            ODK_OK)
      << odk_last_error();
  const auto table = json::parse(take(out));
  ASSERT_EQ(table["columns"].size(), 2u);
  EXPECT_EQ(table["columns"][0]["label"], "CiteIntent");
  ASSERT_EQ(odk_timeline(store_, "R280270", &out), ODK_OK);
  EXPECT_EQ(json::parse(take(out)).size(), 5u);
  EXPECT_EQ(odk_compare(store_, "R404", "json", nullptr, &out), ODK_E_NOT_FOUND);
  EXPECT_EQ(odk_compare(store_, "R280270", "json", "{\"require\":[\"F1-score > x\"]}", &out),
            ODK_E_INVALID_ARGUMENT);
}

TEST_F(CApi, PublishMetadataAndImmutability) {
  char* out = nullptr;
  EXPECT_EQ(odk_metadata(store_, "R280270", &out), ODK_E_NOT_FOUND);
  ASSERT_EQ(odk_publish(store_, "R280270", "capi", "2024-02-02T00:00:00Z", &out), ODK_OK)
      << odk_last_error();
  const auto pub = json::parse(take(out));
  EXPECT_EQ(pub["persistent_id"], "10.0000/orkgdk.R280270");
  ASSERT_EQ(odk_metadata(store_, "R280270", &out), ODK_OK);
  EXPECT_EQ(json::parse(take(out)), pub);
  EXPECT_EQ(odk_publish(store_, "R280270", "capi", nullptr, &out), ODK_E_ALREADY_PUBLISHED);
}

TEST_F(CApi, SaveLoadExportRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / "odk_capi_store.ttl").string();
  ASSERT_EQ(odk_store_save_turtle_file(store_, path.c_str()), ODK_OK);
  char* first = nullptr;
  ASSERT_EQ(odk_store_export_turtle(store_, &first), ODK_OK);
  odk_store* other = nullptr;
  ASSERT_EQ(odk_store_new(&other), ODK_OK);
  ASSERT_EQ(odk_store_load_turtle_file(other, path.c_str(), 0), ODK_OK);
  char* second = nullptr;
  ASSERT_EQ(odk_store_export_turtle(other, &second), ODK_OK);
  EXPECT_EQ(take(first), take(second));
  EXPECT_EQ(odk_store_load_turtle_file(other, "/nonexistent/odk.ttl", 0), ODK_E_IO);
  EXPECT_EQ(odk_store_load_turtle_file(other, "/nonexistent/odk.ttl", 1), ODK_OK);
  size_t n = 1;
  odk_store_size(other, &n);
  EXPECT_EQ(n, 0u);
  EXPECT_EQ(odk_store_load_turtle(other, "_:b <http://x/p> 1 ."), ODK_E_BLANK_NODE);
  odk_store_free(other);
  std::filesystem::remove(path);
}

TEST_F(CApi, DescribeAndTemplates) {
  char* out = nullptr;
  ASSERT_EQ(odk_describe(store_, "R1", &out), ODK_OK);
  EXPECT_EQ(json::parse(take(out))["label"], "RhetoSent");
  ASSERT_EQ(odk_templates_json(&out), ODK_OK);
  EXPECT_EQ(json::parse(take(out)).size(), 5u);
}

}  // namespace
