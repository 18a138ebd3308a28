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

#include <gtest/gtest.h>
#include <httplib.h>

#include <chrono>
#include <nlohmann/json.hpp>
#include <thread>

#include "odk/comparison.hpp"
#include "odk/query.hpp"
#include "odk/service.hpp"
#include "odk/templates.hpp"
#include "odk/vocab.hpp"
#include "support/fixture.hpp"

namespace odk {
namespace {

using nlohmann::json;

HttpRequest get(std::string path, std::multimap<std::string, std::string> params = {}) {
  return {"GET", std::move(path), std::move(params), "", ""};
}

HttpRequest post(std::string path, std::string body, std::string type = "application/json") {
  return {"POST", std::move(path), {}, std::move(body), std::move(type)};
}

class ServiceTest : public ::testing::Test {
 protected:
  ServiceTest() : store_(testing::fixture_graph()), service_(store_, ServiceOptions{}) {}
  Store store_;
  Service service_;
};

TEST_F(ServiceTest, DescribesResources) {
  const auto res = service_.handle(get("/api/resources/R1"));
  ASSERT_EQ(res.status, 200) << res.body;
  const auto j = json::parse(res.body);
  EXPECT_EQ(j["id"], "https://orkg.org/resource/R1");
  EXPECT_EQ(j["label"], "RhetoSent");
  EXPECT_EQ(j["types"].size(), 2u);
  EXPECT_EQ(res.body, describe_resource(*store_.snapshot(), Term::iri(vocab::res("R1"))));
  EXPECT_EQ(service_.handle(get("/api/resources/R999999")).status, 404);
}

TEST_F(ServiceTest, QueryMatchesLibrary) {
  const auto text = testing::fixture_text("fig1.rq");
  const auto expected = evaluate(*store_.snapshot(), parse_query(text));
  auto res = service_.handle(post("/api/query", json{{"query", text}}.dump()));
  ASSERT_EQ(res.status, 200) << res.body;
  EXPECT_EQ(res.body, result_to_json(expected));
  auto plain = post("/api/query", text, "application/sparql-query");
  plain.params.emplace("format", "csv");
  res = service_.handle(plain);
  EXPECT_EQ(res.body, result_to_csv(expected));
  EXPECT_EQ(res.content_type, "text/csv; charset=utf-8");
}

TEST_F(ServiceTest, QueryErrorsAreStructured) {
  auto res = service_.handle(post("/api/query", "SELECT ?s\nWHERE { ?s <http://x/p> }", "text/plain"));
  EXPECT_EQ(res.status, 400);
  auto j = json::parse(res.body);
  EXPECT_EQ(j["code"], "SyntaxError");
  EXPECT_EQ(j["line"], 2);
  res = service_.handle(post("/api/query", "SELECT ?s WHERE { ?s <http://x/p> ?o } LIMIT 1", "text/plain"));
  EXPECT_EQ(json::parse(res.body)["code"], "UnsupportedConstruct");
}

TEST_F(ServiceTest, ComparisonMatchesLibrary) {
  const auto table = build_comparison(*store_.snapshot(), Term::iri(testing::kComparisonRoot));
  EXPECT_EQ(service_.handle(get("/api/comparisons/R280270")).body,
            export_table(table, ExportFormat::Json));
  const auto csv = service_.handle(get("/api/comparisons/R280270", {{"format", "csv"}}));
  EXPECT_EQ(csv.body, export_table(table, ExportFormat::Csv));
  EXPECT_EQ(csv.content_type, content_type(ExportFormat::Csv));

  FilterSpec spec;
  spec.require.push_back(parse_filter_clause("F1-score > 0.7"));
  spec.hide_properties.insert("leaderboard");
  const auto filtered = service_.handle(get(
      "/api/comparisons/R280270", {{"filter", "F1-score > 0.7"}, {"hide", "leaderboard"}}));
  EXPECT_EQ(filtered.body, export_table(filter_table(table, spec), ExportFormat::Json));
  EXPECT_EQ(service_.handle(get("/api/comparisons/R280270/timeline")).body,
            timeline_to_json(timeline(table)));
  EXPECT_EQ(service_.handle(get("/api/comparisons/R280270", {{"format", "xlsx"}})).status, 400);
  EXPECT_EQ(service_.handle(get("/api/comparisons/R404")).status, 404);
  EXPECT_EQ(service_.handle(get("/api/comparisons/R1")).status, 400);
}

TEST_F(ServiceTest, TemplatesAndValidation) {
  EXPECT_EQ(service_.handle(get("/api/templates")).body,
            templates_to_json(TemplateRegistry::builtin().all()));
  const auto res = service_.handle(
      post("/api/validate", R"({"resource":"R1","template":"https://orkg.org/template/R178304"})"));
  ASSERT_EQ(res.status, 200) << res.body;
  EXPECT_TRUE(json::parse(res.body)["conforms"].get<bool>());
  EXPECT_EQ(service_.handle(post("/api/validate", R"({"resource":"R1"})")).status, 400);
}

TEST_F(ServiceTest, PublishThenMetadataThenConflict) {
  EXPECT_EQ(service_.handle(get("/api/resources/R280270/metadata")).status, 404);
  const auto pub = service_.handle(post("/api/comparisons/R280270/publish",
                                        R"({"created_by":"curator","created_at":"2024-05-01T00:00:00Z"})"));
  ASSERT_EQ(pub.status, 201) << pub.body;
  const auto meta = service_.handle(get("/api/resources/R280270/metadata"));
  ASSERT_EQ(meta.status, 200);
  EXPECT_EQ(meta.body, pub.body);
  const auto j = json::parse(meta.body);
  EXPECT_EQ(j["persistent_id"], "10.0000/orkgdk.R280270");
  EXPECT_EQ(j["license"], std::string(vocab::kCcBySa));
  EXPECT_EQ(j["created_by"], "curator");
  EXPECT_EQ(service_.handle(post("/api/comparisons/R280270/publish", "")).status, 409);
}

TEST_F(ServiceTest, IngestCreatesContributions) {
  int commits = 0;
  Store store;
  ServiceOptions options;
  options.on_commit = [&](const Graph&) { ++commits; };
  Service service(store, options);
  auto req = post("/api/ingest", testing::fixture_text("scientific_ie.json"));
  req.params.emplace("created_by", "loader");
  const auto res = service.handle(req);
  ASSERT_EQ(res.status, 201) << res.body;
  EXPECT_EQ(json::parse(res.body)["contributions"].size(), 5u);
  EXPECT_EQ(commits, 1);
  const auto bad = service.handle(post("/api/ingest", R"({"papers":[{"title":""}]})"));
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(json::parse(bad.body)["code"], "InvalidRecord");
  EXPECT_EQ(commits, 1);
}

TEST_F(ServiceTest, ReadsDoNotChangeTheStore) {
  const auto before = store_.snapshot()->fingerprint();
  for (const char* path : {"/api/resources/R1", "/api/templates", "/api/comparisons/R280270",
                           "/api/comparisons/R280270/timeline", "/api/resources/R280270/metadata"})
    service_.handle(get(path));
  service_.handle(post("/api/query", testing::fixture_text("fig2.rq"), "text/plain"));
  EXPECT_EQ(store_.snapshot()->fingerprint(), before);
}

TEST_F(ServiceTest, UnknownRoutesAre404) {
  EXPECT_EQ(service_.handle(get("/nope")).status, 404);
  EXPECT_EQ(service_.handle(get("/api/query")).status, 404);
}

TEST(ServiceErrors, StatusMapping) {
  EXPECT_EQ(http_status(ErrorCode::NotFound), 404);
  EXPECT_EQ(http_status(ErrorCode::AlreadyPublished), 409);
  EXPECT_EQ(http_status(ErrorCode::ImmutablePublished), 409);
  EXPECT_EQ(http_status(ErrorCode::TypeViolation), 422);
  EXPECT_EQ(http_status(ErrorCode::Io), 500);
  EXPECT_EQ(http_status(ErrorCode::Syntax), 400);
  const auto j = json::parse(api_error_json(404, Error(ErrorCode::NotFound, "gone")));
  EXPECT_EQ(j["status"], 404);
  EXPECT_EQ(j["message"], "gone");
  EXPECT_FALSE(j.contains("line"));
}

TEST(ServiceCors, HeadersAndPreflight) {
  Store store(testing::fixture_graph());
  ServiceOptions options;
  options.cors_origin = "https://ui.example.org";
  Service service(store, options);
  const auto pre = service.handle({"OPTIONS", "/api/query", {}, "", ""});
  EXPECT_EQ(pre.status, 204);
  EXPECT_EQ(pre.headers.at("Access-Control-Allow-Origin"), "https://ui.example.org");
  EXPECT_EQ(service.handle(get("/api/templates")).headers.count("Access-Control-Allow-Origin"), 1u);
  Service closed(store, ServiceOptions{});
  EXPECT_TRUE(closed.handle(get("/api/templates")).headers.empty());
}

TEST(ServiceEnv, ReadsBindAndCors) {
  setenv("ODK_BIND", "0.0.0.0:9999", 1);
  setenv("ODK_CORS_ORIGIN", "*", 1);
  const auto o = service_options_from_env();
  EXPECT_EQ(o.bind, "0.0.0.0:9999");
  EXPECT_EQ(o.cors_origin, "*");
  unsetenv("ODK_BIND");
  unsetenv("ODK_CORS_ORIGIN");
  EXPECT_EQ(service_options_from_env().bind, "127.0.0.1:8080");
}

TEST(ServiceHttp, ServesOverAnEphemeralPort) {
  Store store(testing::fixture_graph());
  ServiceOptions options;
  options.bind = "127.0.0.1:0";
  options.cors_origin = "*";
  Service service(store, options);
  const int port = service.bind();
  ASSERT_GT(port, 0);
  std::thread server([&] { service.run(); });

  httplib::Client client("127.0.0.1", port);
  client.set_connection_timeout(2);
  httplib::Result res;
  for (int i = 0; i < 100 && !(res = client.Get("/api/templates")); ++i)
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");

  const auto q = client.Post("/api/query?format=csv", testing::fixture_text("fig1.rq"), "text/plain");
  ASSERT_TRUE(q);
  EXPECT_EQ(q->body, result_to_csv(evaluate(*store.snapshot(),
                                            parse_query(testing::fixture_text("fig1.rq")))));
  const auto filtered = client.Get("/api/comparisons/R280270?filter=F1-score%20%3E%200.7&format=csv");
  ASSERT_TRUE(filtered);
  EXPECT_EQ(filtered->body.substr(0, filtered->body.find('\r')), "property,CiteIntent,SciGraphIE");
  const auto missing = client.Get("/api/resources/R424242");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);
  const auto pre = client.Options("/api/query");
  ASSERT_TRUE(pre);
  EXPECT_EQ(pre->status, 204);

  service.stop();
  server.join();
}

}  // namespace
}  // namespace odk
