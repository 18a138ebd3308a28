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

#include "odk/service.hpp"

#include <cstdlib>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "odk/comparison.hpp"
#include "odk/ingest.hpp"
#include "odk/query.hpp"
#include "odk/templates.hpp"
#include "odk/vocab.hpp"

namespace odk {
namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_path(std::string_view path) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    const auto j = path.find('/', i);
    const auto end = j == std::string_view::npos ? path.size() : j;
    if (end > i) out.emplace_back(path.substr(i, end - i));
    i = end;
  }
  return out;
}

std::string param(const HttpRequest& r, const std::string& key, std::string fallback = {}) {
  const auto it = r.params.find(key);
  return it == r.params.end() ? fallback : it->second;
}

HttpResponse ok(std::string body, std::string_view type = "application/json") {
  return {200, std::string(type), std::move(body), {}};
}

json parse_body(const HttpRequest& r) {
  try {
    return r.body.empty() ? json::object() : json::parse(r.body);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("request body is not JSON: ") + e.what());
  }
}

std::string body_string(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key) || !j[key].is_string())
    throw Error(ErrorCode::InvalidArgument, "request body needs a string field '" + key + "'");
  return j[key].get<std::string>();
}

}  // namespace

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::AlreadyPublished:
    case ErrorCode::ImmutablePublished: return 409;
    case ErrorCode::InternalConsistency:
    case ErrorCode::TypeViolation: return 422;
    case ErrorCode::Io: return 500;
    default: return 400;
  }
}

std::string api_error_json(int status, const Error& error) {
  json j;
  j["status"] = status;
  j["code"] = std::string(to_string(error.code()));
  j["message"] = error.what();
  if (const auto* s = dynamic_cast<const SyntaxError*>(&error)) {
    j["line"] = s->line();
    j["column"] = s->column();
    j["offset"] = s->offset();
  }
  return j.dump();
}

std::string describe_resource(const Graph& graph, const Term& resource) {
  const auto statements = graph.match(resource, {}, {});
  if (statements.empty()) throw Error(ErrorCode::NotFound, "resource " + resource.value() + " not found");
  json j;
  j["id"] = resource.value();
  const auto label = graph.first_object(resource, Term::iri(vocab::kRdfsLabel));
  j["label"] = label ? json(label->value()) : json(nullptr);
  j["types"] = json::array();
  for (const auto& t : graph.objects(resource, Term::iri(vocab::kRdfType))) j["types"].push_back(t.value());
  j["statements"] = json::array();
  for (const auto& t : statements) {
    json s;
    s["predicate"] = t.predicate.value();
    s["object"] = t.object.value();
    s["kind"] = t.object.is_iri() ? "iri" : "literal";
    if (t.object.is_literal()) {
      s["datatype"] = t.object.datatype();
      if (!t.object.language().empty()) s["language"] = t.object.language();
    }
    j["statements"].push_back(std::move(s));
  }
  return j.dump();
}

ServiceOptions service_options_from_env() {
  ServiceOptions o;
  if (const char* b = std::getenv("ODK_BIND"); b && *b) o.bind = b;
  if (const char* c = std::getenv("ODK_CORS_ORIGIN"); c && *c) o.cors_origin = c;
  return o;
}

struct Service::Impl {
  Store& store;
  ServiceOptions options;
  httplib::Server server;
  std::string host;
  int port = 0;

  Impl(Store& s, ServiceOptions o) : store(s), options(std::move(o)) {}

  void committed() {
    if (options.on_commit) options.on_commit(*store.snapshot());
  }

  HttpResponse route(const HttpRequest& r) {
    const auto seg = split_path(r.path);
    const bool get = r.method == "GET";
    const bool post = r.method == "POST";
    if (seg.size() < 2 || seg[0] != "api")
      throw Error(ErrorCode::NotFound, "no endpoint at " + r.path);
    const auto& area = seg[1];

    if (area == "resources" && get && seg.size() == 3)
      return ok(describe_resource(*store.snapshot(), resource_term(seg[2])));
    if (area == "resources" && get && seg.size() == 4 && seg[3] == "metadata") {
      const auto pub = publication_of(*store.snapshot(), resource_term(seg[2]));
      if (!pub) throw Error(ErrorCode::NotFound, seg[2] + " is not published");
      return ok(publication_to_json(*pub));
    }
    if (area == "query" && post && seg.size() == 2) return query(r);
    if (area == "templates" && get && seg.size() == 2)
      return ok(templates_to_json(TemplateRegistry::builtin().all()));
    if (area == "validate" && post && seg.size() == 2) {
      const auto body = parse_body(r);
      const auto& registry = TemplateRegistry::builtin();
      const auto& tmpl = registry.at(body_string(body, "template"));
      return ok(report_to_json(
          validate(*store.snapshot(), resource_term(body_string(body, "resource")), tmpl, registry)));
    }
    if (area == "ingest" && post && seg.size() == 2) return ingest(r);
    if (area == "comparisons" && seg.size() >= 3) {
      const Term root = resource_term(seg[2]);
      if (get && seg.size() == 3) {
        const auto format = parse_export_format(param(r, "format", "json"));
        const auto table = filter_table(build_comparison(*store.snapshot(), root), filter_spec(r));
        return ok(export_table(table, format), content_type(format));
      }
      if (get && seg.size() == 4 && seg[3] == "timeline")
        return ok(timeline_to_json(timeline(build_comparison(*store.snapshot(), root))));
      if (post && seg.size() == 4 && seg[3] == "publish") return publish_root(r, root);
    }
    throw Error(ErrorCode::NotFound, "no endpoint for " + r.method + " " + r.path);
  }

  static FilterSpec filter_spec(const HttpRequest& r) {
    FilterSpec spec;
    auto [hb, he] = r.params.equal_range("hide");
    for (auto it = hb; it != he; ++it) spec.hide_properties.insert(it->second);
    auto [fb, fe] = r.params.equal_range("filter");
    for (auto it = fb; it != fe; ++it) spec.require.push_back(parse_filter_clause(it->second));
    if (auto years = param(r, "years"); !years.empty()) spec.year_range = parse_year_range(years);
    return spec;
  }

  HttpResponse query(const HttpRequest& r) {
    std::string text = r.body;
    std::string format = param(r, "format", "json");
    if (r.content_type.starts_with("application/json")) {
      const auto body = parse_body(r);
      text = body_string(body, "query");
      if (body.contains("format") && body["format"].is_string()) format = body["format"];
    }
    const auto table = evaluate(*store.snapshot(), parse_query(text));
    if (format == "csv") return ok(result_to_csv(table), "text/csv; charset=utf-8");
    if (format != "json")
      throw Error(ErrorCode::InvalidArgument, "query format must be json or csv");
    return ok(result_to_json(table));
  }

  HttpResponse ingest(const HttpRequest& r) {
    const auto file = parse_ingestion_json(r.body);
    const auto provenance = Provenance::now(param(r, "created_by", options.default_creator));
    const auto roots = store.update(
        [&](Session& s) { return ingest_file(s, file, provenance); });
    committed();
    json j;
    j["contributions"] = json::array();
    for (const auto& t : roots) j["contributions"].push_back(t.value());
    return {201, "application/json", j.dump(), {}};
  }

  HttpResponse publish_root(const HttpRequest& r, const Term& root) {
    const auto body = parse_body(r);
    std::string creator = options.default_creator;
    if (body.contains("created_by") && body["created_by"].is_string()) creator = body["created_by"];
    Provenance provenance = Provenance::now(creator);
    if (body.contains("created_at") && body["created_at"].is_string())
      provenance.created_at = body["created_at"];
    store.update([&](Session& s) { publish(s, root, provenance); });
    committed();
    const auto pub = publication_of(*store.snapshot(), root);
    return {201, "application/json", publication_to_json(*pub), {}};
  }

  HttpResponse handle(const HttpRequest& r) {
    HttpResponse out;
    if (r.method == "OPTIONS") {
      out.status = 204;
      out.content_type.clear();
    } else {
      try {
        out = route(r);
      } catch (const Error& e) {
        out.status = http_status(e.code());
        out.content_type = "application/json";
        out.body = api_error_json(out.status, e);
      } catch (const std::exception& e) {
        const Error wrapped(ErrorCode::InternalConsistency, e.what());
        out.status = 500;
        out.content_type = "application/json";
        out.body = api_error_json(500, wrapped);
      }
    }
    if (!options.cors_origin.empty()) {
      out.headers["Access-Control-Allow-Origin"] = options.cors_origin;
      out.headers["Access-Control-Allow-Methods"] = "GET, POST, OPTIONS";
      out.headers["Access-Control-Allow-Headers"] = "Content-Type";
      out.headers["Vary"] = "Origin";
    }
    return out;
  }
};

Service::Service(Store& store, ServiceOptions options)
    : impl_(std::make_unique<Impl>(store, std::move(options))) {
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    HttpRequest r{req.method, req.path, {}, req.body, req.get_header_value("Content-Type")};
    for (const auto& [k, v] : req.params) r.params.emplace(k, v);
    const auto out = impl_->handle(r);
    res.status = out.status;
    for (const auto& [k, v] : out.headers) res.set_header(k, v);
    if (!out.content_type.empty()) res.set_content(out.body, out.content_type);
  };
  auto& s = impl_->server;
  s.Get(".*", handler);
  s.Post(".*", handler);
  s.Options(".*", handler);
}

Service::~Service() { stop(); }

HttpResponse Service::handle(const HttpRequest& request) { return impl_->handle(request); }

int Service::bind() {
  const auto& bind = impl_->options.bind;
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "bind address must be host:port, got '" + bind + "'");
  impl_->host = bind.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(bind.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "bad port in '" + bind + "'");
  }
  if (port < 0 || port > 65535) throw Error(ErrorCode::InvalidArgument, "bad port in '" + bind + "'");
  auto& s = impl_->server;
  const int bound = port == 0 ? s.bind_to_any_port(impl_->host) : (s.bind_to_port(impl_->host, port) ? port : -1);
  if (bound <= 0) throw Error(ErrorCode::Io, "cannot bind " + bind);
  impl_->port = bound;
  return bound;
}

void Service::run() {
  if (!impl_->server.listen_after_bind())
    throw Error(ErrorCode::Io, "listener on port " + std::to_string(impl_->port) + " failed");
}

void Service::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

}  // namespace odk
