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

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <new>
#include <sstream>

#include <nlohmann/json.hpp>

#include "odk/comparison.hpp"
#include "odk/ingest.hpp"
#include "odk/query.hpp"
#include "odk/service.hpp"
#include "odk/templates.hpp"

struct odk_store {
  std::unique_ptr<odk::Store> store = std::make_unique<odk::Store>();
};

namespace {

thread_local std::string g_last_error;

odk_status status_of(odk::ErrorCode code) {
  return static_cast<odk_status>(static_cast<int>(code) + 1);
}

// Runs `fn`, translating exceptions into status codes and the thread-local
// error message.
template <class Fn>
odk_status guard(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return ODK_OK;
  } catch (const odk::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ODK_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ODK_E_INTERNAL;
  }
}

void require(const void* p, const char* name) {
  if (!p) throw odk::Error(odk::ErrorCode::InvalidArgument, std::string(name) + " is NULL");
}

void emit(char** out, const std::string& s) {
  require(out, "out");
  char* buf = static_cast<char*>(std::malloc(s.size() + 1));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, s.data(), s.size());
  buf[s.size()] = '\0';
  *out = buf;
}

odk::Provenance provenance(const char* created_by, const char* created_at) {
  auto p = odk::Provenance::now(created_by && *created_by ? created_by : "odk");
  if (created_at && *created_at) p.created_at = created_at;
  return p;
}

}  // namespace

extern "C" {

const char* odk_version(void) { return "1.0.0"; }

const char* odk_status_name(odk_status status) {
  if (status == ODK_OK) return "Ok";
  if (status == ODK_E_INTERNAL) return "Internal";
  if (status < ODK_OK || status > ODK_E_INTERNAL) return "Unknown";
  static thread_local std::string name;
  name = std::string(odk::to_string(static_cast<odk::ErrorCode>(static_cast<int>(status) - 1)));
  return name.c_str();
}

const char* odk_last_error(void) { return g_last_error.c_str(); }

void odk_string_free(char* s) { std::free(s); }

odk_status odk_store_new(odk_store** out) {
  return guard([&] {
    require(out, "out");
    *out = new odk_store();
  });
}

void odk_store_free(odk_store* store) { delete store; }

odk_status odk_store_load_turtle_file(odk_store* store, const char* path, int missing_ok) {
  return guard([&] {
    require(store, "store");
    require(path, "path");
    if (missing_ok && !std::filesystem::exists(path)) {
      store->store = std::make_unique<odk::Store>();
      return;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw odk::Error(odk::ErrorCode::Io, std::string("cannot read ") + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    store->store = std::make_unique<odk::Store>(odk::parse_turtle(buf.str()));
  });
}

odk_status odk_store_load_turtle(odk_store* store, const char* text) {
  return guard([&] {
    require(store, "store");
    require(text, "text");
    store->store = std::make_unique<odk::Store>(odk::parse_turtle(text));
  });
}

odk_status odk_store_save_turtle_file(const odk_store* store, const char* path) {
  return guard([&] {
    require(store, "store");
    require(path, "path");
    store->store->save(path);
  });
}

odk_status odk_store_export_turtle(const odk_store* store, char** out) {
  return guard([&] {
    require(store, "store");
    emit(out, odk::export_turtle(*store->store->snapshot()));
  });
}

odk_status odk_store_size(const odk_store* store, size_t* out) {
  return guard([&] {
    require(store, "store");
    require(out, "out");
    *out = store->store->snapshot()->size();
  });
}

odk_status odk_ingest_json(odk_store* store, const char* json, const char* created_by,
                           const char* created_at, char** out) {
  return guard([&] {
    require(store, "store");
    require(json, "json");
    const auto file = odk::parse_ingestion_json(json);
    const auto prov = provenance(created_by, created_at);
    const auto roots =
        store->store->update([&](odk::Session& s) { return odk::ingest_file(s, file, prov); });
    nlohmann::ordered_json j;
    j["contributions"] = nlohmann::ordered_json::array();
    for (const auto& t : roots) j["contributions"].push_back(t.value());
    if (out) emit(out, j.dump());
  });
}

odk_status odk_validate(const odk_store* store, const char* resource, const char* template_id,
                        const char* templates_json, int* conforms, char** report_json) {
  return guard([&] {
    require(store, "store");
    require(resource, "resource");
    require(template_id, "template_id");
    auto all = odk::builtin_templates();
    if (templates_json) {
      for (auto& t : odk::templates_from_json(templates_json)) {
        std::erase_if(all, [&](const odk::Template& b) { return b.id() == t.id(); });
        all.push_back(std::move(t));
      }
    }
    const odk::TemplateRegistry registry(std::move(all));
    const auto report = odk::validate(*store->store->snapshot(), odk::resource_term(resource),
                                      registry.at(template_id), registry);
    if (conforms) *conforms = report.conforms ? 1 : 0;
    if (report_json) emit(report_json, odk::report_to_json(report));
  });
}

odk_status odk_query(const odk_store* store, const char* query, const char* format, char** out) {
  return guard([&] {
    require(store, "store");
    require(query, "query");
    const std::string fmt = format ? format : "json";
    if (fmt != "json" && fmt != "csv")
      throw odk::Error(odk::ErrorCode::InvalidArgument, "query format must be json or csv");
    const auto table = odk::evaluate(*store->store->snapshot(), odk::parse_query(query));
    emit(out, fmt == "csv" ? odk::result_to_csv(table) : odk::result_to_json(table));
  });
}

odk_status odk_explain(const char* query, char** out) {
  return guard([&] {
    require(query, "query");
    emit(out, odk::explain(odk::parse_query(query)));
  });
}

odk_status odk_compare(const odk_store* store, const char* root, const char* format,
                       const char* filter_json, char** out) {
  return guard([&] {
    require(store, "store");
    require(root, "root");
    const auto fmt = odk::parse_export_format(format ? format : "json");
    const auto spec = filter_json ? odk::filter_spec_from_json(filter_json) : odk::FilterSpec{};
    const auto table = odk::filter_table(
        odk::build_comparison(*store->store->snapshot(), odk::resource_term(root)), spec);
    emit(out, odk::export_table(table, fmt));
  });
}

odk_status odk_timeline(const odk_store* store, const char* root, char** out) {
  return guard([&] {
    require(store, "store");
    require(root, "root");
    emit(out, odk::timeline_to_json(odk::timeline(
                  odk::build_comparison(*store->store->snapshot(), odk::resource_term(root)))));
  });
}

odk_status odk_publish(odk_store* store, const char* root, const char* created_by,
                       const char* created_at, char** out) {
  return guard([&] {
    require(store, "store");
    require(root, "root");
    const auto term = odk::resource_term(root);
    const auto prov = provenance(created_by, created_at);
    store->store->update([&](odk::Session& s) { odk::publish(s, term, prov); });
    if (out) emit(out, odk::publication_to_json(*odk::publication_of(*store->store->snapshot(), term)));
  });
}

odk_status odk_metadata(const odk_store* store, const char* root, char** out) {
  return guard([&] {
    require(store, "store");
    require(root, "root");
    const auto pub = odk::publication_of(*store->store->snapshot(), odk::resource_term(root));
    if (!pub) throw odk::Error(odk::ErrorCode::NotFound, std::string(root) + " is not published");
    emit(out, odk::publication_to_json(*pub));
  });
}

odk_status odk_describe(const odk_store* store, const char* resource, char** out) {
  return guard([&] {
    require(store, "store");
    require(resource, "resource");
    emit(out, odk::describe_resource(*store->store->snapshot(), odk::resource_term(resource)));
  });
}

odk_status odk_templates_json(char** out) {
  return guard([&] { emit(out, odk::templates_to_json(odk::builtin_templates())); });
}

odk_status odk_serve(odk_store* store, const char* bind, const char* cors_origin,
                     const char* persist_path, odk_ready_fn on_ready, void* user) {
  return guard([&] {
    require(store, "store");
    auto options = odk::service_options_from_env();
    if (bind && *bind) options.bind = bind;
    if (cors_origin) options.cors_origin = cors_origin;
    if (persist_path && *persist_path) {
      const std::string path = persist_path;
      auto* s = store->store.get();
      options.on_commit = [s, path](const odk::Graph&) { s->save(path); };
    }
    odk::Service service(*store->store, std::move(options));
    const int port = service.bind();
    if (on_ready) on_ready(port, user);
    service.run();
  });
}

}  // extern "C"
