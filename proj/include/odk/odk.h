/*
 * Copyright 2026 The ODK Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the dataset toolkit.
 *
 * Every function returns an odk_status. On failure a message is available
 * from odk_last_error() until the next call on the same thread. Strings
 * returned through `char** out` are owned by the caller and released with
 * odk_string_free(). */

#ifndef ODK_ODK_H
#define ODK_ODK_H

#include <stddef.h>

#if defined(ODK_BUILDING_LIBRARY)
#define ODK_API __attribute__((visibility("default")))
#else
#define ODK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct odk_store odk_store;

typedef enum odk_status {
  ODK_OK = 0,
  ODK_E_INVALID_ARGUMENT = 1,
  ODK_E_SYNTAX = 2,
  ODK_E_UNKNOWN_PREFIX = 3,
  ODK_E_BLANK_NODE = 4,
  ODK_E_UNSUPPORTED = 5,
  ODK_E_PROJECTION = 6,
  ODK_E_INVALID_TEMPLATE = 7,
  ODK_E_DANGLING_TEMPLATE = 8,
  ODK_E_DEPTH_EXCEEDED = 9,
  ODK_E_INVALID_RECORD = 10,
  ODK_E_CONSISTENCY = 11,
  ODK_E_NOT_FOUND = 12,
  ODK_E_TYPE_VIOLATION = 13,
  ODK_E_ALREADY_PUBLISHED = 14,
  ODK_E_IMMUTABLE = 15,
  ODK_E_IO = 16,
  ODK_E_INTERNAL = 17
} odk_status;

ODK_API const char* odk_version(void);
ODK_API const char* odk_status_name(odk_status status);
/* Message of the last failed call on this thread, or "". */
ODK_API const char* odk_last_error(void);
ODK_API void odk_string_free(char* s);

ODK_API odk_status odk_store_new(odk_store** out);
ODK_API void odk_store_free(odk_store* store);
/* Replace the store contents. A missing file leaves the store empty when
 * `missing_ok` is non-zero. */
ODK_API odk_status odk_store_load_turtle_file(odk_store* store, const char* path, int missing_ok);
ODK_API odk_status odk_store_load_turtle(odk_store* store, const char* text);
/* Atomic: written to a temporary sibling, then renamed. */
ODK_API odk_status odk_store_save_turtle_file(const odk_store* store, const char* path);
/* Metadata section first, then data. */
ODK_API odk_status odk_store_export_turtle(const odk_store* store, char** out);
ODK_API odk_status odk_store_size(const odk_store* store, size_t* out);

/* `created_at` may be NULL for the current time. Writes
 * {"contributions": [...]} to `out`. */
ODK_API odk_status odk_ingest_json(odk_store* store, const char* json, const char* created_by,
                                   const char* created_at, char** out);

/* `templates_json` may be NULL; otherwise its templates are added to the
 * builtin set (replacing same ids). `conforms` receives 0 or 1. */
ODK_API odk_status odk_validate(const odk_store* store, const char* resource,
                                const char* template_id, const char* templates_json,
                                int* conforms, char** report_json);

/* `format` is "json" or "csv". */
ODK_API odk_status odk_query(const odk_store* store, const char* query, const char* format,
                             char** out);
ODK_API odk_status odk_explain(const char* query, char** out);

/* `format` is csv, json, html or ttl. `filter_json` may be NULL. */
ODK_API odk_status odk_compare(const odk_store* store, const char* root, const char* format,
                               const char* filter_json, char** out);
ODK_API odk_status odk_timeline(const odk_store* store, const char* root, char** out);

ODK_API odk_status odk_publish(odk_store* store, const char* root, const char* created_by,
                               const char* created_at, char** out);
ODK_API odk_status odk_metadata(const odk_store* store, const char* root, char** out);
ODK_API odk_status odk_describe(const odk_store* store, const char* resource, char** out);
ODK_API odk_status odk_templates_json(char** out);

typedef void (*odk_ready_fn)(int port, void* user);

/* Blocks serving HTTP. `bind` and `cors_origin` may be NULL to use
 * ODK_BIND / ODK_CORS_ORIGIN. When `persist_path` is set the store is saved
 * there after every write. */
ODK_API odk_status odk_serve(odk_store* store, const char* bind, const char* cors_origin,
                             const char* persist_path, odk_ready_fn on_ready, void* user);

#ifdef __cplusplus
}
#endif

#endif /* ODK_ODK_H */
