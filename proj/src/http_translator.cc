// Copyright 2026 The SIT Authors.
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

#include <nlohmann/json.hpp>

#include "httplib.h"
#include "sit/errors.h"
#include "sit/translation_gateway.h"

namespace sit {

HttpTranslator::HttpTranslator(HttpTranslatorOptions options)
    : options_(std::move(options)) {
  if (options_.base_url.empty()) throw ConfigError("engine URL is empty");
}

std::string HttpTranslator::Translate(const TranslationRequest& request) {
  httplib::Client client(options_.base_url);
  const auto seconds =
      std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
      options_.timeout - seconds);
  client.set_connection_timeout(seconds.count(), micros.count());
  client.set_read_timeout(seconds.count(), micros.count());
  client.set_write_timeout(seconds.count(), micros.count());

  httplib::Headers headers;
  if (!options_.api_key_header.empty() && !options_.api_key.empty()) {
    headers.emplace(options_.api_key_header, options_.api_key);
  }
  const nlohmann::json body = {{"text", request.text},
                               {"source_lang", request.source_lang},
                               {"target_lang", request.target_lang}};
  auto response =
      client.Post("/translate", headers, body.dump(), "application/json");
  if (!response) {
    throw TranslationError(
        "translate request failed: " + httplib::to_string(response.error()), 0,
        /*retryable=*/true);
  }
  const int status = response->status;
  if (status != 200) {
    throw TranslationError("translate returned HTTP " + std::to_string(status),
                           status, status == 429 || status >= 500);
  }
  const auto parsed = nlohmann::json::parse(response->body, nullptr, false);
  if (parsed.is_discarded() || !parsed.is_object() ||
      !parsed.contains("translation") || !parsed["translation"].is_string()) {
    throw TranslationError("malformed translate response", status, false);
  }
  return parsed["translation"].get<std::string>();
}

}  // namespace sit
