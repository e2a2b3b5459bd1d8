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

#include "sit/mlm_backend.h"

#include <condition_variable>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "httplib.h"
#include "sit/errors.h"

namespace sit {

using json = nlohmann::json;

namespace {

std::string Excerpt(std::string_view body) {
  constexpr size_t kMax = 200;
  if (body.size() <= kMax) return std::string(body);
  return std::string(body.substr(0, kMax)) + "...";
}

}  // namespace

// Bounded number of concurrent requests per backend instance.
struct MlmBackend::InFlight {
  std::mutex mu;
  std::condition_variable cv;
  int available;

  explicit InFlight(int n) : available(n) {}

  void Acquire() {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [this] { return available > 0; });
    --available;
  }
  void Release() {
    {
      std::lock_guard<std::mutex> lock(mu);
      ++available;
    }
    cv.notify_one();
  }
};

MlmBackend::MlmBackend(MlmBackendOptions options)
    : options_(std::move(options)),
      in_flight_(std::make_unique<InFlight>(
          options_.max_in_flight > 0 ? options_.max_in_flight : 1)) {
  if (options_.endpoint.empty()) throw ConfigError("MLM endpoint is empty");
  if (options_.max_attempts < 1) options_.max_attempts = 1;
}

MlmBackend::~MlmBackend() = default;

std::string MlmBackend::EncodeRequest(const MaskedQuery& query) {
  json tokens = json::array();
  for (size_t i = 0; i < query.tokens.size(); ++i) {
    tokens.push_back(i == query.mask_index ? std::string(kMaskToken)
                                           : query.tokens[i].text);
  }
  json request = {{"tokens", std::move(tokens)},
                  {"mask_index", query.mask_index},
                  {"top_k", query.top_k}};
  return request.dump();
}

std::vector<Candidate> MlmBackend::DecodeResponse(std::string_view body,
                                                  size_t top_k) {
  json parsed = json::parse(body, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || !parsed.is_object() ||
      !parsed.contains("candidates") || !parsed["candidates"].is_array()) {
    throw ProtocolError("malformed substitute response: " + Excerpt(body));
  }
  std::vector<Candidate> out;
  for (const json& item : parsed["candidates"]) {
    if (!item.is_object() || !item.contains("token") ||
        !item["token"].is_string() || !item.contains("score") ||
        !item["score"].is_number()) {
      throw ProtocolError("malformed candidate in response: " + Excerpt(body));
    }
    const double score = item["score"].get<double>();
    if (!(score >= 0.0 && score <= 1.0)) {
      throw ProtocolError("candidate score outside [0,1]: " + Excerpt(body));
    }
    if (!out.empty() && score > *out.back().score) {
      throw ProtocolError("candidates not in descending score order: " +
                          Excerpt(body));
    }
    out.push_back(Candidate{item["token"].get<std::string>(), score});
  }
  if (out.size() > top_k) out.resize(top_k);
  return out;
}

std::vector<Candidate> MlmBackend::Substitute(const MaskedQuery& query) const {
  if (query.top_k == 0) return {};
  if (query.mask_index >= query.tokens.size()) {
    throw ConfigError("mask_index out of range");
  }
  const std::string body = EncodeRequest(query);

  in_flight_->Acquire();
  struct Releaser {
    InFlight* slots;
    ~Releaser() { slots->Release(); }
  } releaser{in_flight_.get()};

  std::string last_error;
  auto backoff = options_.initial_backoff;
  for (int attempt = 1; attempt <= options_.max_attempts; ++attempt) {
    if (attempt > 1) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    httplib::Client client(options_.endpoint);
    const auto seconds =
        std::chrono::duration_cast<std::chrono::seconds>(options_.timeout);
    const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
        options_.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());

    auto response = client.Post("/substitute", body, "application/json");
    if (!response) {
      last_error = httplib::to_string(response.error());
      continue;
    }
    if (response->status == 200) {
      return DecodeResponse(response->body, query.top_k);
    }
    if (response->status == 429 || response->status >= 500) {
      last_error = "HTTP " + std::to_string(response->status);
      continue;
    }
    throw ProtocolError("substitute returned HTTP " +
                        std::to_string(response->status) + ": " +
                        Excerpt(response->body));
  }
  throw BackendUnavailableError("MLM backend at " + options_.endpoint +
                                " unavailable after " +
                                std::to_string(options_.max_attempts) +
                                " attempts: " + last_error);
}

}  // namespace sit
