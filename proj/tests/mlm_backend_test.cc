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

#include <atomic>
#include <chrono>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "sit/errors.h"
#include "stub_server.h"

namespace sit {
namespace {

using json = nlohmann::json;
using testing::StubServer;

MlmBackendOptions FastOptions(std::string endpoint) {
  MlmBackendOptions options;
  options.endpoint = std::move(endpoint);
  options.initial_backoff = std::chrono::milliseconds(1);
  options.timeout = std::chrono::milliseconds(2000);
  return options;
}

MaskedQuery ForkQuery(size_t top_k) {
  return {Tokenize("He came to a fork in the road"), 4, top_k};
}

TEST(MlmBackendTest, EncodeRequestMasksPosition) {
  const json request = json::parse(MlmBackend::EncodeRequest(ForkQuery(5)));
  EXPECT_EQ(request["tokens"],
            json({"He", "came", "to", "a", "[MASK]", "in", "the", "road"}));
  EXPECT_EQ(request["mask_index"], 4);
  EXPECT_EQ(request["top_k"], 5);
}

TEST(MlmBackendTest, FiveScoredCandidatesFromStub) {
  StubServer stub;
  json seen;
  stub.server().Post("/substitute", [&](const httplib::Request& req,
                                         httplib::Response& res) {
    seen = json::parse(req.body);
    json candidates = json::array();
    const char* words[] = {"bend", "turn", "split", "crossroads", "junction", "x"};
    double score = 0.9;
    for (const char* w : words) {
      candidates.push_back({{"token", w}, {"score", score}});
      score -= 0.1;
    }
    res.set_content(json({{"candidates", candidates}}).dump(), "application/json");
  });
  stub.Start();
  const MlmBackend backend(FastOptions(stub.url()));
  const auto got = backend.Substitute(ForkQuery(5));
  ASSERT_EQ(got.size(), 5u);
  for (size_t i = 0; i < got.size(); ++i) {
    ASSERT_TRUE(got[i].score.has_value());
    EXPECT_GE(*got[i].score, 0.0);
    EXPECT_LE(*got[i].score, 1.0);
    if (i) EXPECT_GE(*got[i - 1].score, *got[i].score);
  }
  EXPECT_EQ(seen["tokens"][4], "[MASK]");
  EXPECT_EQ(seen["top_k"], 5);
}

TEST(MlmBackendTest, ZeroTopKMakesNoCall) {
  const MlmBackend backend(FastOptions(testing::UnusedUrl()));
  EXPECT_TRUE(backend.Substitute(ForkQuery(0)).empty());
}

TEST(MlmBackendTest, UnreachableAfterRetries) {
  const MlmBackend backend(FastOptions(testing::UnusedUrl()));
  EXPECT_THROW(backend.Substitute(ForkQuery(3)), BackendUnavailableError);
}

TEST(MlmBackendTest, RetriesServerErrorsThenSucceeds) {
  StubServer stub;
  std::atomic<int> calls{0};
  stub.server().Post("/substitute", [&](const httplib::Request&,
                                         httplib::Response& res) {
    if (calls++ < 2) {
      res.status = 503;
      return;
    }
    res.set_content(R"({"candidates":[{"token":"bend","score":0.5}]})",
                    "application/json");
  });
  stub.Start();
  const MlmBackend backend(FastOptions(stub.url()));
  EXPECT_EQ(backend.Substitute(ForkQuery(3)).size(), 1u);
  EXPECT_EQ(calls.load(), 3);
}

TEST(MlmBackendTest, PersistentServerErrorIsUnavailable) {
  StubServer stub;
  std::atomic<int> calls{0};
  stub.server().Post("/substitute", [&](const httplib::Request&,
                                         httplib::Response& res) {
    ++calls;
    res.status = 500;
  });
  stub.Start();
  const MlmBackend backend(FastOptions(stub.url()));
  EXPECT_THROW(backend.Substitute(ForkQuery(3)), BackendUnavailableError);
  EXPECT_EQ(calls.load(), 3);
}

TEST(MlmBackendTest, BadRequestIsProtocolError) {
  StubServer stub;
  stub.server().Post("/substitute", [](const httplib::Request&,
                                        httplib::Response& res) {
    res.status = 400;
    res.set_content(R"({"error":"mask_index out of range"})", "application/json");
  });
  stub.Start();
  const MlmBackend backend(FastOptions(stub.url()));
  try {
    backend.Substitute(ForkQuery(3));
    FAIL() << "expected ProtocolError";
  } catch (const ProtocolError& e) {
    EXPECT_NE(std::string(e.what()).find("mask_index out of range"),
              std::string::npos);
  }
}

TEST(MlmBackendTest, DecodeRejectsMalformedPayloads) {
  EXPECT_THROW(MlmBackend::DecodeResponse("not json", 3), ProtocolError);
  EXPECT_THROW(MlmBackend::DecodeResponse(R"({"candidates":5})", 3), ProtocolError);
  EXPECT_THROW(MlmBackend::DecodeResponse(
                   R"({"candidates":[{"token":"a","score":1.5}]})", 3),
               ProtocolError);
  EXPECT_THROW(MlmBackend::DecodeResponse(
                   R"({"candidates":[{"token":"a","score":0.1},{"token":"b","score":0.2}]})",
                   3),
               ProtocolError);
  EXPECT_EQ(MlmBackend::DecodeResponse(R"({"candidates":[]})", 3).size(), 0u);
}

TEST(MlmBackendTest, BoundsInFlightRequests) {
  StubServer stub;
  std::atomic<int> active{0};
  std::atomic<int> peak{0};
  stub.server().new_task_queue = [] { return new httplib::ThreadPool(16); };
  stub.server().Post("/substitute", [&](const httplib::Request&,
                                         httplib::Response& res) {
    const int now = ++active;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(30));
    --active;
    res.set_content(R"({"candidates":[]})", "application/json");
  });
  stub.Start();
  MlmBackendOptions options = FastOptions(stub.url());
  options.max_in_flight = 2;
  const MlmBackend backend(options);
  std::vector<std::thread> threads;
  for (int i = 0; i < 8; ++i) {
    threads.emplace_back([&] { backend.Substitute(ForkQuery(3)); });
  }
  for (auto& t : threads) t.join();
  EXPECT_LE(peak.load(), 2);
  EXPECT_GE(peak.load(), 1);
}

}  // namespace
}  // namespace sit
