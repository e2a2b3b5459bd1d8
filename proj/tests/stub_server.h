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

#ifndef SIT_TESTS_STUB_SERVER_H_
#define SIT_TESTS_STUB_SERVER_H_

#include <string>
#include <thread>

#include "httplib.h"

namespace sit::testing {

// Local HTTP server on an ephemeral port; handlers are registered on
// server() before Start().
class StubServer {
 public:
  StubServer() = default;
  ~StubServer() { Stop(); }
  StubServer(const StubServer&) = delete;
  StubServer& operator=(const StubServer&) = delete;

  httplib::Server& server() { return server_; }

  void Start() {
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }

  void Stop() {
    if (thread_.joinable()) {
      server_.stop();
      thread_.join();
    }
  }

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

// An address nothing listens on: a bound-then-closed ephemeral port.
inline std::string UnusedUrl() {
  httplib::Server probe;
  const int port = probe.bind_to_any_port("127.0.0.1");
  probe.stop();
  return "http://127.0.0.1:" + std::to_string(port);
}

}  // namespace sit::testing

#endif  // SIT_TESTS_STUB_SERVER_H_
