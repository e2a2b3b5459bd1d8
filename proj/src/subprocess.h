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

#ifndef SIT_SUBPROCESS_H_
#define SIT_SUBPROCESS_H_

#include <chrono>
#include <string>
#include <vector>

namespace sit::internal {

struct SubprocessResult {
  int exit_code = -1;
  bool timed_out = false;
  std::string out;
  std::string err;
};

// Runs argv[0] (resolved through PATH), feeding `input` to its stdin and
// collecting stdout/stderr. The child is killed when `timeout` expires.
SubprocessResult RunSubprocess(const std::vector<std::string>& argv,
                               const std::string& input,
                               std::chrono::milliseconds timeout);

}  // namespace sit::internal

#endif  // SIT_SUBPROCESS_H_
