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

#ifndef SIT_MLM_BACKEND_H_
#define SIT_MLM_BACKEND_H_

#include <chrono>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "sit/variant_generator.h"

namespace sit {

struct MlmBackendOptions {
  // Base URL of the fill-mask service, e.g. "http://127.0.0.1:8500".
  std::string endpoint;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds timeout{10000};
  int max_in_flight = 4;
};

// The symbol placed at the masked position in outgoing requests.
inline constexpr std::string_view kMaskToken = "[MASK]";

// Client for the fill-mask service:
//   POST /substitute {"tokens": [...], "mask_index": i, "top_k": n}
//   200 -> {"candidates": [{"token": t, "score": s}, ...]}
//   400 -> {"error": msg}
class MlmBackend : public SubstitutionBackend {
 public:
  explicit MlmBackend(MlmBackendOptions options);
  ~MlmBackend() override;

  // Connection failures, timeouts, 429 and 5xx are retried with exponential
  // backoff and then surface as BackendUnavailableError. Any response that
  // does not match the protocol raises ProtocolError.
  std::vector<Candidate> Substitute(const MaskedQuery& query) const override;

  static std::string EncodeRequest(const MaskedQuery& query);
  static std::vector<Candidate> DecodeResponse(std::string_view body,
                                               size_t top_k);

 private:
  struct InFlight;

  MlmBackendOptions options_;
  std::unique_ptr<InFlight> in_flight_;
};

}  // namespace sit

#endif  // SIT_MLM_BACKEND_H_
