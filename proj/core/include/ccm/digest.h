// Copyright 2026 The CCM Authors.
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

#ifndef CCM_DIGEST_H_
#define CCM_DIGEST_H_

#include <cstdint>
#include <string>
#include <string_view>

namespace ccm {

// Incremental SHA-256, hex encoded. Used for artifact provenance.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& Update(std::string_view bytes);
  Sha256& UpdateU64(std::uint64_t value);
  std::string HexDigest();

 private:
  void* ctx_;
};

std::string Sha256Hex(std::string_view bytes);

}  // namespace ccm

#endif  // CCM_DIGEST_H_
