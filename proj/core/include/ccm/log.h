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

#ifndef CCM_LOG_H_
#define CCM_LOG_H_

#include <functional>
#include <string>
#include <string_view>

namespace ccm::log {

enum class Level { kDebug = 0, kInfo = 1, kWarning = 2, kError = 3, kSilent = 4 };

// Messages below this level are dropped. Default: kInfo.
void SetLevel(Level level);
Level GetLevel();

// Replaces the stderr writer. Passing an empty function restores stderr.
// Used by tests to capture warnings.
using Sink = std::function<void(Level, std::string_view)>;
void SetSink(Sink sink);

void Write(Level level, std::string_view message);

inline void Debug(std::string_view m) { Write(Level::kDebug, m); }
inline void Info(std::string_view m) { Write(Level::kInfo, m); }
inline void Warn(std::string_view m) { Write(Level::kWarning, m); }

}  // namespace ccm::log

#endif  // CCM_LOG_H_
