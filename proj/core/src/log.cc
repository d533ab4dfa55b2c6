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

#include "ccm/log.h"

#include <iostream>
#include <mutex>

namespace ccm::log {
namespace {

std::mutex& Mutex() {
  static std::mutex mu;
  return mu;
}

Level& CurrentLevel() {
  static Level level = Level::kInfo;
  return level;
}

Sink& CurrentSink() {
  static Sink sink;
  return sink;
}

const char* Prefix(Level level) {
  switch (level) {
    case Level::kDebug:
      return "debug";
    case Level::kInfo:
      return "info";
    case Level::kWarning:
      return "warning";
    case Level::kError:
      return "error";
    case Level::kSilent:
      break;
  }
  return "";
}

}  // namespace

void SetLevel(Level level) {
  std::lock_guard<std::mutex> lock(Mutex());
  CurrentLevel() = level;
}

Level GetLevel() {
  std::lock_guard<std::mutex> lock(Mutex());
  return CurrentLevel();
}

void SetSink(Sink sink) {
  std::lock_guard<std::mutex> lock(Mutex());
  CurrentSink() = std::move(sink);
}

void Write(Level level, std::string_view message) {
  std::lock_guard<std::mutex> lock(Mutex());
  if (level < CurrentLevel()) return;
  if (CurrentSink()) {
    CurrentSink()(level, message);
    return;
  }
  std::cerr << "[ccm " << Prefix(level) << "] " << message << '\n';
}

}  // namespace ccm::log
