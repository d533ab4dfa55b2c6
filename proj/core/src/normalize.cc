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

#include "ccm/normalize.h"

namespace ccm {
namespace {

bool IsSpace(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Non-ASCII bytes count as word characters so UTF-8 sequences survive.
bool IsWordChar(unsigned char c) {
  return c >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') ||
         (c >= 'A' && c <= 'Z');
}

std::string_view DecodeConceptNetUri(std::string_view text) {
  // /c/<lang>/<term>[/<pos>[/...]]
  if (!text.starts_with("/c/")) return text;
  std::string_view rest = text.substr(3);
  std::size_t slash = rest.find('/');
  if (slash == std::string_view::npos) return text;
  rest = rest.substr(slash + 1);
  slash = rest.find('/');
  return slash == std::string_view::npos ? rest : rest.substr(0, slash);
}

}  // namespace

std::vector<std::string> NormalizeWords(std::string_view text,
                                        const NormalizationPolicy& policy) {
  if (policy.decode_conceptnet_uri) text = DecodeConceptNetUri(text);

  std::vector<std::string> words;
  std::string current;
  auto flush = [&] {
    if (current.empty()) return;
    std::string_view word = current;
    if (policy.strip_edge_punctuation) {
      while (!word.empty() && !IsWordChar(word.front())) word.remove_prefix(1);
      while (!word.empty() && !IsWordChar(word.back())) word.remove_suffix(1);
    }
    if (!word.empty()) words.emplace_back(word);
    current.clear();
  };

  for (unsigned char c : text) {
    if (IsSpace(c) || (policy.underscores_to_spaces && c == '_')) {
      flush();
      continue;
    }
    if (policy.lowercase && c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
    current.push_back(static_cast<char>(c));
  }
  flush();
  return words;
}

std::string NormalizePhrase(std::string_view text,
                            const NormalizationPolicy& policy) {
  std::string out;
  for (const std::string& word : NormalizeWords(text, policy)) {
    if (!out.empty()) out.push_back(' ');
    out += word;
  }
  return out;
}

std::size_t CountWords(std::string_view normalized) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : normalized) {
    if (c == ' ') {
      in_word = false;
    } else if (!in_word) {
      in_word = true;
      ++count;
    }
  }
  return count;
}

}  // namespace ccm
