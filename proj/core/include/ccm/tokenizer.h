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

#ifndef CCM_TOKENIZER_H_
#define CCM_TOKENIZER_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ccm {

// Splits one normalized word into subword tokens.
class SubwordTokenizer {
 public:
  virtual ~SubwordTokenizer() = default;

  // Never returns an empty list for a non-empty word; words that cannot be
  // segmented map to unk_token().
  virtual std::vector<std::string> TokenizeWord(std::string_view word) const = 0;

  virtual const std::string& mask_token() const = 0;
  virtual const std::string& unk_token() const = 0;

  // Tokens eligible as random replacements (the vocabulary minus special
  // tokens), in vocabulary order.
  virtual const std::vector<std::string>& replacement_tokens() const = 0;

  // Identifies the vocabulary for provenance digests.
  virtual std::string Digest() const = 0;
};

// Greedy longest-match-first WordPiece segmentation with "##" continuation
// pieces, as used by BERT.
class WordPieceTokenizer final : public SubwordTokenizer {
 public:
  struct Options {
    std::string mask_token = "[MASK]";
    std::string unk_token = "[UNK]";
    std::string continuation_prefix = "##";
    std::size_t max_chars_per_word = 100;
  };

  // `vocab` must contain the mask and unknown tokens. Special tokens are the
  // ones written as "[...]".
  WordPieceTokenizer(std::vector<std::string> vocab, Options options);
  explicit WordPieceTokenizer(std::vector<std::string> vocab)
      : WordPieceTokenizer(std::move(vocab), Options()) {}

  // One token per line (BERT vocab.txt format).
  static WordPieceTokenizer FromFile(const std::filesystem::path& path,
                                     Options options);
  static WordPieceTokenizer FromFile(const std::filesystem::path& path) {
    return FromFile(path, Options());
  }

  // Small bundled vocabulary: special tokens, single characters with their
  // continuation forms, and a few hundred common English words and pieces.
  // Every ASCII alphanumeric word can be segmented.
  static WordPieceTokenizer Default();

  std::vector<std::string> TokenizeWord(std::string_view word) const override;
  const std::string& mask_token() const override { return options_.mask_token; }
  const std::string& unk_token() const override { return options_.unk_token; }
  const std::vector<std::string>& replacement_tokens() const override {
    return replacements_;
  }
  std::string Digest() const override;

  std::size_t vocab_size() const { return vocab_.size(); }
  bool Contains(std::string_view token) const;

 private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<std::string> replacements_;
  Options options_;
};

}  // namespace ccm

#endif  // CCM_TOKENIZER_H_
