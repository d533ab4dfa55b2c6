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

#include "ccm/tokenizer.h"

#include <fstream>
#include <unordered_set>

#include <fmt/format.h>

#include "ccm/digest.h"
#include "ccm/error.h"

namespace ccm {
namespace {

bool IsSpecial(std::string_view token) {
  return token.size() >= 2 && token.front() == '[' && token.back() == ']';
}

constexpr const char* kBundledWords[] = {
    // function words
    "a", "an", "the", "and", "or", "but", "if", "of", "to", "in", "on", "at",
    "by", "for", "with", "from", "into", "over", "under", "about", "after",
    "before", "between", "through", "during", "without", "is", "are", "was",
    "were", "be", "been", "being", "has", "have", "had", "do", "does", "did",
    "will", "would", "can", "could", "should", "may", "might", "must", "not",
    "no", "yes", "it", "its", "he", "she", "they", "we", "you", "i", "me",
    "him", "her", "them", "us", "my", "his", "their", "our", "your", "this",
    "that", "these", "those", "there", "here", "what", "which", "who", "when",
    "where", "why", "how", "all", "some", "many", "much", "more", "most",
    "few", "other", "another", "each", "every", "one", "two", "three", "four",
    "five", "first", "second", "new", "old", "good", "bad", "big", "small",
    "long", "short", "high", "low", "very", "also", "often", "always",
    "never", "then", "than", "so", "just", "only", "still", "even", "well",
    // common verbs
    "go", "goes", "went", "come", "came", "make", "made", "take", "took",
    "see", "saw", "know", "knew", "think", "get", "got", "give", "gave",
    "find", "found", "tell", "ask", "use", "used", "work", "works", "call",
    "try", "need", "feel", "leave", "put", "keep", "let", "begin", "seem",
    "help", "show", "hear", "play", "plays", "run", "runs", "move", "live",
    "lives", "believe", "bring", "write", "sit", "stand", "lose", "pay",
    "meet", "learn", "learns", "study", "studies", "read", "reads", "eat",
    "eats", "drink", "drinks", "sleep", "sleeps", "drive", "drives", "bark",
    "barks", "chase", "chases", "like", "likes", "love", "loves", "buy",
    "sell", "cook", "cooks", "grow", "grows", "fly", "flies", "swim",
    "swims", "teach", "teaches", "visit", "visits",
    // nouns
    "man", "woman", "child", "children", "people", "person", "student",
    "students", "teacher", "professor", "school", "university", "college",
    "class", "book", "books", "library", "city", "town", "country", "house",
    "home", "room", "door", "window", "table", "chair", "car", "cars", "road",
    "street", "bus", "train", "plane", "ship", "boat", "water", "fire",
    "air", "earth", "sun", "moon", "star", "sky", "sea", "river", "lake",
    "mountain", "tree", "trees", "forest", "flower", "garden", "park",
    "dog", "dogs", "cat", "cats", "bird", "birds", "fish", "horse", "cow",
    "animal", "animals", "pet", "food", "bread", "milk", "coffee", "tea",
    "apple", "fruit", "meat", "cheese", "hot", "cold", "day", "night",
    "morning", "evening", "week", "year", "time", "money", "bank", "market",
    "shop", "store", "office", "job", "company", "computer", "phone",
    "music", "song", "game", "sport", "ball", "team", "friend", "family",
    "mother", "father", "doctor", "hospital", "medicine", "science",
    "language", "word", "words", "story", "paper", "letter", "picture",
    "art", "history", "world", "life", "body", "head", "hand", "eye",
    "heart", "mind", "idea", "question", "answer", "problem", "kitchen",
    "church", "war", "peace", "law", "government", "state", "power",
    "light", "color", "red", "blue", "green", "white", "black", "king",
    "queen", "carbohydrate", "heraldry", "driving", "self",
    // pieces
    "stan", "##ford", "##s", "##es", "##ed", "##ing", "##ly", "##er",
    "##est", "##ion", "##tion", "##ment", "##ness", "##ity", "##al", "##ive",
    "##ous", "##ful", "##less", "##able", "##ize", "##ise", "##ist", "##ism",
    "un", "re", "pre", "dis", "##y", "##ie", "##ic", "##ical", "##en",
};

}  // namespace

WordPieceTokenizer::WordPieceTokenizer(std::vector<std::string> vocab,
                                       Options options)
    : vocab_(std::move(vocab)), options_(std::move(options)) {
  for (std::size_t i = 0; i < vocab_.size(); ++i) {
    ids_.try_emplace(vocab_[i], static_cast<std::uint32_t>(i));
  }
  if (!ids_.contains(options_.mask_token)) {
    throw ConfigError(
        fmt::format("vocabulary lacks mask token '{}'", options_.mask_token));
  }
  if (!ids_.contains(options_.unk_token)) {
    throw ConfigError(
        fmt::format("vocabulary lacks unknown token '{}'", options_.unk_token));
  }
  for (const std::string& token : vocab_) {
    if (!IsSpecial(token)) replacements_.push_back(token);
  }
  if (replacements_.empty()) {
    throw ConfigError("vocabulary has no non-special tokens");
  }
}

WordPieceTokenizer WordPieceTokenizer::FromFile(const std::filesystem::path& path,
                                                Options options) {
  std::ifstream in(path);
  if (!in) {
    throw InputError(fmt::format("cannot open vocabulary '{}'", path.string()));
  }
  std::vector<std::string> vocab;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) vocab.push_back(line);
  }
  return WordPieceTokenizer(std::move(vocab), std::move(options));
}

WordPieceTokenizer WordPieceTokenizer::Default() {
  std::vector<std::string> vocab = {"[PAD]", "[UNK]", "[CLS]", "[SEP]",
                                    "[MASK]"};
  const std::string chars = "abcdefghijklmnopqrstuvwxyz0123456789'-.&/+";
  for (char c : chars) vocab.emplace_back(1, c);
  for (char c : chars) vocab.push_back(std::string("##") + c);
  std::unordered_set<std::string> seen(vocab.begin(), vocab.end());
  for (const char* w : kBundledWords) {
    if (seen.insert(w).second) vocab.emplace_back(w);
  }
  return WordPieceTokenizer(std::move(vocab));
}

bool WordPieceTokenizer::Contains(std::string_view token) const {
  return ids_.contains(std::string(token));
}

std::vector<std::string> WordPieceTokenizer::TokenizeWord(
    std::string_view word) const {
  if (word.empty()) return {};
  if (word.size() > options_.max_chars_per_word) return {options_.unk_token};

  std::vector<std::string> pieces;
  std::size_t start = 0;
  std::string candidate;
  while (start < word.size()) {
    std::size_t end = word.size();
    bool found = false;
    while (start < end) {
      candidate.clear();
      if (start > 0) candidate = options_.continuation_prefix;
      candidate.append(word.substr(start, end - start));
      if (ids_.contains(candidate)) {
        found = true;
        break;
      }
      --end;
    }
    if (!found) return {options_.unk_token};
    pieces.push_back(candidate);
    start = end;
  }
  return pieces;
}

std::string WordPieceTokenizer::Digest() const {
  Sha256 sha;
  sha.Update("ccm-wordpiece-v1");
  sha.Update(options_.mask_token).Update("\n").Update(options_.unk_token);
  sha.Update("\n").Update(options_.continuation_prefix).Update("\n");
  sha.UpdateU64(options_.max_chars_per_word);
  for (const std::string& t : vocab_) sha.Update(t).Update("\n");
  return sha.HexDigest();
}

}  // namespace ccm
