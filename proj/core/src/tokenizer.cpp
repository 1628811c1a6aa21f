#include "schemex/tokenizer.hpp"

#include <array>

#include "schemex/errors.hpp"

namespace schemex {
namespace {

constexpr std::array<const char*, 6> kMarkerPieces = {
    "[PAD]", "[CLS]", "[SEP]", "[P]", "[T]", "[Text]"};

bool is_space_byte(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_punct_byte(unsigned char c) {
  return c < 0x80 && std::ispunct(c);
}

}  // namespace

Tokenizer::Tokenizer(std::vector<std::string> words) : words_(std::move(words)) {
  index_.reserve(words_.size());
  for (std::size_t i = 0; i < words_.size(); ++i) {
    auto [it, inserted] = index_.emplace(words_[i], tok::kWordBase + (std::int32_t)i);
    if (!inserted) {
      throw DataError("tokenizer: duplicate vocabulary word \"" + words_[i] + "\"");
    }
  }
}

Tokenizer Tokenizer::fit(const std::vector<std::string>& texts) {
  std::vector<std::string> words;
  std::unordered_map<std::string, std::int32_t> seen;
  for (const auto& text : texts) {
    std::size_t i = 0;
    while (i < text.size()) {
      unsigned char c = text[i];
      if (is_space_byte(c) || is_punct_byte(c)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && !is_space_byte(text[j]) && !is_punct_byte(text[j])) ++j;
      std::string word = text.substr(i, j - i);
      if (seen.emplace(word, 0).second) words.push_back(std::move(word));
      i = j;
    }
  }
  return Tokenizer(std::move(words));
}

std::vector<Token> Tokenizer::encode(std::string_view text) const {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    unsigned char c = text[i];
    if (is_space_byte(c)) {
      ++i;
      continue;
    }
    if (is_punct_byte(c)) {
      out.push_back({tok::kByteBase + (std::int32_t)c, (std::uint32_t)i, (std::uint32_t)(i + 1)});
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_space_byte(text[j]) && !is_punct_byte(text[j])) ++j;
    auto it = index_.find(std::string(text.substr(i, j - i)));
    if (it != index_.end()) {
      out.push_back({it->second, (std::uint32_t)i, (std::uint32_t)j});
    } else {
      // Byte fallback keeps unknown words encodable with exact offsets.
      for (std::size_t k = i; k < j; ++k) {
        out.push_back({tok::kByteBase + (std::int32_t)(unsigned char)text[k], (std::uint32_t)k,
                       (std::uint32_t)(k + 1)});
      }
    }
    i = j;
  }
  return out;
}

std::string Tokenizer::decode(const std::vector<Token>& tokens) const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && tokens[i].begin != tokens[i - 1].end) out += ' ';
    out += piece(tokens[i].id);
  }
  return out;
}

std::string Tokenizer::piece(std::int32_t id) const {
  if (id >= 0 && id < (std::int32_t)kMarkerPieces.size()) return kMarkerPieces[id];
  if (id >= tok::kByteBase && id < tok::kWordBase) {
    return std::string(1, (char)(id - tok::kByteBase));
  }
  std::int32_t w = id - tok::kWordBase;
  if (w >= 0 && w < (std::int32_t)words_.size()) return words_[w];
  throw VocabularyError("tokenizer: id " + std::to_string(id) + " outside vocabulary");
}

std::int32_t Tokenizer::vocab_size() const {
  return tok::kWordBase + (std::int32_t)words_.size();
}

bool Tokenizer::is_marker(std::int32_t id) {
  return id == tok::kCls || id == tok::kSep || id == tok::kPrefixMarker ||
         id == tok::kTypeMarker || id == tok::kTextMarker;
}

}  // namespace schemex
