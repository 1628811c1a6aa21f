#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace schemex {

/// One token produced by Tokenizer::encode. Offsets are byte positions into
/// the encoded string, end exclusive.
struct Token {
  std::int32_t id = 0;
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
};

namespace tok {
inline constexpr std::int32_t kPad = 0;
inline constexpr std::int32_t kCls = 1;
inline constexpr std::int32_t kSep = 2;
inline constexpr std::int32_t kPrefixMarker = 3;  // [P]
inline constexpr std::int32_t kTypeMarker = 4;    // [T]
inline constexpr std::int32_t kTextMarker = 5;    // [Text]
inline constexpr std::int32_t kByteBase = 6;      // 6..261 single-byte pieces
inline constexpr std::int32_t kWordBase = 262;    // first vocabulary word id
}  // namespace tok

/// Whitespace+punctuation reference tokenizer with single-byte fallback.
///
/// A word is a maximal run of bytes that are neither ASCII whitespace nor
/// ASCII punctuation; each punctuation byte is a token of its own. Words
/// absent from the vocabulary are emitted byte by byte, so any input can be
/// encoded and the vocabulary stays bounded. Marker ids are reserved and are
/// never produced by encode() on ordinary text.
///
/// Immutable after construction; safe for concurrent use.
class Tokenizer {
 public:
  Tokenizer() = default;
  explicit Tokenizer(std::vector<std::string> words);

  /// Builds a vocabulary containing every word occurring in `texts`.
  static Tokenizer fit(const std::vector<std::string>& texts);

  std::vector<Token> encode(std::string_view text) const;

  /// Inverse of encode up to whitespace normalization: tokens with
  /// contiguous offsets are joined directly, all others with one space.
  std::string decode(const std::vector<Token>& tokens) const;

  /// Printable piece for an id: marker literal, vocabulary word, or byte.
  std::string piece(std::int32_t id) const;

  /// Total id space (reserved ids + bytes + words).
  std::int32_t vocab_size() const;

  const std::vector<std::string>& words() const { return words_; }

  static bool is_marker(std::int32_t id);

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::int32_t> index_;
};

}  // namespace schemex
