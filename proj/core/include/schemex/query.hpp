#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "schemex/matrix.hpp"
#include "schemex/tokenizer.hpp"

namespace schemex {

/// Byte interval into a source string, end exclusive.
struct CharSpan {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  auto operator<=>(const CharSpan&) const = default;
};

/// One step of a previously extracted path: its type and span.
struct PrefixItem {
  std::string type_name;
  std::string span_text;
  CharSpan span;  // representative offsets of span_text in the source text
};

/// One prompt group: a prefix (possibly empty, for the root query) plus the
/// candidate child types the schema allows under it.
struct PrefixGroup {
  std::vector<PrefixItem> prefix_items;
  std::vector<std::string> candidate_types;
};

enum class TokenRole : std::uint8_t {
  kStart,         // [CLS]
  kPrefixMarker,  // [P]
  kPrefixWord,
  kTypeMarker,  // [T]
  kTypeWord,
  kTextMarker,  // [Text]
  kTextWord,
  kEnd,  // [SEP]
};

/// One candidate-type segment: the [T] marker plus the type's word tokens.
struct TypeSegment {
  int marker = 0;  // token index of [T]
  int begin = 0;   // token range including the marker
  int end = 0;
  std::string type_name;
};

/// One packed prompt group inside a query.
struct GroupSegment {
  int source_group = 0;   // index into the group list passed to build()
  int prefix_marker = 0;  // token index of [P]
  int prefix_begin = 0;   // token range including the marker
  int prefix_end = 0;
  std::string prefix_text;
  std::vector<TypeSegment> types;
};

/// Reference to one [T] marker: query token index, packed group, type name.
struct TypeMarkerRef {
  int index = 0;
  int group = 0;  // index into EncodedQuery::groups
  std::string type_name;
};

/// One fully laid-out model input. Layout:
///   [CLS] ([P] prefix ([T] type)+)+ [Text] text [SEP]
/// Row j of attention_mask lists the tokens j may attend to.
struct EncodedQuery {
  std::vector<std::int32_t> tokens;
  std::vector<std::string> pieces;    // printable rendering per token
  std::vector<std::uint8_t> glued;    // word token renders without leading space
  std::vector<std::int32_t> position_ids;
  std::vector<std::int32_t> segment_ids;  // 0 structural/text, 1 prefix, 2 type
  BitMatrix attention_mask;
  std::vector<TokenRole> roles;
  std::vector<int> group_of;  // packed group index per token, -1 outside groups
  std::vector<GroupSegment> groups;
  std::vector<TypeMarkerRef> t_markers;  // ascending token index
  int text_begin = 0;  // text word tokens, half-open; excludes [Text] and [SEP]
  int text_end = 0;
  std::vector<CharSpan> source_char_map;  // per text word token, into `text`
  std::string text;

  int size() const { return (int)tokens.size(); }
  bool in_text(int i) const { return i >= text_begin && i < text_end; }

  /// Marker-index view of t_markers.
  std::map<int, std::pair<int, std::string>> t_marker_map() const;
};

struct QueryLimits {
  int max_total = 512;
  int max_esi = 256;
};

/// Builds prompt queries: renders prefixes, packs groups under the token
/// limits, splits oversized groups by candidate type, and assigns position
/// ids, segment ids and the isolation attention mask.
///
/// Pure function of its inputs; safe for concurrent use.
class QueryBuilder {
 public:
  struct Options {
    QueryLimits limits;
    // Emit one query per group instead of packing (pack/split equivalence
    // checks and debugging).
    bool single_group_queries = false;
  };

  explicit QueryBuilder(const Tokenizer& tokenizer, Options options = {});

  /// "type: span" items joined by ",", e.g. "subject: D70S,aspect: pictures".
  static std::string render_prefix(const std::vector<PrefixItem>& items);

  /// Lays out `groups` over `text` into one or more queries. Every
  /// (group, candidate type) pair lands in exactly one query; a group whose
  /// ESI alone exceeds max_esi is split across queries sharing its prefix.
  /// Throws InputTooLongError when the text leaves no room for any group.
  std::vector<EncodedQuery> build(const std::vector<PrefixGroup>& groups,
                                  std::string_view text) const;

  /// Prompt-isolation attention mask for a laid-out query:
  ///   - prefix tokens (incl. [P]) see their group and the text block;
  ///   - type tokens (incl. [T]) see their segment, their group's prefix and
  ///     the text block;
  ///   - text-block tokens ([Text], text, [SEP]) see only the text block;
  ///   - [CLS] sees and is seen by everything; every token sees itself;
  ///   - nothing crosses group boundaries.
  static BitMatrix isolation_mask(const EncodedQuery& q);

  /// Position ids: [CLS] and each [P] at 0; prefix words 1..Lp; every type
  /// segment of a group restarts at Lp+1 ([T] first); [Text] at `text_base`
  /// and text words consecutively after it. Groups are position-identical.
  static std::vector<std::int32_t> assign_positions(const EncodedQuery& q, int text_base);

  /// Canonical query string (the form used in layout reports); exact for
  /// single-spaced sources.
  static std::string detokenize(const EncodedQuery& q);

  const Options& options() const { return options_; }
  const Tokenizer& tokenizer() const { return *tokenizer_; }

 private:
  const Tokenizer* tokenizer_;
  Options options_;
};

}  // namespace schemex
