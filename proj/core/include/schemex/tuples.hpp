#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "schemex/schema.hpp"

namespace schemex {

/// Byte interval into a source string, end exclusive.
struct CharSpan {
  std::uint32_t begin = 0;
  std::uint32_t end = 0;
  auto operator<=>(const CharSpan&) const = default;
};

/// One extracted span with its source offsets.
struct SpanRef {
  std::string text;
  CharSpan span;
  auto operator<=>(const SpanRef&) const = default;
};

/// One extracted item: n spans aligned with an n-element type path.
struct ExtractionTuple {
  TypePath types;
  std::vector<SpanRef> spans;

  std::size_t depth() const { return types.size(); }
  ExtractionTuple extended(const std::string& type, SpanRef span) const;

  auto operator<=>(const ExtractionTuple&) const = default;
};

/// Sorts and removes duplicates (identity: types + span offsets + texts).
void dedup_tuples(std::vector<ExtractionTuple>& tuples);

/// True when every tuple of length n > 1 has its length-(n-1) prefix present.
bool is_prefix_closed(const std::vector<ExtractionTuple>& tuples);

/// Merged extraction output across recursion depths.
struct ResultSet {
  std::vector<ExtractionTuple> tuples;  // sorted, deduplicated

  std::vector<ExtractionTuple> at_depth(std::size_t depth) const;
  std::map<std::size_t, std::size_t> depth_histogram() const;
  bool prefix_closed() const { return is_prefix_closed(tuples); }
};

}  // namespace schemex
