#include "schemex/query.hpp"

#include <algorithm>
#include <numeric>

#include "schemex/errors.hpp"

namespace schemex {
namespace {

struct PlannedType {
  std::string name;
  std::vector<Token> toks;
};

// One group, or one split chunk of a group, ready to be packed.
struct PlannedGroup {
  int source_group = 0;
  std::string prefix_text;
  std::vector<Token> prefix_toks;
  std::vector<PlannedType> types;

  int esi_cost() const {
    int cost = 1 + (int)prefix_toks.size();  // [P] + prefix words
    for (const auto& t : types) cost += 1 + (int)t.toks.size();
    return cost;
  }
};

int segment_id_for(TokenRole role) {
  switch (role) {
    case TokenRole::kPrefixMarker:
    case TokenRole::kPrefixWord:
      return 1;
    case TokenRole::kTypeMarker:
    case TokenRole::kTypeWord:
      return 2;
    default:
      return 0;
  }
}

bool in_text_block(TokenRole role) {
  return role == TokenRole::kTextMarker || role == TokenRole::kTextWord ||
         role == TokenRole::kEnd;
}

bool is_marker_role(TokenRole role) {
  return role == TokenRole::kStart || role == TokenRole::kPrefixMarker ||
         role == TokenRole::kTypeMarker || role == TokenRole::kTextMarker ||
         role == TokenRole::kEnd;
}

}  // namespace

std::map<int, std::pair<int, std::string>> EncodedQuery::t_marker_map() const {
  std::map<int, std::pair<int, std::string>> out;
  for (const auto& tm : t_markers) out.emplace(tm.index, std::make_pair(tm.group, tm.type_name));
  return out;
}

QueryBuilder::QueryBuilder(const Tokenizer& tokenizer, Options options)
    : tokenizer_(&tokenizer), options_(options) {
  if (options_.limits.max_total <= 0 || options_.limits.max_esi <= 0 ||
      options_.limits.max_esi >= options_.limits.max_total) {
    throw DataError("query limits: require 0 < max_esi < max_total");
  }
}

std::string QueryBuilder::render_prefix(const std::vector<PrefixItem>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].type_name.empty() || items[i].span_text.empty()) {
      throw DataError("render_prefix: empty type name or span text");
    }
    if (i > 0) out += ',';
    out += items[i].type_name;
    out += ": ";
    out += items[i].span_text;
  }
  return out;
}

std::vector<EncodedQuery> QueryBuilder::build(const std::vector<PrefixGroup>& groups,
                                              std::string_view text) const {
  if (groups.empty()) throw DataError("build_queries: no prefix groups");
  if (text.empty()) throw DataError("build_queries: empty text");
  const std::vector<Token> text_toks = tokenizer_->encode(text);
  if (text_toks.empty()) throw DataError("build_queries: text has no tokens");

  const int max_esi = options_.limits.max_esi;
  const int max_total = options_.limits.max_total;
  const int text_cost = 3 + (int)text_toks.size();  // [CLS] + [Text] + text + [SEP]

  // Plan each group; split candidate types when a group alone overflows the
  // ESI budget. Split chunks share the prefix and the source group index.
  std::vector<PlannedGroup> planned;
  for (int gi = 0; gi < (int)groups.size(); ++gi) {
    const auto& g = groups[gi];
    if (g.candidate_types.empty()) {
      throw DataError("build_queries: group " + std::to_string(gi) + " has no candidate types");
    }
    std::string prefix = render_prefix(g.prefix_items);
    std::vector<Token> ptoks = tokenizer_->encode(prefix);
    const int base_cost = 1 + (int)ptoks.size();
    const int type_budget = max_esi - base_cost;

    PlannedGroup cur{gi, prefix, ptoks, {}};
    int used = 0;
    for (const auto& tname : g.candidate_types) {
      if (tname.empty()) throw DataError("build_queries: empty candidate type name");
      std::vector<Token> ttoks = tokenizer_->encode(tname);
      const int cost = 1 + (int)ttoks.size();
      if (cost > type_budget) {
        throw InputTooLongError("build_queries: prefix \"" + prefix + "\" with type \"" + tname +
                                "\" needs " + std::to_string(base_cost + cost) +
                                " ESI tokens, limit " + std::to_string(max_esi));
      }
      if (used + cost > type_budget) {
        planned.push_back(std::move(cur));
        cur = PlannedGroup{gi, prefix, ptoks, {}};
        used = 0;
      }
      cur.types.push_back({tname, std::move(ttoks)});
      used += cost;
    }
    planned.push_back(std::move(cur));
  }

  // Greedy in-order packing under both limits.
  std::vector<std::vector<PlannedGroup>> buckets;
  int bucket_esi = 0;
  for (auto& pg : planned) {
    const int cost = pg.esi_cost();
    const bool open_new = buckets.empty() || options_.single_group_queries ||
                          bucket_esi + cost > max_esi ||
                          bucket_esi + cost + text_cost > max_total;
    if (open_new) {
      if (cost + text_cost > max_total) {
        throw InputTooLongError("build_queries: text needs " + std::to_string(text_cost) +
                                " tokens which leaves no room for a group of " +
                                std::to_string(cost) + " ESI tokens (max_total " +
                                std::to_string(max_total) + ")");
      }
      buckets.emplace_back();
      bucket_esi = 0;
    }
    bucket_esi += cost;
    buckets.back().push_back(std::move(pg));
  }

  std::vector<EncodedQuery> out;
  out.reserve(buckets.size());
  for (const auto& bucket : buckets) {
    EncodedQuery q;
    q.text.assign(text.begin(), text.end());

    auto push = [&](std::int32_t id, TokenRole role, int group, std::string piece,
                    bool glue) {
      q.tokens.push_back(id);
      q.roles.push_back(role);
      q.group_of.push_back(group);
      q.pieces.push_back(std::move(piece));
      q.glued.push_back(glue ? 1 : 0);
    };
    auto push_words = [&](const std::vector<Token>& toks, TokenRole role, int group) {
      for (std::size_t k = 0; k < toks.size(); ++k) {
        const bool glue = k > 0 && toks[k].begin == toks[k - 1].end;
        push(toks[k].id, role, group, tokenizer_->piece(toks[k].id), glue);
      }
    };

    push(tok::kCls, TokenRole::kStart, -1, tokenizer_->piece(tok::kCls), true);
    for (const auto& pg : bucket) {
      GroupSegment gs;
      gs.source_group = pg.source_group;
      gs.prefix_text = pg.prefix_text;
      gs.prefix_marker = q.size();
      gs.prefix_begin = q.size();
      const int group_index = (int)q.groups.size();
      push(tok::kPrefixMarker, TokenRole::kPrefixMarker, group_index,
           tokenizer_->piece(tok::kPrefixMarker), true);
      push_words(pg.prefix_toks, TokenRole::kPrefixWord, group_index);
      gs.prefix_end = q.size();
      for (const auto& pt : pg.types) {
        TypeSegment ts;
        ts.marker = q.size();
        ts.begin = q.size();
        ts.type_name = pt.name;
        push(tok::kTypeMarker, TokenRole::kTypeMarker, group_index,
             tokenizer_->piece(tok::kTypeMarker), true);
        push_words(pt.toks, TokenRole::kTypeWord, group_index);
        ts.end = q.size();
        q.t_markers.push_back({ts.marker, group_index, pt.name});
        gs.types.push_back(std::move(ts));
      }
      q.groups.push_back(std::move(gs));
    }
    push(tok::kTextMarker, TokenRole::kTextMarker, -1, tokenizer_->piece(tok::kTextMarker), true);
    q.text_begin = q.size();
    push_words(text_toks, TokenRole::kTextWord, -1);
    q.text_end = q.size();
    q.source_char_map.reserve(text_toks.size());
    for (const auto& t : text_toks) q.source_char_map.push_back({t.begin, t.end});
    push(tok::kSep, TokenRole::kEnd, -1, tokenizer_->piece(tok::kSep), true);

    q.segment_ids.reserve(q.size());
    for (TokenRole role : q.roles) q.segment_ids.push_back(segment_id_for(role));
    q.position_ids = assign_positions(q, max_esi);
    q.attention_mask = isolation_mask(q);
    out.push_back(std::move(q));
  }
  return out;
}

BitMatrix QueryBuilder::isolation_mask(const EncodedQuery& q) {
  const int n = q.size();
  BitMatrix mask = BitMatrix::Zero(n, n);

  std::vector<int> text_block;
  for (int i = 0; i < n; ++i) {
    if (in_text_block(q.roles[i])) text_block.push_back(i);
    mask(i, i) = 1;
    if (q.roles[i] == TokenRole::kStart) {
      for (int k = 0; k < n; ++k) {
        mask(i, k) = 1;
        mask(k, i) = 1;
      }
    }
  }

  auto allow_range = [&](int j, int begin, int end) {
    for (int k = begin; k < end; ++k) mask(j, k) = 1;
  };
  auto allow_text = [&](int j) {
    for (int k : text_block) mask(j, k) = 1;
  };

  for (const auto& gs : q.groups) {
    for (int j = gs.prefix_begin; j < gs.prefix_end; ++j) {
      allow_range(j, gs.prefix_begin, gs.prefix_end);
      for (const auto& ts : gs.types) allow_range(j, ts.begin, ts.end);
      allow_text(j);
    }
    for (const auto& ts : gs.types) {
      for (int j = ts.begin; j < ts.end; ++j) {
        allow_range(j, ts.begin, ts.end);
        allow_range(j, gs.prefix_begin, gs.prefix_end);
        allow_text(j);
      }
    }
  }
  for (int j : text_block) allow_text(j);
  return mask;
}

std::vector<std::int32_t> QueryBuilder::assign_positions(const EncodedQuery& q, int text_base) {
  std::vector<std::int32_t> pos(q.size(), 0);
  for (const auto& gs : q.groups) {
    pos[gs.prefix_marker] = 0;
    std::int32_t p = 1;
    for (int i = gs.prefix_marker + 1; i < gs.prefix_end; ++i) pos[i] = p++;
    const std::int32_t type_start = (std::int32_t)(gs.prefix_end - gs.prefix_begin - 1) + 1;
    for (const auto& ts : gs.types) {
      std::int32_t t = type_start;
      for (int i = ts.begin; i < ts.end; ++i) pos[i] = t++;
    }
  }
  std::int32_t p = text_base;
  for (int i = 0; i < q.size(); ++i) {
    if (in_text_block(q.roles[i])) pos[i] = p++;
  }
  return pos;
}

std::string QueryBuilder::detokenize(const EncodedQuery& q) {
  std::string out;
  for (int i = 0; i < q.size(); ++i) {
    if (!is_marker_role(q.roles[i]) && !q.glued[i]) out += ' ';
    out += q.pieces[i];
  }
  return out;
}

}  // namespace schemex
