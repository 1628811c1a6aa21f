#include "schemex/schema.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_set>

#include "schemex/errors.hpp"

namespace schemex {
namespace {

bool trimmed_empty(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

// SAX consumer building the node tree directly. The schema grammar is tiny:
// objects whose values are null or nested objects. Anything else is rejected,
// and duplicate keys are caught here (DOM parsing would silently drop them).
class SchemaSax {
 public:
  using json = nlohmann::json;

  bool null() {
    require_pending_key("null value");
    stack_.back()->push_back(SchemaNode{std::move(pending_key_), {}});
    has_pending_ = false;
    return true;
  }
  bool boolean(bool) { return reject("boolean"); }
  bool number_integer(json::number_integer_t) { return reject("number"); }
  bool number_unsigned(json::number_unsigned_t) { return reject("number"); }
  bool number_float(json::number_float_t, const std::string&) { return reject("number"); }
  bool string(json::string_t&) { return reject("string"); }
  bool binary(json::binary_t&) { return reject("binary"); }

  bool start_object(std::size_t) {
    if (depth_ == 0 && !has_pending_ && stack_.empty()) {
      stack_.push_back(&roots_);
    } else {
      require_pending_key("nested object");
      auto* parent = stack_.back();
      parent->push_back(SchemaNode{std::move(pending_key_), {}});
      has_pending_ = false;
      stack_.push_back(&parent->back().children);
    }
    seen_.emplace_back();
    ++depth_;
    return true;
  }

  bool key(json::string_t& val) {
    if (val.empty() || trimmed_empty(val)) {
      throw SchemaError("schema: empty type name");
    }
    if (!seen_.back().insert(val).second) {
      throw SchemaError("schema: duplicate sibling type name \"" + val + "\"");
    }
    pending_key_ = val;
    has_pending_ = true;
    return true;
  }

  bool end_object() {
    stack_.pop_back();
    seen_.pop_back();
    return true;
  }

  bool start_array(std::size_t) { return reject("array"); }
  bool end_array() { return reject("array"); }

  bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) {
    throw FormatError("schema: parse error at byte " + std::to_string(pos) + ": " + ex.what());
  }

  std::vector<SchemaNode> take() { return std::move(roots_); }

 private:
  bool reject(const char* what) {
    throw FormatError(std::string("schema: unexpected ") + what +
                      " (values must be null or nested maps)");
  }
  void require_pending_key(const char* what) {
    if (!has_pending_) {
      throw FormatError(std::string("schema: top-level ") + what + " (document must be a map)");
    }
  }

  std::vector<SchemaNode> roots_;
  std::vector<std::vector<SchemaNode>*> stack_;
  std::vector<std::unordered_set<std::string>> seen_;
  std::string pending_key_;
  bool has_pending_ = false;
  int depth_ = 0;
};

void serialize_nodes(const std::vector<SchemaNode>& nodes, nlohmann::ordered_json& out) {
  for (const auto& node : nodes) {
    if (node.children.empty()) {
      out[node.name] = nullptr;
    } else {
      nlohmann::ordered_json child = nlohmann::ordered_json::object();
      serialize_nodes(node.children, child);
      out[node.name] = std::move(child);
    }
  }
}

void validate_names(const std::vector<SchemaNode>& nodes) {
  std::unordered_set<std::string> seen;
  for (const auto& node : nodes) {
    if (node.name.empty() || trimmed_empty(node.name)) {
      throw SchemaError("schema: empty type name");
    }
    if (!seen.insert(node.name).second) {
      throw SchemaError("schema: duplicate sibling type name \"" + node.name + "\"");
    }
    validate_names(node.children);
  }
}

}  // namespace

TypePath TypePath::child(const std::string& name) const {
  TypePath out = *this;
  out.elements.push_back(name);
  return out;
}

std::string TypePath::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i > 0) out += " / ";
    out += elements[i];
  }
  return out;
}

Schema::Schema(std::vector<SchemaNode> roots) : roots_(std::move(roots)) {
  validate_names(roots_);
}

Schema Schema::parse(std::string_view json_text) {
  SchemaSax sax;
  nlohmann::json::sax_parse(json_text, &sax);
  return Schema(sax.take());
}

Schema Schema::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("schema: cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Schema::serialize() const {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  serialize_nodes(roots_, doc);
  return doc.dump();
}

const SchemaNode* Schema::find(const TypePath& path) const {
  const std::vector<SchemaNode>* level = &roots_;
  const SchemaNode* node = nullptr;
  for (const auto& name : path.elements) {
    node = nullptr;
    for (const auto& candidate : *level) {
      if (candidate.name == name) {
        node = &candidate;
        break;
      }
    }
    if (!node) return nullptr;
    level = &node->children;
  }
  return node;
}

std::vector<std::string> Schema::children_of(const TypePath& path) const {
  const std::vector<SchemaNode>* level = &roots_;
  if (!path.empty()) {
    const SchemaNode* node = find(path);
    if (!node) {
      throw PathError("schema: no node at path [" + path.to_string() + "]");
    }
    level = &node->children;
  }
  std::vector<std::string> names;
  names.reserve(level->size());
  for (const auto& node : *level) names.push_back(node.name);
  return names;
}

std::vector<TypePath> Schema::enumerate_paths() const {
  std::vector<TypePath> out;
  std::function<void(const std::vector<SchemaNode>&, const TypePath&)> walk =
      [&](const std::vector<SchemaNode>& nodes, const TypePath& prefix) {
        for (const auto& node : nodes) {
          TypePath path = prefix.child(node.name);
          out.push_back(path);
          walk(node.children, path);
        }
      };
  walk(roots_, TypePath{});
  return out;
}

std::size_t Schema::node_count() const {
  std::function<std::size_t(const std::vector<SchemaNode>&)> count =
      [&](const std::vector<SchemaNode>& nodes) {
        std::size_t n = nodes.size();
        for (const auto& node : nodes) n += count(node.children);
        return n;
      };
  return count(roots_);
}

int Schema::depth() const {
  std::function<int(const std::vector<SchemaNode>&)> walk =
      [&](const std::vector<SchemaNode>& nodes) -> int {
    int deepest = 0;
    for (const auto& node : nodes) {
      deepest = std::max(deepest, 1 + walk(node.children));
    }
    return deepest;
  };
  return walk(roots_);
}

std::uint64_t Schema::fingerprint() const {
  // FNV-1a over the canonical serialization.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace schemex
