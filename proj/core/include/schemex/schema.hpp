#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace schemex {

/// One type in the hierarchical extraction schema. Children keep the order
/// of the source document; a leaf has no children.
struct SchemaNode {
  std::string name;
  std::vector<SchemaNode> children;
};

/// Ordered list of type names from a root downward. Identity of a type is
/// positional: the same name may appear at several tree positions.
struct TypePath {
  std::vector<std::string> elements;

  TypePath() = default;
  TypePath(std::initializer_list<std::string> init) : elements(init) {}
  explicit TypePath(std::vector<std::string> elems) : elements(std::move(elems)) {}

  bool empty() const { return elements.empty(); }
  std::size_t size() const { return elements.size(); }
  TypePath child(const std::string& name) const;
  std::string to_string() const;  // elements joined by " / "

  auto operator<=>(const TypePath&) const = default;
};

/// Immutable schema tree. Parsed from a nested-map document whose leaf
/// values are null, e.g. {"person": {"work for ( organization )": null}}.
/// Safe to share read-only across threads after construction.
class Schema {
 public:
  Schema() = default;
  explicit Schema(std::vector<SchemaNode> roots);

  /// Parses the nested-map JSON form. Throws FormatError for structurally
  /// invalid documents and SchemaError for duplicate or empty sibling keys.
  static Schema parse(std::string_view json_text);
  static Schema parse_file(const std::string& path);

  /// Canonical document text; parse(serialize()) reproduces this schema.
  std::string serialize() const;

  const std::vector<SchemaNode>& roots() const { return roots_; }
  bool empty() const { return roots_.empty(); }

  /// Node at `path`, or nullptr when the path does not exist.
  const SchemaNode* find(const TypePath& path) const;

  /// Child type names at `path` in source order (roots for the empty path,
  /// empty list at leaves). Throws PathError when the path is invalid.
  std::vector<std::string> children_of(const TypePath& path) const;

  /// All root-to-node paths, depth-first in document order. Every node
  /// appears exactly once as a path endpoint.
  std::vector<TypePath> enumerate_paths() const;

  std::size_t node_count() const;
  int depth() const;  // longest path length; 0 for an empty schema

  /// Stable content hash of the canonical serialization.
  std::uint64_t fingerprint() const;

 private:
  std::vector<SchemaNode> roots_;
};

}  // namespace schemex
