#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "snb/symbol.hpp"

namespace snb {

/// A sequence of feature names addressing a node from some root. The empty
/// path addresses the root itself.
using Path = std::vector<Symbol>;

/// Parses "sem.index" into {sem, index}; "" gives the empty path.
Path make_path(std::string_view dotted);
std::string path_to_string(std::span<const Symbol> path);

enum class NodeKind : std::uint8_t { kVariable, kAtom, kComplex };

/// Immutable rooted DAG of attribute-value information.
///
/// Node 0 is the root. Every node is reachable from the root, arcs of a complex
/// node are sorted by feature name and unique, and the graph is acyclic.
/// Coreference is expressed by two arcs pointing at the same node. Copies are
/// cheap (the node table is shared) and safe to read from several threads.
class FeatureStructure {
 public:
  using NodeId = std::uint32_t;

  struct Arc {
    Symbol feature;
    NodeId target;
  };

  struct Node {
    NodeKind kind = NodeKind::kVariable;
    Symbol atom;              // kAtom only
    std::vector<Arc> arcs;    // kComplex only
    std::uint64_t var_id = 0; // kVariable only
  };

  /// The empty complex structure `()`, top of the complex sub-lattice.
  FeatureStructure();

  static FeatureStructure make_atom(Symbol value);
  static FeatureStructure make_atom(std::string_view value) { return make_atom(Symbol(value)); }
  static FeatureStructure make_variable();

  /// Builds from a raw node table rooted at `root`. Unreachable nodes are
  /// dropped. Throws std::invalid_argument if the invariants do not hold.
  static FeatureStructure from_nodes(std::vector<Node> nodes, NodeId root = 0);

  static constexpr NodeId root() { return 0; }
  const Node& node(NodeId id) const { return (*nodes_)[id]; }
  std::size_t size() const { return nodes_->size(); }
  NodeKind kind() const { return node(0).kind; }

  std::optional<NodeId> find(std::span<const Symbol> path, NodeId from = 0) const;
  std::optional<Symbol> atom_at(std::span<const Symbol> path) const;
  std::optional<Symbol> atom_at(std::string_view dotted) const { return atom_at(make_path(dotted)); }
  bool has(std::span<const Symbol> path) const { return find(path).has_value(); }

  /// Standalone copy of the structure rooted at `id`, sharing preserved.
  FeatureStructure subtree(NodeId id) const;

  /// Canonical text: features sorted, shared nodes and variables tagged
  /// `?1`, `?2`, ... in order of first occurrence.
  std::string str() const;

  /// Structural equality up to variable renaming.
  friend bool operator==(const FeatureStructure& a, const FeatureStructure& b);

 private:
  explicit FeatureStructure(std::shared_ptr<const std::vector<Node>> nodes)
      : nodes_(std::move(nodes)) {}
  friend class UnifyGraph;

  std::shared_ptr<const std::vector<Node>> nodes_;
};

std::uint64_t next_variable_id();

/// Prints several parts of one structure with a single tag numbering, so that
/// coreference between the parts stays visible (rule mother vs. daughters).
class FsPrinter {
 public:
  explicit FsPrinter(const FeatureStructure& fs);

  /// `(f1 v1) (f2 v2)` for a complex node; `()` when it has no features;
  /// the bare value otherwise.
  std::string groups(FeatureStructure::NodeId id);
  std::string value(FeatureStructure::NodeId id);

 private:
  void write_value(std::string& out, FeatureStructure::NodeId id);
  void write_groups(std::string& out, FeatureStructure::NodeId id);
  bool tag(std::string& out, FeatureStructure::NodeId id);

  const FeatureStructure& fs_;
  std::vector<std::uint32_t> indegree_;
  std::vector<std::uint32_t> tag_;
  std::uint32_t next_tag_ = 1;
};

/// Atom text as written in lingware: bare when unambiguous, quoted otherwise.
std::string quote_atom(const std::string& text);

}  // namespace snb
