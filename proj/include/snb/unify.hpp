#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "snb/feature_structure.hpp"

namespace snb {

struct UnifyFailure {
  enum class Reason { kAtomClash, kKindClash, kCycle };
  Reason reason = Reason::kAtomClash;
  Path path;           // first clashing path, sorted-feature traversal order
  std::string detail;

  std::string message() const;
};

/// Either a feature structure or the failure that prevented it.
class Unified {
 public:
  Unified(FeatureStructure fs) : value_(std::move(fs)) {}  // NOLINT
  Unified(UnifyFailure f) : value_(std::move(f)) {}        // NOLINT

  explicit operator bool() const { return std::holds_alternative<FeatureStructure>(value_); }
  const FeatureStructure& value() const { return std::get<FeatureStructure>(value_); }
  const FeatureStructure& operator*() const { return value(); }
  const FeatureStructure* operator->() const { return &value(); }
  const UnifyFailure& failure() const { return std::get<UnifyFailure>(value_); }

 private:
  std::variant<FeatureStructure, UnifyFailure> value_;
};

/// Mutable scratch graph for destructive unification with union-find.
///
/// Structures are imported (copied), combined, and extracted back into
/// immutable FeatureStructure values. A graph is confined to one call; copying
/// a graph snapshots it, which is how callers backtrack.
class UnifyGraph {
 public:
  using Id = std::uint32_t;

  Id import(const FeatureStructure& fs);
  Id new_variable();
  Id new_atom(Symbol value);
  Id new_complex();

  /// Adds feature `f` -> `child` to `parent` (which becomes complex if it was
  /// an unbound variable). If `f` is already present the two values are
  /// unified instead.
  bool set_arc(Id parent, Symbol f, Id child);

  /// Follows `path` from `from`. With `create`, missing arcs are added (as
  /// fresh variables) and unbound variables on the way become complex; an
  /// atom in the way is a failure.
  std::optional<Id> walk(Id from, std::span<const Symbol> path, bool create);

  /// Unifies two nodes. On failure the graph is left in an unspecified state
  /// and failure() describes the first clash, with `base` prefixed to its path.
  bool unify(Id a, Id b, std::span<const Symbol> base = {});

  Id deref(Id id) const;
  NodeKind kind(Id id) const { return nodes_[deref(id)].kind; }
  std::optional<Symbol> atom(Id id) const;
  std::optional<Id> child(Id id, Symbol f) const;

  /// Ids of the elements of a first/rest list (stops at the first non-list node).
  std::vector<Id> list_items(Id list) const;
  Id make_list(std::span<const Id> items);

  /// Copies the structure reachable from `root`. Fails (nullopt, failure set)
  /// if the graph reachable from `root` is cyclic.
  std::optional<FeatureStructure> extract(Id root);

  const UnifyFailure& failure() const { return failure_; }
  std::size_t size() const { return nodes_.size(); }

 private:
  struct Arc {
    Symbol feature;
    Id target;
  };
  struct GNode {
    NodeKind kind = NodeKind::kVariable;
    Symbol atom;
    std::vector<Arc> arcs;  // sorted by feature
    Id forward;             // union-find parent; self when representative
  };

  Id add(NodeKind kind, Symbol atom = {});
  bool unify_rec(Id a, Id b, Path& path);
  void fail(UnifyFailure::Reason reason, const Path& path, std::string detail);

  std::vector<GNode> nodes_;
  UnifyFailure failure_;
};

Symbol nil_symbol();

Unified unify(const FeatureStructure& a, const FeatureStructure& b);

/// Unifies `guest` with the node of `host` at `path` (created if missing).
Unified unify_at(const FeatureStructure& host, std::span<const Symbol> path,
                 const FeatureStructure& guest);

/// Makes the nodes at paths `p` and `q` of `fs` coreferent (and unified).
Unified unify_paths(const FeatureStructure& fs, std::span<const Symbol> p,
                    std::span<const Symbol> q);

/// True iff every path, atom and coreference of `general` holds in `specific`.
bool subsumes(const FeatureStructure& general, const FeatureStructure& specific);

/// The node at `path`, as a standalone structure, or nullopt.
std::optional<FeatureStructure> resolve(const FeatureStructure& fs, std::span<const Symbol> path);

/// Copy with every variable renamed to a fresh identifier.
FeatureStructure fresh_variant(const FeatureStructure& fs);

/// Complex structure whose features point at the (disjoint) given parts.
FeatureStructure compose(std::span<const std::pair<Symbol, FeatureStructure>> parts);

/// first/rest list terminated by the atom `nil`.
FeatureStructure make_list(std::span<const FeatureStructure> items);
std::vector<FeatureStructure> list_items(const FeatureStructure& list);

}  // namespace snb
