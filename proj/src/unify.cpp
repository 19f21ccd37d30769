#include "snb/unify.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace snb {

namespace {

const Symbol& first_symbol() {
  static const Symbol s("first");
  return s;
}
const Symbol& rest_symbol() {
  static const Symbol s("rest");
  return s;
}

}  // namespace

Symbol nil_symbol() {
  static const Symbol s("nil");
  return s;
}

std::string UnifyFailure::message() const {
  std::string where = path.empty() ? std::string("<root>") : path_to_string(path);
  switch (reason) {
    case Reason::kAtomClash:
      return "atom clash at " + where + (detail.empty() ? "" : ": " + detail);
    case Reason::kKindClash:
      return "atom/complex clash at " + where + (detail.empty() ? "" : ": " + detail);
    case Reason::kCycle:
      return "occurs check failed at " + where;
  }
  return "unification failure";
}

// ---------------------------------------------------------------------------

UnifyGraph::Id UnifyGraph::add(NodeKind kind, Symbol atom) {
  Id id = static_cast<Id>(nodes_.size());
  nodes_.push_back(GNode{kind, atom, {}, id});
  return id;
}

UnifyGraph::Id UnifyGraph::new_variable() { return add(NodeKind::kVariable); }
UnifyGraph::Id UnifyGraph::new_atom(Symbol value) { return add(NodeKind::kAtom, value); }
UnifyGraph::Id UnifyGraph::new_complex() { return add(NodeKind::kComplex); }

UnifyGraph::Id UnifyGraph::import(const FeatureStructure& fs) {
  const Id base = static_cast<Id>(nodes_.size());
  nodes_.reserve(nodes_.size() + fs.size());
  for (FeatureStructure::NodeId i = 0; i < fs.size(); ++i) {
    const auto& n = fs.node(i);
    GNode g{n.kind, n.atom, {}, base + i};
    g.arcs.reserve(n.arcs.size());
    for (const auto& arc : n.arcs) g.arcs.push_back({arc.feature, base + arc.target});
    nodes_.push_back(std::move(g));
  }
  return base;
}

UnifyGraph::Id UnifyGraph::deref(Id id) const {
  while (nodes_[id].forward != id) id = nodes_[id].forward;
  return id;
}

std::optional<Symbol> UnifyGraph::atom(Id id) const {
  const auto& n = nodes_[deref(id)];
  if (n.kind != NodeKind::kAtom) return std::nullopt;
  return n.atom;
}

std::optional<UnifyGraph::Id> UnifyGraph::child(Id id, Symbol f) const {
  const auto& arcs = nodes_[deref(id)].arcs;
  auto it = std::lower_bound(arcs.begin(), arcs.end(), f,
                             [](const Arc& a, Symbol s) { return a.feature < s; });
  if (it == arcs.end() || it->feature != f) return std::nullopt;
  return it->target;
}

bool UnifyGraph::set_arc(Id parent, Symbol f, Id child_id) {
  Id p = deref(parent);
  if (nodes_[p].kind == NodeKind::kVariable) nodes_[p].kind = NodeKind::kComplex;
  if (nodes_[p].kind != NodeKind::kComplex) {
    fail(UnifyFailure::Reason::kKindClash, Path{f}, "feature on atom");
    return false;
  }
  auto& arcs = nodes_[p].arcs;
  auto it = std::lower_bound(arcs.begin(), arcs.end(), f,
                             [](const Arc& a, Symbol s) { return a.feature < s; });
  if (it != arcs.end() && it->feature == f) {
    Id existing = it->target;
    return unify(existing, child_id, Path{f});
  }
  arcs.insert(it, Arc{f, child_id});
  return true;
}

std::optional<UnifyGraph::Id> UnifyGraph::walk(Id from, std::span<const Symbol> path, bool create) {
  Id cur = deref(from);
  Path walked;
  for (Symbol f : path) {
    walked.push_back(f);
    if (auto next = child(cur, f)) {
      cur = deref(*next);
      continue;
    }
    if (!create) return std::nullopt;
    if (nodes_[cur].kind == NodeKind::kAtom) {
      fail(UnifyFailure::Reason::kKindClash, walked, "path runs into atom");
      return std::nullopt;
    }
    Id fresh = new_variable();
    set_arc(cur, f, fresh);
    cur = fresh;
  }
  return cur;
}

void UnifyGraph::fail(UnifyFailure::Reason reason, const Path& path, std::string detail) {
  failure_ = UnifyFailure{reason, path, std::move(detail)};
}

bool UnifyGraph::unify(Id a, Id b, std::span<const Symbol> base) {
  Path path(base.begin(), base.end());
  return unify_rec(a, b, path);
}

bool UnifyGraph::unify_rec(Id a, Id b, Path& path) {
  a = deref(a);
  b = deref(b);
  if (a == b) return true;
  GNode& na = nodes_[a];
  GNode& nb = nodes_[b];
  if (na.kind == NodeKind::kVariable) {
    na.forward = b;
    return true;
  }
  if (nb.kind == NodeKind::kVariable) {
    nb.forward = a;
    return true;
  }
  if (na.kind == NodeKind::kAtom && nb.kind == NodeKind::kAtom) {
    if (na.atom != nb.atom) {
      fail(UnifyFailure::Reason::kAtomClash, path, na.atom.str() + " vs " + nb.atom.str());
      return false;
    }
    na.forward = b;
    return true;
  }
  if (na.kind != nb.kind) {
    fail(UnifyFailure::Reason::kKindClash, path, "");
    return false;
  }

  // Both complex: forward a to b first (terminates on shared substructure),
  // then merge arc lists and unify common features in feature order.
  na.forward = b;
  std::vector<Arc> from_a = std::move(na.arcs);
  std::vector<Arc> merged;
  std::vector<std::pair<std::size_t, Id>> pending;  // index into merged, node from a
  merged.reserve(from_a.size() + nb.arcs.size());
  {
    auto ia = from_a.begin();
    auto ib = nb.arcs.begin();
    while (ia != from_a.end() || ib != nb.arcs.end()) {
      if (ib == nb.arcs.end() || (ia != from_a.end() && ia->feature < ib->feature)) {
        merged.push_back(*ia++);
      } else if (ia == from_a.end() || ib->feature < ia->feature) {
        merged.push_back(*ib++);
      } else {
        pending.emplace_back(merged.size(), ia->target);
        merged.push_back(*ib++);
        ++ia;
      }
    }
  }
  nodes_[b].arcs = merged;
  for (auto [index, other] : pending) {
    path.push_back(merged[index].feature);
    if (!unify_rec(merged[index].target, other, path)) return false;
    path.pop_back();
  }
  return true;
}

std::vector<UnifyGraph::Id> UnifyGraph::list_items(Id list) const {
  std::vector<Id> items;
  Id cur = deref(list);
  while (nodes_[cur].kind == NodeKind::kComplex) {
    auto first = child(cur, first_symbol());
    auto rest = child(cur, rest_symbol());
    if (!first || !rest) break;
    items.push_back(*first);
    cur = deref(*rest);
  }
  return items;
}

UnifyGraph::Id UnifyGraph::make_list(std::span<const Id> items) {
  Id tail = new_atom(nil_symbol());
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    Id cell = new_complex();
    nodes_[cell].arcs = {Arc{first_symbol(), *it}, Arc{rest_symbol(), tail}};
    if (rest_symbol() < first_symbol()) std::swap(nodes_[cell].arcs[0], nodes_[cell].arcs[1]);
    tail = cell;
  }
  return tail;
}

std::optional<FeatureStructure> UnifyGraph::extract(Id root) {
  using FsNode = FeatureStructure::Node;
  std::unordered_map<Id, FeatureStructure::NodeId> remap;
  std::vector<FsNode> out;
  std::unordered_map<Id, std::uint8_t> state;  // 1 on stack, 2 done

  struct Frame {
    Id id;
    std::size_t next_arc;
  };
  auto visit = [&](Id id) -> FeatureStructure::NodeId {
    auto out_id = static_cast<FeatureStructure::NodeId>(out.size());
    remap.emplace(id, out_id);
    const GNode& g = nodes_[id];
    FsNode n;
    n.kind = g.kind;
    n.atom = g.atom;
    if (g.kind == NodeKind::kVariable) n.var_id = next_variable_id();
    out.push_back(std::move(n));
    state[id] = 1;
    return out_id;
  };

  root = deref(root);
  visit(root);
  std::vector<Frame> stack{{root, 0}};
  Path path;
  while (!stack.empty()) {
    Frame& frame = stack.back();
    const GNode& g = nodes_[frame.id];
    if (frame.next_arc < g.arcs.size()) {
      const Arc& arc = g.arcs[frame.next_arc++];
      Id target = deref(arc.target);
      path.push_back(arc.feature);
      auto st = state.find(target);
      if (st != state.end() && st->second == 1) {
        fail(UnifyFailure::Reason::kCycle, path, "");
        return std::nullopt;
      }
      FeatureStructure::NodeId child_out;
      bool descend = false;
      if (st == state.end()) {
        child_out = visit(target);
        descend = true;
      } else {
        child_out = remap.at(target);
      }
      out[remap.at(frame.id)].arcs.push_back({arc.feature, child_out});
      if (descend) {
        stack.push_back({target, 0});
      } else {
        path.pop_back();
      }
      continue;
    }
    state[frame.id] = 2;
    stack.pop_back();
    if (!path.empty() && !stack.empty()) path.pop_back();
  }
  return FeatureStructure::from_nodes(std::move(out), 0);
}

// ---------------------------------------------------------------------------

Unified unify(const FeatureStructure& a, const FeatureStructure& b) {
  UnifyGraph g;
  auto ra = g.import(a);
  auto rb = g.import(b);
  if (!g.unify(ra, rb)) return g.failure();
  if (auto out = g.extract(ra)) return *out;
  return g.failure();
}

Unified unify_at(const FeatureStructure& host, std::span<const Symbol> path,
                 const FeatureStructure& guest) {
  UnifyGraph g;
  auto rh = g.import(host);
  auto at = g.walk(rh, path, true);
  if (!at) return g.failure();
  auto rg = g.import(guest);
  if (!g.unify(*at, rg, path)) return g.failure();
  if (auto out = g.extract(rh)) return *out;
  return g.failure();
}

Unified unify_paths(const FeatureStructure& fs, std::span<const Symbol> p,
                    std::span<const Symbol> q) {
  UnifyGraph g;
  auto root = g.import(fs);
  auto np = g.walk(root, p, true);
  if (!np) return g.failure();
  auto nq = g.walk(root, q, true);
  if (!nq) return g.failure();
  if (!g.unify(*np, *nq, p)) return g.failure();
  if (auto out = g.extract(root)) return *out;
  return g.failure();
}

namespace {

bool subsumes_rec(const FeatureStructure& gen, FeatureStructure::NodeId g,
                  const FeatureStructure& spec, FeatureStructure::NodeId s,
                  std::unordered_map<FeatureStructure::NodeId, FeatureStructure::NodeId>& map) {
  auto [it, inserted] = map.emplace(g, s);
  if (!inserted) return it->second == s;
  const auto& ng = gen.node(g);
  const auto& ns = spec.node(s);
  switch (ng.kind) {
    case NodeKind::kVariable:
      return true;
    case NodeKind::kAtom:
      return ns.kind == NodeKind::kAtom && ns.atom == ng.atom;
    case NodeKind::kComplex:
      if (ns.kind != NodeKind::kComplex) return false;
      for (const auto& arc : ng.arcs) {
        Symbol f = arc.feature;
        auto child = spec.find(std::span<const Symbol>(&f, 1), s);
        if (!child) return false;
        if (!subsumes_rec(gen, arc.target, spec, *child, map)) return false;
      }
      return true;
  }
  return false;
}

}  // namespace

bool subsumes(const FeatureStructure& general, const FeatureStructure& specific) {
  std::unordered_map<FeatureStructure::NodeId, FeatureStructure::NodeId> map;
  return subsumes_rec(general, general.root(), specific, specific.root(), map);
}

std::optional<FeatureStructure> resolve(const FeatureStructure& fs, std::span<const Symbol> path) {
  auto id = fs.find(path);
  if (!id) return std::nullopt;
  return fs.subtree(*id);
}

FeatureStructure fresh_variant(const FeatureStructure& fs) {
  std::vector<FeatureStructure::Node> nodes;
  nodes.reserve(fs.size());
  for (FeatureStructure::NodeId i = 0; i < fs.size(); ++i) {
    auto n = fs.node(i);
    if (n.kind == NodeKind::kVariable) n.var_id = next_variable_id();
    nodes.push_back(std::move(n));
  }
  return FeatureStructure::from_nodes(std::move(nodes));
}

FeatureStructure compose(std::span<const std::pair<Symbol, FeatureStructure>> parts) {
  UnifyGraph g;
  auto root = g.new_complex();
  for (const auto& [feature, part] : parts) {
    auto id = g.import(part);
    if (!g.set_arc(root, feature, id))
      throw std::invalid_argument("compose: conflicting part " + feature.str());
  }
  return *g.extract(root);
}

FeatureStructure make_list(std::span<const FeatureStructure> items) {
  UnifyGraph g;
  std::vector<UnifyGraph::Id> ids;
  ids.reserve(items.size());
  for (const auto& item : items) ids.push_back(g.import(item));
  return *g.extract(g.make_list(ids));
}

std::vector<FeatureStructure> list_items(const FeatureStructure& list) {
  std::vector<FeatureStructure> items;
  static const Symbol first("first");
  static const Symbol rest("rest");
  FeatureStructure::NodeId cur = list.root();
  while (list.node(cur).kind == NodeKind::kComplex) {
    auto f = list.find(std::span<const Symbol>(&first, 1), cur);
    auto r = list.find(std::span<const Symbol>(&rest, 1), cur);
    if (!f || !r) break;
    items.push_back(list.subtree(*f));
    cur = *r;
  }
  return items;
}

}  // namespace snb
