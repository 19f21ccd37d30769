#include "snb/feature_structure.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace snb {

Path make_path(std::string_view dotted) {
  Path path;
  while (!dotted.empty()) {
    auto dot = dotted.find('.');
    path.emplace_back(dotted.substr(0, dot));
    if (dot == std::string_view::npos) break;
    dotted.remove_prefix(dot + 1);
  }
  return path;
}

std::string path_to_string(std::span<const Symbol> path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += path[i].str();
  }
  return out;
}

std::uint64_t next_variable_id() {
  static std::atomic<std::uint64_t> counter{1};
  return counter.fetch_add(1, std::memory_order_relaxed);
}

namespace {

using Node = FeatureStructure::Node;
using NodeId = FeatureStructure::NodeId;

// Copies the nodes reachable from `root` into preorder, root first.
// Throws on cycles.
std::vector<Node> compact(const std::vector<Node>& nodes, NodeId root) {
  constexpr NodeId kUnseen = ~NodeId{0};
  std::vector<NodeId> remap(nodes.size(), kUnseen);
  std::vector<std::uint8_t> state(nodes.size(), 0);  // 0 new, 1 on stack, 2 done
  std::vector<NodeId> order;

  // Iterative DFS to keep deep lists off the call stack.
  struct Frame {
    NodeId id;
    std::size_t next_arc;
  };
  std::vector<Frame> stack{{root, 0}};
  state[root] = 1;
  remap[root] = 0;
  order.push_back(root);
  while (!stack.empty()) {
    auto& frame = stack.back();
    const auto& n = nodes[frame.id];
    if (frame.next_arc < n.arcs.size()) {
      NodeId child = n.arcs[frame.next_arc++].target;
      if (child >= nodes.size()) throw std::invalid_argument("arc to missing node");
      if (state[child] == 1) throw std::invalid_argument("cyclic feature structure");
      if (state[child] == 0) {
        state[child] = 1;
        remap[child] = static_cast<NodeId>(order.size());
        order.push_back(child);
        stack.push_back({child, 0});
      }
      continue;
    }
    state[frame.id] = 2;
    stack.pop_back();
  }

  std::vector<Node> out;
  out.reserve(order.size());
  for (NodeId old : order) {
    Node n = nodes[old];
    for (auto& arc : n.arcs) arc.target = remap[arc.target];
    out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

FeatureStructure::FeatureStructure()
    : nodes_(std::make_shared<const std::vector<Node>>(
          std::vector<Node>{Node{NodeKind::kComplex, {}, {}, 0}})) {}

FeatureStructure FeatureStructure::make_atom(Symbol value) {
  return FeatureStructure(std::make_shared<const std::vector<Node>>(
      std::vector<Node>{Node{NodeKind::kAtom, value, {}, 0}}));
}

FeatureStructure FeatureStructure::make_variable() {
  return FeatureStructure(std::make_shared<const std::vector<Node>>(
      std::vector<Node>{Node{NodeKind::kVariable, {}, {}, next_variable_id()}}));
}

FeatureStructure FeatureStructure::from_nodes(std::vector<Node> nodes, NodeId root) {
  if (root >= nodes.size()) throw std::invalid_argument("root out of range");
  for (auto& n : nodes) {
    if (n.kind != NodeKind::kComplex && !n.arcs.empty())
      throw std::invalid_argument("non-complex node with features");
    std::sort(n.arcs.begin(), n.arcs.end(),
              [](const Arc& a, const Arc& b) { return a.feature < b.feature; });
    for (std::size_t i = 1; i < n.arcs.size(); ++i)
      if (n.arcs[i].feature == n.arcs[i - 1].feature)
        throw std::invalid_argument("duplicate feature " + n.arcs[i].feature.str());
  }
  return FeatureStructure(std::make_shared<const std::vector<Node>>(compact(nodes, root)));
}

std::optional<NodeId> FeatureStructure::find(std::span<const Symbol> path, NodeId from) const {
  NodeId cur = from;
  for (Symbol f : path) {
    const auto& arcs = node(cur).arcs;
    auto it = std::lower_bound(arcs.begin(), arcs.end(), f,
                               [](const Arc& a, Symbol s) { return a.feature < s; });
    if (it == arcs.end() || it->feature != f) return std::nullopt;
    cur = it->target;
  }
  return cur;
}

std::optional<Symbol> FeatureStructure::atom_at(std::span<const Symbol> path) const {
  auto id = find(path);
  if (!id || node(*id).kind != NodeKind::kAtom) return std::nullopt;
  return node(*id).atom;
}

FeatureStructure FeatureStructure::subtree(NodeId id) const {
  if (id == 0) return *this;
  return FeatureStructure(std::make_shared<const std::vector<Node>>(compact(*nodes_, id)));
}

std::string FeatureStructure::str() const {
  FsPrinter printer(*this);
  return printer.groups(root());
}

bool operator==(const FeatureStructure& a, const FeatureStructure& b) {
  if (a.nodes_ == b.nodes_) return true;
  if (a.size() != b.size()) return false;
  return a.str() == b.str();
}

// ---------------------------------------------------------------------------

std::string quote_atom(const std::string& text) {
  bool bare = !text.empty() && text[0] != '?' && text[0] != ':';
  for (unsigned char c : text) {
    if (c <= ' ' || c == '(' || c == ')' || c == '"' || c == ';' || c == '\\') {
      bare = false;
      break;
    }
  }
  if (bare) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

FsPrinter::FsPrinter(const FeatureStructure& fs)
    : fs_(fs), indegree_(fs.size(), 0), tag_(fs.size(), 0) {
  for (NodeId i = 0; i < fs.size(); ++i)
    for (const auto& arc : fs.node(i).arcs) ++indegree_[arc.target];
}

bool FsPrinter::tag(std::string& out, NodeId id) {
  const auto& n = fs_.node(id);
  if (n.kind != NodeKind::kVariable && indegree_[id] < 2) return false;
  if (tag_[id] != 0) {
    out += '?';
    out += std::to_string(tag_[id]);
    return true;  // already printed; the tag alone refers back
  }
  tag_[id] = next_tag_++;
  out += '?';
  out += std::to_string(tag_[id]);
  if (n.kind == NodeKind::kVariable) return true;
  out += ' ';
  return false;
}

void FsPrinter::write_value(std::string& out, NodeId id) {
  if (tag(out, id)) return;
  const auto& n = fs_.node(id);
  switch (n.kind) {
    case NodeKind::kAtom:
      out += quote_atom(n.atom.str());
      break;
    case NodeKind::kComplex:
      write_groups(out, id);
      break;
    case NodeKind::kVariable:
      break;  // handled by tag()
  }
}

void FsPrinter::write_groups(std::string& out, NodeId id) {
  const auto& n = fs_.node(id);
  if (n.arcs.empty()) {
    out += "()";
    return;
  }
  for (std::size_t i = 0; i < n.arcs.size(); ++i) {
    if (i) out += ' ';
    out += '(';
    out += n.arcs[i].feature.str();
    out += ' ';
    write_value(out, n.arcs[i].target);
    out += ')';
  }
}

std::string FsPrinter::groups(NodeId id) {
  std::string out;
  if (fs_.node(id).kind == NodeKind::kComplex && indegree_[id] < 2) {
    write_groups(out, id);
  } else {
    write_value(out, id);
  }
  return out;
}

std::string FsPrinter::value(NodeId id) {
  std::string out;
  write_value(out, id);
  return out;
}

}  // namespace snb
