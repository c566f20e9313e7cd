#include "lexlearn/feature_structure.hpp"

#include <algorithm>
#include <functional>

#include "lexlearn/error.hpp"
#include "text_util.hpp"

namespace lexlearn {

// ---------------------------------------------------------------------------
// FeaturePath

FeaturePath FeaturePath::parse(std::string_view text) {
  FeaturePath path;
  text = detail::trim(text);
  if (text.empty()) return path;
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw SyntaxError("bad path '" + std::string(text) + "': " + msg, 0);
  };
  while (true) {
    if (i >= text.size() || !detail::is_ident_start(text[i])) fail("expected feature name");
    std::size_t start = i;
    while (i < text.size() && detail::is_ident_char(text[i])) ++i;
    PathStep step{std::string(text.substr(start, i - start)), std::nullopt};
    if (i < text.size() && text[i] == '[') {
      ++i;
      std::size_t digits = i;
      std::size_t value = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        value = value * 10 + static_cast<std::size_t>(text[i++] - '0');
      if (i == digits || i >= text.size() || text[i] != ']') fail("expected index");
      ++i;
      step.index = value;
    }
    path.steps_.push_back(std::move(step));
    if (i == text.size()) break;
    if (text[i] != '.') fail("expected '.'");
    ++i;
  }
  return path;
}

FeaturePath FeaturePath::with_index(std::size_t index) const {
  FeaturePath out = *this;
  if (out.steps_.empty()) throw Error("cannot index the empty path");
  out.steps_.back().index = index;
  return out;
}

FeaturePath FeaturePath::operator+(const FeaturePath& tail) const {
  FeaturePath out = *this;
  out.steps_.insert(out.steps_.end(), tail.steps_.begin(), tail.steps_.end());
  return out;
}

FeaturePath FeaturePath::parent() const {
  FeaturePath out = *this;
  if (!out.steps_.empty()) out.steps_.pop_back();
  return out;
}

std::string FeaturePath::str() const {
  std::string out;
  for (const auto& step : steps_) {
    if (!out.empty()) out += '.';
    out += step.feature;
    if (step.index) out += "[" + std::to_string(*step.index) + "]";
  }
  return out;
}

// ---------------------------------------------------------------------------
// FeatureStructure

FeatureStructure::FeatureStructure(LeafSet root_type) { nodes_.push_back(Node{root_type, {}, {}, kNoNode}); }

NodeId FeatureStructure::add_node(LeafSet type) {
  nodes_.push_back(Node{type, {}, {}, kNoNode});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId FeatureStructure::add_atom(std::string text, LeafSet type) {
  nodes_.push_back(Node{type, std::move(text), {}, kNoNode});
  return static_cast<NodeId>(nodes_.size() - 1);
}

NodeId FeatureStructure::deref(NodeId id) const {
  while (nodes_[id].forward != kNoNode) id = nodes_[id].forward;
  return id;
}

std::optional<NodeId> FeatureStructure::arc(NodeId id, std::string_view feature) const {
  for (const auto& a : nodes_[deref(id)].arcs)
    if (a.feature == feature) return deref(a.target);
  return std::nullopt;
}

void FeatureStructure::set_arc(NodeId from, std::string feature, NodeId to) {
  auto& arcs = nodes_[deref(from)].arcs;
  for (auto& a : arcs) {
    if (a.feature == feature) {
      a.target = to;
      return;
    }
  }
  arcs.push_back(Arc{std::move(feature), to});
}

bool FeatureStructure::remove_arc(NodeId from, std::string_view feature) {
  auto& arcs = nodes_[deref(from)].arcs;
  auto it = std::find_if(arcs.begin(), arcs.end(), [&](const Arc& a) { return a.feature == feature; });
  if (it == arcs.end()) return false;
  arcs.erase(it);
  return true;
}

NodeId FeatureStructure::graft(const FeatureStructure& other) {
  const auto offset = static_cast<NodeId>(nodes_.size());
  nodes_.reserve(nodes_.size() + other.nodes_.size());
  for (const auto& n : other.nodes_) {
    Node copy = n;
    for (auto& a : copy.arcs) a.target += offset;
    if (copy.forward != kNoNode) copy.forward += offset;
    nodes_.push_back(std::move(copy));
  }
  return other.root() + offset;
}

bool FeatureStructure::unify_nodes(NodeId a, NodeId b) {
  a = deref(a);
  b = deref(b);
  if (a == b) return true;

  LeafSet merged = nodes_[a].type & nodes_[b].type;
  if (merged.empty()) return false;
  auto& atom_a = nodes_[a].atom;
  const auto& atom_b = nodes_[b].atom;
  if (atom_a && atom_b && *atom_a != *atom_b) return false;
  if ((atom_a && !nodes_[b].arcs.empty()) || (atom_b && !nodes_[a].arcs.empty())) return false;
  if (!atom_a && atom_b) atom_a = atom_b;

  nodes_[a].type = merged;
  nodes_[b].forward = a;
  std::vector<Arc> moved = std::move(nodes_[b].arcs);
  nodes_[b].arcs.clear();

  for (auto& arc : moved) {
    NodeId rep = deref(a);
    std::optional<NodeId> existing;
    for (const auto& mine : nodes_[rep].arcs) {
      if (mine.feature == arc.feature) {
        existing = mine.target;
        break;
      }
    }
    if (existing) {
      if (!unify_nodes(*existing, arc.target)) return false;
    } else {
      if (nodes_[rep].atom) return false;
      nodes_[rep].arcs.push_back(std::move(arc));
    }
  }
  return true;
}

bool FeatureStructure::normalize(std::vector<NodeId>* remap) {
  enum : std::uint8_t { White, Grey, Black };
  std::vector<std::uint8_t> color(nodes_.size(), White);
  std::vector<NodeId> order;
  bool cyclic = false;

  std::function<void(NodeId)> visit = [&](NodeId id) {
    id = deref(id);
    if (color[id] == Black) return;
    if (color[id] == Grey) {
      cyclic = true;
      return;
    }
    color[id] = Grey;
    order.push_back(id);
    for (const auto& a : nodes_[id].arcs) {
      visit(a.target);
      if (cyclic) return;
    }
    color[id] = Black;
  };
  visit(root_);
  if (cyclic) return false;

  std::vector<NodeId> new_id(nodes_.size(), kNoNode);
  for (std::size_t i = 0; i < order.size(); ++i) new_id[order[i]] = static_cast<NodeId>(i);

  std::vector<Node> fresh;
  fresh.reserve(order.size());
  for (NodeId old : order) {
    Node n = std::move(nodes_[old]);
    for (auto& a : n.arcs) a.target = new_id[deref(a.target)];
    n.forward = kNoNode;
    fresh.push_back(std::move(n));
  }
  if (remap) {
    remap->assign(nodes_.size(), kNoNode);
    for (std::size_t i = 0; i < nodes_.size(); ++i) (*remap)[i] = new_id[deref(static_cast<NodeId>(i))];
  }
  root_ = new_id[deref(root_)];
  nodes_ = std::move(fresh);
  return true;
}

FeatureStructure FeatureStructure::subgraph(NodeId id) const {
  FeatureStructure out = *this;
  out.root_ = deref(id);
  out.normalize();
  return out;
}

bool FeatureStructure::is_acyclic() const {
  FeatureStructure probe = *this;
  return probe.normalize();
}

// ---------------------------------------------------------------------------
// Free operations

std::optional<FeatureStructure> unify_fs(const FeatureStructure& a, const FeatureStructure& b) {
  FeatureStructure out = a;
  NodeId other = out.graft(b);
  if (!out.unify_nodes(out.root(), other)) return std::nullopt;
  if (!out.normalize()) return std::nullopt;
  return out;
}

namespace {

std::optional<NodeId> list_element(const FeatureStructure& fs, NodeId list, std::size_t index) {
  NodeId cur = list;
  for (std::size_t i = 0;; ++i) {
    auto first = fs.arc(cur, "first");
    auto rest = fs.arc(cur, "rest");
    if (!first || !rest) return std::nullopt;
    if (i == index) return first;
    cur = *rest;
  }
}

}  // namespace

std::optional<NodeId> resolve_path(const FeatureStructure& fs, const FeaturePath& path, NodeId from) {
  NodeId cur = from == kNoNode ? fs.root() : fs.deref(from);
  for (const auto& step : path.steps()) {
    auto next = fs.arc(cur, step.feature);
    if (!next) return std::nullopt;
    cur = *next;
    if (step.index) {
      auto elem = list_element(fs, cur, *step.index);
      if (!elem) return std::nullopt;
      cur = *elem;
    }
  }
  return cur;
}

NodeId extend_path(FeatureStructure& fs, const TypeHierarchy& h, const FeaturePath& path,
                   LeafSet default_type, NodeId from) {
  NodeId cur = from == kNoNode ? fs.root() : fs.deref(from);
  auto add_arc = [&](NodeId parent, const std::string& feature, LeafSet type) {
    if (fs.atom(parent)) throw PathError("cannot add feature '" + feature + "' to a string atom");
    NodeId child = fs.add_node(type);
    fs.set_arc(parent, feature, child);
    return child;
  };

  const auto& steps = path.steps();
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const auto& step = steps[s];
    const bool last = s + 1 == steps.size();
    const LeafSet fresh_type = last ? default_type : h.top();
    auto next = fs.arc(cur, step.feature);
    cur = next ? *next : add_arc(cur, step.feature, step.index ? h.list_open() : fresh_type);
    if (!step.index) continue;
    for (std::size_t i = 0;; ++i) {
      auto first = fs.arc(cur, "first");
      auto rest = fs.arc(cur, "rest");
      if (!first || !rest) {
        LeafSet cons = fs.type(cur) & h.list_cons();
        if (cons.empty() || !fs.arcs(cur).empty())
          throw PathError("cannot extend closed list at '" + path.str() + "'");
        fs.set_type(cur, cons);
        first = add_arc(cur, "first", i == *step.index ? fresh_type : h.top());
        rest = add_arc(cur, "rest", h.list_open());
      }
      if (i == *step.index) {
        cur = *first;
        break;
      }
      cur = *rest;
    }
  }
  return cur;
}

void revise_type_at(FeatureStructure& fs, const FeaturePath& path, LeafSet value) {
  if (value.empty()) throw Error("cannot revise '" + path.str() + "' to bottom");
  auto node = resolve_path(fs, path);
  if (!node) throw PathError("no node at '" + path.str() + "'");
  fs.set_type(*node, value);
}

ListView list_elements(const FeatureStructure& fs, NodeId list) {
  ListView view;
  NodeId cur = fs.deref(list);
  while (true) {
    auto first = fs.arc(cur, "first");
    auto rest = fs.arc(cur, "rest");
    if (!first || !rest) break;
    view.elements.push_back(*first);
    cur = *rest;
  }
  view.tail = cur;
  return view;
}

std::size_t reachable_count(const FeatureStructure& fs) {
  FeatureStructure copy = fs;
  copy.normalize();
  return copy.node_count();
}

}  // namespace lexlearn
