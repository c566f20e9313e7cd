#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexlearn/type_hierarchy.hpp"

namespace lexlearn {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

/// One step of a feature path: a feature name, optionally followed by a
/// list index (`args[1]` selects the second element of the list under `args`).
struct PathStep {
  std::string feature;
  std::optional<std::size_t> index;

  bool operator==(const PathStep&) const = default;
  auto operator<=>(const PathStep&) const = default;
};

/// Dotted access path such as `arg-st.args[1].loc.cont.gen`.
class FeaturePath {
 public:
  FeaturePath() = default;
  explicit FeaturePath(std::vector<PathStep> steps) : steps_(std::move(steps)) {}

  /// Throws SyntaxError on malformed input. The empty string is the empty path.
  static FeaturePath parse(std::string_view text);

  const std::vector<PathStep>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }
  std::size_t size() const { return steps_.size(); }

  /// Path with `[index]` attached to the final step.
  FeaturePath with_index(std::size_t index) const;
  FeaturePath operator+(const FeaturePath& tail) const;
  /// Path minus its final step.
  FeaturePath parent() const;

  std::string str() const;

  bool operator==(const FeaturePath&) const = default;
  auto operator<=>(const FeaturePath&) const = default;

 private:
  std::vector<PathStep> steps_;
};

/// Rooted, typed, acyclic attribute-value graph with reentrancy.
///
/// Nodes carry a LeafSet type, an optional string atom (for `phon`), and an
/// ordered list of feature arcs. Lists use `first`/`rest` arcs with the
/// hierarchy's list types; a featureless node of the open list type is an
/// open tail.
///
/// Node types are revisable in place: every path that reaches a shared node
/// observes the change. Not internally synchronized.
class FeatureStructure {
 public:
  struct Arc {
    std::string feature;
    NodeId target;
  };

  /// Single-node structure.
  explicit FeatureStructure(LeafSet root_type);

  NodeId root() const { return deref(root_); }
  void set_root(NodeId id) { root_ = id; }
  std::size_t node_count() const { return nodes_.size(); }

  NodeId add_node(LeafSet type);
  NodeId add_atom(std::string text, LeafSet type);

  LeafSet type(NodeId id) const { return nodes_[deref(id)].type; }
  void set_type(NodeId id, LeafSet type) { nodes_[deref(id)].type = type; }
  const std::optional<std::string>& atom(NodeId id) const { return nodes_[deref(id)].atom; }
  /// Arcs in insertion order. Targets may need deref() before normalize().
  const std::vector<Arc>& arcs(NodeId id) const { return nodes_[deref(id)].arcs; }
  std::optional<NodeId> arc(NodeId id, std::string_view feature) const;
  /// Adds the arc, or redirects an existing arc with the same feature.
  void set_arc(NodeId from, std::string feature, NodeId to);
  bool remove_arc(NodeId from, std::string_view feature);

  /// Copies all nodes of `other` into this graph; returns the image of
  /// other's root. The two parts share nothing until unified.
  NodeId graft(const FeatureStructure& other);

  /// Destructively unifies two nodes of this graph. On false the graph is in
  /// an unspecified state; callers unify on copies. Cycles are not detected
  /// here; normalize() reports them.
  bool unify_nodes(NodeId a, NodeId b);

  NodeId deref(NodeId id) const;

  /// Drops nodes unreachable from the root and resolves unification
  /// forwarding. Returns false if the graph contains a cycle (in which case
  /// it is left unchanged). When `remap` is given, it receives the new id
  /// of every old node (kNoNode for dropped nodes).
  bool normalize(std::vector<NodeId>* remap = nullptr);

  /// Copy of the part reachable from `id`, rooted there.
  FeatureStructure subgraph(NodeId id) const;

  bool is_acyclic() const;

 private:
  struct Node {
    LeafSet type;
    std::optional<std::string> atom;
    std::vector<Arc> arcs;
    NodeId forward = kNoNode;
  };

  std::vector<Node> nodes_;
  NodeId root_ = 0;
};

/// Unifies copies of `a` and `b`; nullopt on type clash, atom clash or cycle.
std::optional<FeatureStructure> unify_fs(const FeatureStructure& a, const FeatureStructure& b);

/// Follows `path` from `from` (the root by default); nullopt if any step is missing.
std::optional<NodeId> resolve_path(const FeatureStructure& fs, const FeaturePath& path,
                                   NodeId from = kNoNode);

/// Follows `path`, creating missing nodes. The node at the end of the path
/// gets `default_type` if it is new; new intermediate nodes are top. Missing list
/// values start as open lists; indexing past the end of an open list grows
/// it. Throws PathError when a step would extend a closed list or hang a
/// feature off a string atom.
NodeId extend_path(FeatureStructure& fs, const TypeHierarchy& h, const FeaturePath& path,
                   LeafSet default_type, NodeId from = kNoNode);

/// Replaces the type of the node at `path` in place. Throws PathError if the
/// path is absent and Error if `value` is bottom.
void revise_type_at(FeatureStructure& fs, const FeaturePath& path, LeafSet value);

/// Elements of the list at `list` (cons cells walked until the first
/// non-cons node), and that final tail node.
struct ListView {
  std::vector<NodeId> elements;
  NodeId tail = kNoNode;
};
ListView list_elements(const FeatureStructure& fs, NodeId list);

/// Number of distinct nodes reachable from the root.
std::size_t reachable_count(const FeatureStructure& fs);

struct RenderOptions {
  /// Omit the u_s marker from displayed types (presentation mode).
  bool hide_u_s = false;
};

/// AVM text: `[feat: value, ...]`, values are type expressions (`a∨b`),
/// `type[...]`, lists `<v1, v2 | _>`, string atoms `"..."` and reentrancy
/// tags `#n=value` / `#n`. Single-feature untyped chains are written as
/// dotted keys (`loc.cont: [...]`).
std::string render_fs(const FeatureStructure& fs, const TypeHierarchy& h, RenderOptions options = {});

/// Inverse of render_fs (up to tag numbering). Whitespace-insensitive; the
/// ASCII alias `\/` is accepted for `∨`. Throws SyntaxError with position.
FeatureStructure parse_fs(std::string_view text, const TypeHierarchy& h);

}  // namespace lexlearn
