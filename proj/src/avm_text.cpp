#include <map>
#include <set>

#include "avm_reader.hpp"
#include "lexlearn/error.hpp"
#include "lexlearn/feature_structure.hpp"

namespace lexlearn {

namespace {

class Renderer {
 public:
  Renderer(const FeatureStructure& fs, const TypeHierarchy& h, RenderOptions options)
      : fs_(fs), h_(h), options_(options) {
    count_parents(fs.root());
  }

  std::string run() {
    std::string out;
    value(fs_.root(), out);
    return out;
  }

 private:
  void count_parents(NodeId id) {
    if (!seen_.insert(id).second) return;
    for (const auto& a : fs_.arcs(id)) {
      NodeId t = fs_.deref(a.target);
      ++parents_[t];
      count_parents(t);
    }
  }

  bool shared(NodeId id) const {
    auto it = parents_.find(id);
    return it != parents_.end() && it->second > 1;
  }

  std::string type_name(LeafSet t) const { return h_.display(t, options_.hide_u_s); }

  void value(NodeId id, std::string& out) {
    id = fs_.deref(id);
    if (shared(id)) {
      auto [it, fresh] = tags_.emplace(id, tags_.size() + 1);
      out += "#" + std::to_string(it->second);
      if (!fresh) return;
      out += "=";
    }
    body(id, out);
  }

  bool is_list(NodeId id) const {
    if (!h_.has_lists() || fs_.atom(id)) return false;
    LeafSet t = fs_.type(id);
    return t != h_.top() && h_.list_open().includes(t);
  }

  bool is_cons_cell(NodeId id) const {
    const auto& arcs = fs_.arcs(id);
    return fs_.type(id) == h_.list_cons() && arcs.size() == 2 && fs_.arc(id, "first") && fs_.arc(id, "rest");
  }

  void body(NodeId id, std::string& out) {
    if (const auto& atom = fs_.atom(id)) {
      out += detail::quote(*atom);
      return;
    }
    if (is_list(id) && (is_cons_cell(id) || fs_.arcs(id).empty())) {
      list(id, out);
      return;
    }
    const auto& arcs = fs_.arcs(id);
    LeafSet t = fs_.type(id);
    if (arcs.empty()) {
      out += type_name(t);
      return;
    }
    if (t != h_.top()) out += type_name(t);
    out += '[';
    bool first = true;
    for (const auto& a : arcs) {
      if (!first) out += ", ";
      first = false;
      std::string key = a.feature;
      NodeId target = fs_.deref(a.target);
      // Collapse untyped single-feature chains into a dotted key.
      while (!shared(target) && !fs_.atom(target) && fs_.type(target) == h_.top() &&
             fs_.arcs(target).size() == 1) {
        const auto& only = fs_.arcs(target).front();
        key += "." + only.feature;
        target = fs_.deref(only.target);
      }
      out += key;
      out += ": ";
      value(target, out);
    }
    out += ']';
  }

  void list(NodeId id, std::string& out) {
    out += '<';
    NodeId cur = id;
    bool any = false;
    while (is_cons_cell(cur) && (cur == id || !shared(cur))) {
      if (any) out += ", ";
      any = true;
      value(*fs_.arc(cur, "first"), out);
      cur = *fs_.arc(cur, "rest");
    }
    bool plain_tail = !shared(cur) && fs_.arcs(cur).empty() && !fs_.atom(cur);
    if (plain_tail && fs_.type(cur) == h_.list_end()) {
      out += '>';
      return;
    }
    out += any ? " | " : "| ";
    if (plain_tail && fs_.type(cur) == h_.list_open()) {
      out += "_>";
      return;
    }
    value(cur, out);
    out += '>';
  }

  const FeatureStructure& fs_;
  const TypeHierarchy& h_;
  RenderOptions options_;
  std::set<NodeId> seen_;
  std::map<NodeId, int> parents_;
  std::map<NodeId, std::size_t> tags_;
};

class Reader {
 public:
  Reader(detail::TextCursor& cursor, const TypeHierarchy& h) : in_(cursor), h_(h), fs_(h.top()) {}

  FeatureStructure run() {
    NodeId root = value();
    fs_.set_root(root);
    if (!fs_.normalize()) in_.fail("cyclic structure");
    return std::move(fs_);
  }

 private:
  bool at_placeholder() {
    return in_.peek() == '_' && !detail::is_ident_char(in_.peek_raw(1));
  }

  NodeId value() {
    char c = in_.peek();
    if (c == '#') {
      in_.advance(1);
      std::size_t tag = in_.number();
      if (in_.consume("=")) {
        NodeId v = value();
        auto it = tags_.find(tag);
        if (it == tags_.end()) {
          tags_.emplace(tag, v);
          return v;
        }
        if (!fs_.unify_nodes(it->second, v)) in_.fail("conflicting values for tag #" + std::to_string(tag));
        return it->second;
      }
      auto it = tags_.find(tag);
      if (it == tags_.end()) it = tags_.emplace(tag, fs_.add_node(h_.top())).first;
      return it->second;
    }
    if (c == '"') return fs_.add_atom(in_.quoted(), h_.top());
    if (c == '<') return list();
    if (c == '[') return complex(fs_.add_node(h_.top()));
    if (at_placeholder()) {
      in_.advance(1);
      return fs_.add_node(h_.top());
    }
    LeafSet t = detail::read_type_expression(in_, h_);
    if (t.empty()) in_.fail("bottom is not a node type");
    NodeId node = fs_.add_node(t);
    if (in_.peek() == '[') complex(node);
    return node;
  }

  NodeId complex(NodeId node) {
    in_.expect("[");
    if (in_.consume("]")) return node;
    while (true) {
      FeaturePath key = detail::read_path(in_);
      for (const auto& step : key.steps())
        if (step.index) in_.fail("list index not allowed in feature key");
      in_.expect(":");
      NodeId v = value();
      NodeId parent = node;
      const auto& steps = key.steps();
      for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
        auto next = fs_.arc(parent, steps[i].feature);
        if (!next) {
          NodeId child = fs_.add_node(h_.top());
          fs_.set_arc(parent, steps[i].feature, child);
          next = child;
        }
        parent = *next;
      }
      if (auto existing = fs_.arc(parent, steps.back().feature)) {
        if (!fs_.unify_nodes(*existing, v)) in_.fail("conflicting values for '" + key.str() + "'");
      } else {
        fs_.set_arc(parent, steps.back().feature, v);
      }
      if (in_.consume(",")) continue;
      in_.expect("]");
      return node;
    }
  }

  NodeId list() {
    if (!h_.has_lists()) in_.fail("lists need 'elist' and 'nelist' leaves in the type hierarchy");
    in_.expect("<");
    std::vector<NodeId> elements;
    std::optional<NodeId> tail;
    if (in_.consume(">")) {
      tail = fs_.add_node(h_.list_end());
    } else if (!in_.starts_with("|")) {
      while (true) {
        elements.push_back(value());
        if (in_.consume(",")) continue;
        if (in_.consume(">")) {
          tail = fs_.add_node(h_.list_end());
        }
        break;
      }
    }
    if (!tail) {
      in_.expect("|");
      if (at_placeholder()) {
        in_.advance(1);
        tail = fs_.add_node(h_.list_open());
      } else {
        tail = value();
      }
      in_.expect(">");
    }
    NodeId cur = *tail;
    for (auto it = elements.rbegin(); it != elements.rend(); ++it) {
      NodeId cell = fs_.add_node(h_.list_cons());
      fs_.set_arc(cell, "first", *it);
      fs_.set_arc(cell, "rest", cur);
      cur = cell;
    }
    return cur;
  }

  detail::TextCursor& in_;
  const TypeHierarchy& h_;
  FeatureStructure fs_;
  std::map<std::size_t, NodeId> tags_;
};

}  // namespace

namespace detail {

FeatureStructure read_avm(TextCursor& cursor, const TypeHierarchy& h) { return Reader(cursor, h).run(); }

LeafSet read_type_expression(TextCursor& cursor, const TypeHierarchy& h) {
  LeafSet out;
  do {
    std::size_t at = cursor.position();
    std::string name = cursor.identifier("type name");
    auto value = h.find(name);
    if (!value) {
      cursor.set_position(at);
      cursor.skip_space();
      cursor.fail("unknown type '" + name + "'");
    }
    out |= *value;
  } while (cursor.consume("∨") || cursor.consume("\\/"));
  return out;
}

FeaturePath read_path(TextCursor& cursor) {
  std::vector<PathStep> steps;
  while (true) {
    PathStep step{cursor.identifier("feature name"), std::nullopt};
    if (cursor.peek_raw() == '[') {
      cursor.advance(1);
      step.index = cursor.number();
      cursor.expect("]");
    }
    steps.push_back(std::move(step));
    if (cursor.peek_raw() == '.' && is_ident_start(cursor.peek_raw(1))) {
      cursor.advance(1);
      continue;
    }
    break;
  }
  return FeaturePath(std::move(steps));
}

}  // namespace detail

std::string render_fs(const FeatureStructure& fs, const TypeHierarchy& h, RenderOptions options) {
  return Renderer(fs, h, options).run();
}

FeatureStructure parse_fs(std::string_view text, const TypeHierarchy& h) {
  detail::TextCursor cursor(text);
  FeatureStructure fs = detail::read_avm(cursor, h);
  if (!cursor.at_end()) cursor.fail("unexpected trailing input");
  return fs;
}

}  // namespace lexlearn
