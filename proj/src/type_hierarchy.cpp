#include "lexlearn/type_hierarchy.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "lexlearn/error.hpp"
#include "text_util.hpp"

namespace lexlearn {

std::vector<std::size_t> LeafSet::leaves() const {
  std::vector<std::size_t> out;
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
  return out;
}

namespace {

constexpr std::string_view kJoin = "∨";

struct Definition {
  std::vector<std::string> operands;
  std::size_t line;
};

// Splits a declaration line into words, with '=' and '|' as standalone tokens.
std::vector<std::string> split_declaration(std::string_view line) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) out.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (c == '=' || c == '|') {
      flush();
      out.emplace_back(1, c);
    } else {
      cur += c;
    }
  }
  flush();
  return out;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !detail::is_ident_start(s[0])) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return detail::is_ident_char(c); });
}

}  // namespace

TypeHierarchy TypeHierarchy::parse(std::string_view text) {
  TypeHierarchy h;
  std::map<std::string, Definition> defs;
  std::vector<std::string> def_order;
  std::map<std::string, std::size_t> declared_at;

  auto declare = [&](const std::string& name, std::size_t line) {
    if (!valid_name(name)) throw SyntaxError("invalid type name '" + name + "'", line);
    if (name == "top") throw SyntaxError("'top' is reserved", line);
    auto [it, fresh] = declared_at.emplace(name, line);
    if (!fresh)
      throw SyntaxError("duplicate name '" + name + "' (first declared on line " +
                            std::to_string(it->second) + ")",
                        line);
  };

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_declaration(line);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (words[0] == "leaf") {
      if (words.size() < 2) throw SyntaxError("'leaf' needs at least one name", line_no);
      for (std::size_t i = 1; i < words.size(); ++i) {
        declare(words[i], line_no);
        if (h.leaves_.size() == LeafSet::kMaxLeaves)
          throw SyntaxError("too many leaves (limit " + std::to_string(LeafSet::kMaxLeaves) + ")", line_no);
        h.leaf_index_.emplace(words[i], h.leaves_.size());
        h.leaves_.push_back(words[i]);
      }
    } else if (words[0] == "type") {
      if (words.size() < 4 || words[2] != "=")
        throw SyntaxError("expected 'type <name> = <operand> (| <operand>)*'", line_no);
      declare(words[1], line_no);
      Definition def{{}, line_no};
      bool want_operand = true;
      for (std::size_t i = 3; i < words.size(); ++i) {
        if (want_operand) {
          if (words[i] == "|" || words[i] == "=") throw SyntaxError("missing operand", line_no);
          def.operands.push_back(words[i]);
        } else if (words[i] != "|") {
          throw SyntaxError("expected '|' between operands", line_no);
        }
        want_operand = !want_operand;
      }
      if (want_operand) throw SyntaxError("dangling '|'", line_no);
      def_order.push_back(words[1]);
      defs.emplace(words[1], std::move(def));
    } else {
      throw SyntaxError("unknown declaration '" + words[0] + "'", line_no);
    }
    if (end == text.size()) break;
  }

  for (std::size_t i = 0; i < h.leaves_.size(); ++i) h.top_ |= LeafSet::single(i);

  // Second pass: resolve names depth-first, detecting cycles.
  enum class State { Open, Done };
  std::map<std::string, State> state;
  std::function<LeafSet(const std::string&, std::size_t)> resolve =
      [&](const std::string& name, std::size_t line) -> LeafSet {
    if (auto it = h.leaf_index_.find(name); it != h.leaf_index_.end()) return LeafSet::single(it->second);
    auto def = defs.find(name);
    if (def == defs.end()) throw SyntaxError("unknown name '" + name + "'", line);
    auto st = state.find(name);
    if (st != state.end()) {
      if (st->second == State::Open) throw SyntaxError("cyclic definition of '" + name + "'", def->second.line);
      return h.named_.at(name);
    }
    state[name] = State::Open;
    LeafSet value;
    for (const auto& op : def->second.operands) value |= resolve(op, def->second.line);
    if (value.empty()) throw SyntaxError("'" + name + "' denotes the empty set", def->second.line);
    state[name] = State::Done;
    h.named_[name] = value;
    return value;
  };
  for (const auto& name : def_order) resolve(name, defs.at(name).line);

  auto leaf = [&](const char* name) -> std::optional<LeafSet> {
    if (auto it = h.leaf_index_.find(name); it != h.leaf_index_.end()) return LeafSet::single(it->second);
    return std::nullopt;
  };
  h.u_g_ = leaf("u_g");
  h.u_s_ = leaf("u_s");
  h.nelist_ = leaf("nelist");
  h.elist_ = leaf("elist");

  LeafSet markers = h.markers();
  if (!markers.empty()) {
    for (const auto& [name, value] : h.named_) {
      if (value.intersects(markers))
        throw SyntaxError("type '" + name + "' must not include the u_g/u_s markers", defs.at(name).line);
    }
  }
  return h;
}

TypeHierarchy TypeHierarchy::load(const std::string& path) {
  try {
    return parse(detail::read_file(path));
  } catch (const SyntaxError& e) {
    throw SyntaxError(path + ": " + e.what(), 0);
  }
}

std::optional<LeafSet> TypeHierarchy::find(std::string_view name) const {
  if (name == "top") return top_;
  if (auto it = leaf_index_.find(name); it != leaf_index_.end()) return LeafSet::single(it->second);
  if (auto it = named_.find(std::string(name)); it != named_.end()) return it->second;
  return std::nullopt;
}

LeafSet TypeHierarchy::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw Error("unknown type '" + std::string(name) + "'");
}

LeafSet TypeHierarchy::parse_expression(std::string_view expr) const {
  LeafSet out;
  bool any = false;
  while (true) {
    std::size_t cut = std::string_view::npos;
    std::size_t width = 0;
    for (std::string_view sep : {kJoin, std::string_view("\\/"), std::string_view("|")}) {
      std::size_t p = expr.find(sep);
      if (p < cut) {
        cut = p;
        width = sep.size();
      }
    }
    std::string_view part = detail::trim(expr.substr(0, cut));
    if (part.empty()) throw Error("empty operand in type expression");
    if (part == "⊥" || part == "bottom") {
      // contributes nothing
    } else {
      out |= at(part);
    }
    any = true;
    if (cut == std::string_view::npos) break;
    expr.remove_prefix(cut + width);
  }
  if (!any) throw Error("empty type expression");
  return out;
}

LeafSet TypeHierarchy::markers() const {
  LeafSet m;
  if (u_g_) m |= *u_g_;
  if (u_s_) m |= *u_s_;
  return m;
}

LeafSet TypeHierarchy::list_cons() const {
  if (!nelist_) throw Error("type hierarchy declares no 'nelist' leaf");
  return *nelist_;
}

LeafSet TypeHierarchy::list_end() const {
  if (!elist_) throw Error("type hierarchy declares no 'elist' leaf");
  return *elist_;
}

std::string TypeHierarchy::display(LeafSet set, bool hide_u_s) const {
  if (hide_u_s && u_s_ && set != *u_s_) set = set.minus(*u_s_);
  if (set.empty()) return "⊥";
  if (set == top_) return "top";

  // Exact names: leaves first (singletons), then declared types in name order.
  auto exact = [&](LeafSet s) -> std::optional<std::string> {
    std::optional<std::string> best;
    if (s.count() == 1) best = leaves_[s.leaves().front()];
    for (const auto& [name, value] : named_)
      if (value == s && (!best || name < *best)) best = name;
    return best;
  };
  if (auto name = exact(set)) return *name;

  std::vector<std::string> parts;
  LeafSet rest = set;
  for (auto marker : {u_g_, u_s_}) {
    if (marker && rest.includes(*marker)) {
      parts.push_back(leaves_[marker->leaves().front()]);
      rest = rest.minus(*marker);
    }
  }
  while (!rest.empty()) {
    if (auto name = exact(rest)) {
      parts.push_back(*name);
      break;
    }
    const std::string* best = nullptr;
    LeafSet best_value;
    auto consider = [&](const std::string& name, LeafSet value) {
      if (!rest.includes(value)) return;
      if (best == nullptr || value.count() > best_value.count() ||
          (value.count() == best_value.count() && name < *best)) {
        best = &name;
        best_value = value;
      }
    };
    for (const auto& [name, value] : named_) consider(name, value);
    for (std::size_t i : rest.leaves()) consider(leaves_[i], LeafSet::single(i));
    parts.push_back(*best);
    rest = rest.minus(best_value);
  }

  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += kJoin;
    out += p;
  }
  return out;
}

}  // namespace lexlearn
