#include "lexlearn/lexicon.hpp"

#include <cstdio>
#include <set>
#include <utility>

#include "avm_reader.hpp"
#include "entry_reader.hpp"
#include "lexlearn/error.hpp"
#include "text_util.hpp"

namespace lexlearn {

Lexicon Lexicon::parse_source(std::string_view text, const TypeHierarchy& h) {
  Lexicon lex;
  for (auto& entry : parse_lexicon_entries(text, h)) lex.entries_.emplace(entry.form, std::move(entry));
  return lex;
}

Lexicon Lexicon::load_source(const std::string& path, const TypeHierarchy& h) {
  std::string text = detail::read_file(path);
  try {
    return parse_source(text, h);
  } catch (const SyntaxError& e) {
    throw SyntaxError(path + ": " + e.what(), 0);
  }
}

namespace {

UpdateCandidate read_candidate(detail::TextCursor& in, const TypeHierarchy& h, const std::string& form) {
  auto keyword = [&](const char* word) {
    if (in.identifier(word) != word) in.fail(std::string("expected '") + word + "'");
  };
  UpdateCandidate c;
  c.form = form;
  c.clause = in.identifier("clause name");
  std::string kind = in.identifier("clause kind");
  if (kind != "generalizable" && kind != "specializable") in.fail("bad clause kind '" + kind + "'");
  c.kind = clause_kind_from(kind);
  keyword("disjunct");
  c.disjunct = in.number();
  keyword("path");
  in.skip_space();
  c.path = detail::read_path(in);
  keyword("old");
  c.old_value = detail::read_type_expression(in, h);
  keyword("new");
  c.new_value = detail::read_type_expression(in, h);
  in.expect(".");
  return c;
}

}  // namespace

Lexicon Lexicon::parse_store(std::string_view text, const TypeHierarchy& h) {
  Lexicon lex;
  detail::TextCursor in(text);
  bool have_version = false;
  while (!in.at_end()) {
    const std::size_t line = in.line();
    std::string keyword = in.identifier("'version', 'entry' or 'pending'");
    if (keyword == "version") {
      if (have_version) throw SyntaxError("second version line", line);
      lex.version_ = in.number();
      in.expect(".");
      have_version = true;
    } else if (keyword == "entry") {
      LexicalEntry entry = detail::read_entry(in, h);
      if (lex.entries_.contains(entry.form)) throw SyntaxError("duplicate entry \"" + entry.form + "\"", line);
      lex.entries_.emplace(entry.form, std::move(entry));
    } else if (keyword == "pending") {
      PendingHypothesis p;
      p.form = in.quoted();
      if (in.identifier("'solution'") != "solution") in.fail("expected 'solution'");
      p.solution = in.number();
      if (in.identifier("'sentence'") != "sentence") in.fail("expected 'sentence'");
      p.sentence = in.quoted();
      in.expect("{");
      while (!in.consume("}")) {
        if (in.at_end()) in.fail("unterminated pending block");
        if (in.identifier("'candidate'") != "candidate") in.fail("expected 'candidate'");
        p.candidates.push_back(read_candidate(in, h, p.form));
      }
      lex.pending_.push_back(std::move(p));
    } else {
      throw SyntaxError("unknown statement '" + keyword + "'", line);
    }
  }
  return lex;
}

Lexicon Lexicon::load_store(const std::string& path, const TypeHierarchy& h) {
  std::string text = detail::read_file(path);
  try {
    return parse_store(text, h);
  } catch (const SyntaxError& e) {
    throw SyntaxError(path + ": " + e.what(), 0);
  }
}

std::string Lexicon::store_text(const TypeHierarchy& h) const {
  std::string out = "version " + std::to_string(version_) + " .\n";
  for (const auto& [form, entry] : entries_) out += render_entry(entry, h) + "\n";
  for (const auto& p : pending_) {
    out += "pending " + detail::quote(p.form) + " solution " + std::to_string(p.solution) + " sentence " +
           detail::quote(p.sentence) + " {\n";
    for (const auto& c : p.candidates) {
      out += "  candidate " + c.clause + " " + std::string(to_string(c.kind)) + " disjunct " +
             std::to_string(c.disjunct) + " path " + c.path.str() + " old " + h.display(c.old_value) + " new " +
             h.display(c.new_value) + " .\n";
    }
    out += "}\n";
  }
  return out;
}

void Lexicon::save_store(const std::string& path, const TypeHierarchy& h) const {
  const std::string tmp = path + ".tmp";
  detail::write_file(tmp, store_text(h));
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot replace " + path);
  }
}

const LexicalEntry* Lexicon::find(std::string_view form) const {
  auto it = entries_.find(form);
  return it == entries_.end() ? nullptr : &it->second;
}

LexicalEntry Lexicon::retract(std::string_view form) {
  auto it = entries_.find(form);
  if (it == entries_.end()) throw Error("cannot retract \"" + std::string(form) + "\": not in lexicon");
  LexicalEntry out = std::move(it->second);
  entries_.erase(it);
  return out;
}

void Lexicon::assert_entry(LexicalEntry entry) {
  if (entry.disjuncts.empty()) throw Error("entry \"" + entry.form + "\" has no disjuncts");
  std::string form = entry.form;
  entries_.insert_or_assign(std::move(form), std::move(entry));
}

std::vector<PendingHypothesis> Lexicon::pending_for(std::string_view form) const {
  std::vector<PendingHypothesis> out;
  for (const auto& p : pending_)
    if (p.form == form) out.push_back(p);
  return out;
}

namespace {

// Disjunct indices are left out: an unseen form's generic index and its
// index after acquisition differ for the same hypothesis.
bool same_hypothesis(const PendingHypothesis& a, const PendingHypothesis& b) {
  if (a.form != b.form || a.candidates.size() != b.candidates.size()) return false;
  for (std::size_t i = 0; i < a.candidates.size(); ++i) {
    const auto& x = a.candidates[i];
    const auto& y = b.candidates[i];
    if (x.clause != y.clause || x.kind != y.kind || x.path != y.path || x.old_value != y.old_value ||
        x.new_value != y.new_value)
      return false;
  }
  return true;
}

}  // namespace

bool Lexicon::add_pending(PendingHypothesis hypothesis) {
  for (const auto& p : pending_)
    if (same_hypothesis(p, hypothesis)) return false;
  pending_.push_back(std::move(hypothesis));
  return true;
}

// ---------------------------------------------------------------------------
// diff

namespace {

class Differ {
 public:
  Differ(const FeatureStructure& a, const FeatureStructure& b, const TypeHierarchy& h) : a_(a), b_(b), h_(h) {}

  std::vector<std::string> run(const std::string& prefix) {
    walk(prefix, a_.root(), b_.root());
    return std::move(lines_);
  }

 private:
  std::string show_type(LeafSet t) const {
    return h_.display(t, true);
  }

  void change(const std::string& path, const std::string& before, const std::string& after) {
    lines_.push_back((path.empty() ? std::string("(root)") : path) + ": " + before + " → " + after);
  }

  bool is_cons(const FeatureStructure& fs, NodeId id) const {
    return fs.arc(id, "first") && fs.arc(id, "rest");
  }

  void walk(const std::string& path, NodeId x, NodeId y) {
    x = a_.deref(x);
    y = b_.deref(y);
    if (!seen_.insert({x, y}).second) return;

    if (is_cons(a_, x) || is_cons(b_, y)) {
      list(path, x, y);
      return;
    }
    const auto& atom_x = a_.atom(x);
    const auto& atom_y = b_.atom(y);
    if (atom_x || atom_y) {
      if (atom_x != atom_y) change(path, sub(a_, x), sub(b_, y));
      return;
    }
    if (a_.type(x) != b_.type(y)) {
      std::string before = show_type(a_.type(x)), after = show_type(b_.type(y));
      if (before == after) {
        before = h_.display(a_.type(x));
        after = h_.display(b_.type(y));
      }
      change(path, before, after);
    }
    for (const auto& arc : a_.arcs(x)) {
      auto other = b_.arc(y, arc.feature);
      std::string p = join(path, arc.feature);
      if (other)
        walk(p, arc.target, *other);
      else
        change(p, sub(a_, arc.target), "(none)");
    }
    for (const auto& arc : b_.arcs(y))
      if (!a_.arc(x, arc.feature)) change(join(path, arc.feature), "(none)", sub(b_, arc.target));
  }

  void list(const std::string& path, NodeId x, NodeId y) {
    ListView lx = list_elements(a_, x), ly = list_elements(b_, y);
    const std::size_t n = std::max(lx.elements.size(), ly.elements.size());
    for (std::size_t i = 0; i < n; ++i) {
      std::string p = path + "[" + std::to_string(i) + "]";
      if (i < lx.elements.size() && i < ly.elements.size())
        walk(p, lx.elements[i], ly.elements[i]);
      else if (i < lx.elements.size())
        change(p, sub(a_, lx.elements[i]), "(none)");
      else
        change(p, "(none)", sub(b_, ly.elements[i]));
    }
    if (lx.elements.size() == ly.elements.size()) {
      walk(path + "[tail]", lx.tail, ly.tail);
    } else {
      LeafSet tx = a_.type(lx.tail), ty = b_.type(ly.tail);
      if (tx != ty) change(path + "[tail]", show_type(tx), show_type(ty));
    }
  }

  std::string sub(const FeatureStructure& fs, NodeId id) const { return render_fs(fs.subgraph(id), h_, {true}); }

  static std::string join(const std::string& path, const std::string& feature) {
    return path.empty() ? feature : path + "." + feature;
  }

  const FeatureStructure& a_;
  const FeatureStructure& b_;
  const TypeHierarchy& h_;
  std::set<std::pair<NodeId, NodeId>> seen_;
  std::vector<std::string> lines_;
};

}  // namespace

std::vector<std::string> diff_entries(const LexicalEntry* before, const LexicalEntry* after, const TypeHierarchy& h) {
  std::vector<std::string> out;
  const std::size_t nb = before ? before->disjuncts.size() : 0;
  const std::size_t na = after ? after->disjuncts.size() : 0;
  const bool several = std::max(nb, na) > 1;
  for (std::size_t i = 0; i < std::max(nb, na); ++i) {
    std::string prefix = several ? "<" + std::to_string(i) + ">" : "";
    if (i < nb && i < na) {
      auto lines = Differ(before->disjuncts[i], after->disjuncts[i], h).run("");
      for (auto& line : lines) out.push_back(several ? prefix + " " + line : line);
    } else {
      std::string label = several ? prefix : std::string("(entry)");
      std::string b = i < nb ? render_fs(before->disjuncts[i], h, {true}) : "(none)";
      std::string a = i < na ? render_fs(after->disjuncts[i], h, {true}) : "(none)";
      out.push_back(label + ": " + b + " → " + a);
    }
  }
  if (before && after && before->origin != after->origin)
    out.push_back(std::string("origin: ") + (before->origin == Origin::Known ? "known" : "acquired") + " → " +
                  (after->origin == Origin::Known ? "known" : "acquired"));
  return out;
}

}  // namespace lexlearn
