#include "lexlearn/grammar.hpp"

#include <algorithm>
#include <set>

#include "avm_reader.hpp"
#include "entry_reader.hpp"
#include "lexlearn/error.hpp"
#include "lexlearn/lexicon.hpp"
#include "text_util.hpp"

namespace lexlearn {

std::string_view to_string(ClauseKind kind) {
  return kind == ClauseKind::Generalizable ? "generalizable" : "specializable";
}

ClauseKind clause_kind_from(std::string_view text) {
  if (text == "generalizable") return ClauseKind::Generalizable;
  if (text == "specializable") return ClauseKind::Specializable;
  throw Error("unknown clause kind '" + std::string(text) + "'");
}

LeafSet ValenceMapping::type_of(std::span<const LeafSet> cases, const TypeHierarchy& h) const {
  const ValenceRule* hit = nullptr;
  for (const auto& rule : rules_) {
    if (rule.cases.size() != cases.size()) continue;
    bool fits = true;
    for (std::size_t i = 0; i < cases.size() && fits; ++i)
      fits = !cases[i].empty() && rule.cases[i].includes(cases[i]);
    if (!fits) continue;
    if (hit) throw GrammarGap("argument frame matches both " + hit->type_name + " and " + rule.type_name);
    hit = &rule;
  }
  if (!hit) {
    std::string frame;
    for (LeafSet c : cases) frame += (frame.empty() ? "" : ", ") + h.display(c);
    throw GrammarGap("no valence type for argument frame <" + frame + ">");
  }
  return hit->type;
}

namespace {

FeaturePath read_assigned_path(detail::TextCursor& in, std::string_view key) {
  std::size_t at = in.position();
  std::string got = in.identifier("slot name");
  if (got != key) {
    in.set_position(at);
    in.skip_space();
    in.fail("expected '" + std::string(key) + "='");
  }
  if (in.peek_raw() != '=') in.fail("expected '='");
  in.advance(1);
  return detail::read_path(in);
}

RevisabilityClause read_clause(detail::TextCursor& in, const TypeHierarchy& h) {
  const std::size_t line = in.line();
  RevisabilityClause clause;
  clause.name = in.identifier("clause name");
  std::size_t kind_at = in.position();
  std::string kind = in.identifier("clause kind");
  if (kind != "generalizable" && kind != "specializable") {
    in.set_position(kind_at);
    in.skip_space();
    in.fail("clause kind must be generalizable or specializable");
  }
  clause.kind = clause_kind_from(kind);
  if (in.identifier("'anchor'") != "anchor") in.fail("expected 'anchor'");
  clause.anchor = detail::read_avm(in, h);

  std::size_t at = in.position();
  if (in.peek() == 's' && in.identifier() == "scope") {
    if (in.identifier("'each'") != "each") in.fail("expected 'each'");
    clause.scope = detail::read_path(in);
  } else {
    in.set_position(at);
  }

  if (clause.kind == ClauseKind::Generalizable) {
    clause.gen_path = read_assigned_path(in, "gen");
    clause.ctxt_path = read_assigned_path(in, "ctxt");
  } else {
    clause.spec_path = read_assigned_path(in, "spec");
  }
  in.expect(".");

  auto fail = [&](const std::string& msg) { throw SyntaxError("clause " + clause.name + ": " + msg, line); };

  if (clause.scope) {
    auto elem = resolve_path(clause.anchor, clause.scope->with_index(0));
    if (!elem) fail("anchor has no list element at '" + clause.scope->str() + "'");
    clause.element_pattern = clause.anchor.subgraph(*elem);
    auto parent = resolve_path(clause.anchor, clause.scope->parent());
    clause.anchor.remove_arc(*parent, clause.scope->steps().back().feature);
    clause.anchor.normalize();
  }

  const auto& pattern = clause.slot_pattern();
  auto check_path = [&](const FeaturePath& p) {
    if (!resolve_path(pattern, p)) fail("path '" + p.str() + "' does not resolve in the anchor");
  };
  if (clause.kind == ClauseKind::Generalizable) {
    check_path(clause.gen_path);
    check_path(clause.ctxt_path);
    auto u_g = h.u_g();
    if (!u_g || !pattern.type(*resolve_path(pattern, clause.gen_path)).includes(*u_g))
      fail("gen slot type must contain u_g");
  } else {
    check_path(clause.spec_path);
  }
  return clause;
}

ValenceRule read_valence(detail::TextCursor& in, const TypeHierarchy& h) {
  ValenceRule rule;
  std::size_t at = in.position();
  rule.type_name = in.identifier("valence type");
  auto type = h.find(rule.type_name);
  if (!type) {
    in.set_position(at);
    in.skip_space();
    in.fail("unknown type '" + rule.type_name + "'");
  }
  rule.type = *type;
  in.expect(":=");
  while (!in.consume(".")) {
    if (in.at_end()) in.fail("expected '.'");
    rule.cases.push_back(detail::read_type_expression(in, h));
  }
  if (rule.cases.empty()) in.fail("valence rule needs at least one argument");
  return rule;
}

}  // namespace

Grammar::Grammar(TypeHierarchy types, std::string_view clause_text) : types_(std::move(types)) {
  detail::TextCursor in(clause_text);
  std::set<std::string> names;
  while (!in.at_end()) {
    const std::size_t line = in.line();
    std::string keyword = in.identifier("declaration");
    if (keyword == "clause") {
      auto clause = read_clause(in, types_);
      if (!names.insert(clause.name).second) throw SyntaxError("duplicate clause '" + clause.name + "'", line);
      clauses_.push_back(std::move(clause));
    } else if (keyword == "valence") {
      valence_.add(read_valence(in, types_));
    } else if (keyword == "generic") {
      std::string name = in.identifier("generic entry name");
      in.expect(":=");
      FeatureStructure fs = detail::read_avm(in, types_);
      in.expect(".");
      if (fs.arc(fs.root(), "phon")) throw SyntaxError("generic " + name + ": phon is filled in per word", line);
      generics_.emplace_back(std::move(name), std::move(fs));
    } else {
      throw SyntaxError("unknown declaration '" + keyword + "'", line);
    }
  }
  if (generics_.empty()) throw Error("grammar declares no generic entries");
}

Grammar Grammar::load(const std::string& types_path, const std::string& clauses_path) {
  TypeHierarchy types = TypeHierarchy::load(types_path);
  std::string text = detail::read_file(clauses_path);
  try {
    return Grammar(std::move(types), text);
  } catch (const SyntaxError& e) {
    throw SyntaxError(clauses_path + ": " + e.what(), 0);
  }
}

const RevisabilityClause* Grammar::find_clause(std::string_view name) const {
  for (const auto& c : clauses_)
    if (c.name == name) return &c;
  return nullptr;
}

Grammar Grammar::with_generic_templates(std::vector<std::pair<std::string, FeatureStructure>> generics) const {
  Grammar out = *this;
  out.generics_ = std::move(generics);
  return out;
}

LexicalEntry generic_unknown_entry(const Grammar& grammar, std::string_view form) {
  LexicalEntry entry;
  entry.form = std::string(form);
  entry.origin = Origin::Acquired;
  const auto& h = grammar.types();
  for (const auto& [name, tmpl] : grammar.generic_templates()) {
    FeatureStructure phon(h.top());
    phon.set_arc(phon.root(), "phon", phon.add_atom(entry.form, h.top()));
    auto fs = unify_fs(phon, tmpl);
    if (!fs) throw Error("generic entry " + name + " rejects a phon feature");
    entry.disjuncts.push_back(std::move(*fs));
  }
  return entry;
}

std::vector<FeatureStructure> lookup(const Lexicon& lexicon, const Grammar& grammar, std::string_view form) {
  if (const auto* entry = lexicon.find(form)) return entry->disjuncts;
  return generic_unknown_entry(grammar, form).disjuncts;
}

namespace detail {

LexicalEntry read_entry(TextCursor& in, const TypeHierarchy& h) {
  LexicalEntry entry;
  entry.form = in.quoted();
  if (entry.form.empty()) in.fail("empty form");
  if (in.peek() == 'o') {
    if (in.identifier() != "origin") in.fail("expected 'origin' or ':='");
    std::string origin = in.identifier("origin");
    if (origin == "acquired")
      entry.origin = Origin::Acquired;
    else if (origin != "known")
      in.fail("origin must be known or acquired");
  }
  in.expect(":=");
  do {
    const std::size_t line = in.line();
    FeatureStructure fs = read_avm(in, h);
    auto phon = fs.arc(fs.root(), "phon");
    if (!phon || fs.atom(*phon) != entry.form)
      throw SyntaxError("entry \"" + entry.form + "\": disjunct lacks phon \"" + entry.form + "\"", line);
    entry.disjuncts.push_back(std::move(fs));
  } while (in.consume("|"));
  in.expect(".");
  return entry;
}

}  // namespace detail

std::vector<LexicalEntry> parse_lexicon_entries(std::string_view text, const TypeHierarchy& h) {
  detail::TextCursor in(text);
  std::vector<LexicalEntry> out;
  std::set<std::string, std::less<>> seen;
  while (!in.at_end()) {
    const std::size_t line = in.line();
    if (in.identifier("'entry'") != "entry") throw SyntaxError("expected 'entry'", line);
    LexicalEntry entry = detail::read_entry(in, h);
    if (!seen.insert(entry.form).second) throw SyntaxError("duplicate entry \"" + entry.form + "\"", line);
    out.push_back(std::move(entry));
  }
  return out;
}

std::string render_entry(const LexicalEntry& entry, const TypeHierarchy& h) {
  std::string out = "entry " + detail::quote(entry.form);
  if (entry.origin == Origin::Acquired) out += " origin acquired";
  out += " :=";
  if (entry.disjuncts.size() == 1) return out + " " + render_fs(entry.disjuncts.front(), h) + " .";
  for (std::size_t i = 0; i < entry.disjuncts.size(); ++i)
    out += std::string(i == 0 ? "\n    " : "\n  | ") + render_fs(entry.disjuncts[i], h);
  return out + " .";
}

}  // namespace lexlearn
