#include "lexlearn/revision.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "lexlearn/error.hpp"

namespace lexlearn {

namespace {

LeafSet strip_u_s(LeafSet t, const TypeHierarchy& h) { return h.u_s() ? t.minus(*h.u_s()) : t; }

FeaturePath prefix_of(const FeaturePath& path, std::size_t drop) {
  const auto& steps = path.steps();
  return FeaturePath(std::vector<PathStep>(steps.begin(), steps.end() - static_cast<std::ptrdiff_t>(drop)));
}

LeafSet pattern_type(const RevisabilityClause& clause, const FeaturePath& rel) {
  const auto& pattern = clause.slot_pattern();
  return pattern.type(*resolve_path(pattern, rel));
}

bool same_slot(const UpdateCandidate& a, const UpdateCandidate& b) {
  return a.form == b.form && a.disjunct == b.disjunct && a.path == b.path && a.clause == b.clause;
}

}  // namespace

std::vector<ClauseMatch> match_revisability(const FeatureStructure& word, const Grammar& grammar) {
  std::vector<ClauseMatch> out;
  for (const auto& clause : grammar.clauses()) {
    auto anchored = unify_fs(word, clause.anchor);
    if (!anchored) continue;
    if (!clause.scope) {
      out.push_back(ClauseMatch{&clause, std::nullopt, std::move(*anchored)});
      continue;
    }
    auto list = resolve_path(word, *clause.scope);
    if (!list) continue;
    auto elements = list_elements(word, *list).elements;
    for (std::size_t i = 0; i < elements.size(); ++i) {
      auto unified = unify_fs(word.subgraph(elements[i]), *clause.element_pattern);
      if (unified) out.push_back(ClauseMatch{&clause, i, std::move(*unified)});
    }
  }
  return out;
}

std::vector<UpdateCandidate> compute_updates(const ParseResult& parse, std::size_t solution, const Grammar& grammar) {
  const TypeHierarchy& h = grammar.types();
  const ParseSolution& sol = parse.solutions.at(solution);
  std::vector<UpdateCandidate> out;

  auto add = [&](UpdateCandidate c) {
    for (auto& existing : out) {
      if (!same_slot(existing, c)) continue;
      if (c.kind == ClauseKind::Generalizable) {
        existing.new_value |= c.new_value;
      } else {
        LeafSet narrowed = strip_u_s(existing.new_value, h) & strip_u_s(c.new_value, h);
        existing.new_value = narrowed | (c.new_value & *h.u_s());
      }
      return;
    }
    out.push_back(std::move(c));
  };

  for (std::size_t i = 0; i < parse.tokens.size(); ++i) {
    const std::size_t d = sol.disjuncts[i];
    const FeatureStructure& lexical = parse.lexical[i][d];
    const FeatureStructure word = sol.projection(i);
    for (auto& m : match_revisability(word, grammar)) {
      const RevisabilityClause& clause = *m.clause;
      const FeaturePath prefix = clause.scope ? clause.scope->with_index(*m.element) : FeaturePath{};
      UpdateCandidate c;
      c.form = parse.tokens[i].form;
      c.disjunct = d;
      c.clause = clause.name;
      c.kind = clause.kind;
      c.path = prefix + clause.target_path();

      if (clause.kind == ClauseKind::Generalizable) {
        LeafSet ctxt = m.unified.type(*resolve_path(m.unified, clause.ctxt_path));
        auto lex_gen = resolve_path(lexical, c.path);
        c.old_value = lex_gen ? lexical.type(*lex_gen) : pattern_type(clause, clause.gen_path);
        c.new_value = c.old_value | ctxt;
      } else {
        auto lex_spec = resolve_path(lexical, c.path);
        if (!lex_spec || !h.u_s() || !lexical.type(*lex_spec).includes(*h.u_s())) continue;
        LeafSet parsed = m.unified.type(*resolve_path(m.unified, clause.spec_path));
        c.old_value = lexical.type(*lex_spec);
        c.new_value = strip_u_s(parsed, h) | *h.u_s();
      }
      add(std::move(c));
    }
  }
  return out;
}

bool informative(const UpdateCandidate& c, const TypeHierarchy& h) {
  if (c.kind == ClauseKind::Generalizable) return strictly_subsumes(c.new_value, c.old_value);
  LeafSet n = strip_u_s(c.new_value, h), o = strip_u_s(c.old_value, h);
  return !n.empty() && strictly_subsumes(o, n);
}

Reconciled reconcile_solutions(const std::vector<std::vector<UpdateCandidate>>& per_solution,
                               std::string_view sentence) {
  Reconciled out;
  if (per_solution.empty()) return out;
  auto in_all = [&](const UpdateCandidate& c) {
    return std::all_of(per_solution.begin(), per_solution.end(), [&](const auto& cands) {
      return std::find(cands.begin(), cands.end(), c) != cands.end();
    });
  };
  for (const auto& c : per_solution.front())
    if (in_all(c) && std::find(out.agreed.begin(), out.agreed.end(), c) == out.agreed.end()) out.agreed.push_back(c);

  for (std::size_t s = 0; s < per_solution.size(); ++s) {
    std::vector<PendingHypothesis> by_form;
    for (const auto& c : per_solution[s]) {
      if (std::find(out.agreed.begin(), out.agreed.end(), c) != out.agreed.end()) continue;
      auto it = std::find_if(by_form.begin(), by_form.end(), [&](const auto& p) { return p.form == c.form; });
      if (it == by_form.end()) {
        by_form.push_back(PendingHypothesis{c.form, std::string(sentence), s, {}});
        it = by_form.end() - 1;
      }
      it->candidates.push_back(c);
    }
    for (auto& p : by_form) out.pending.push_back(std::move(p));
  }
  return out;
}

ApplyOutcome apply_updates(Lexicon& lexicon, const Grammar& grammar, const std::vector<UpdateCandidate>& agreed) {
  const TypeHierarchy& h = grammar.types();
  ApplyOutcome outcome;

  std::vector<std::string> forms;
  for (const auto& c : agreed)
    if (std::find(forms.begin(), forms.end(), c.form) == forms.end()) forms.push_back(c.form);

  for (const auto& form : forms) {
    std::vector<UpdateCandidate> mine;
    for (const auto& c : agreed)
      if (c.form == form) mine.push_back(c);

    const LexicalEntry* existing = lexicon.find(form);
    LexicalEntry entry;
    std::map<std::size_t, std::size_t> index;
    if (existing) {
      entry = *existing;
      for (std::size_t i = 0; i < entry.disjuncts.size(); ++i) index[i] = i;
    } else {
      LexicalEntry generic = generic_unknown_entry(grammar, form);
      entry.form = generic.form;
      entry.origin = Origin::Acquired;
      std::set<std::size_t> used;
      for (const auto& c : mine) used.insert(c.disjunct);
      for (std::size_t d : used) {
        if (d >= generic.disjuncts.size()) continue;
        index[d] = entry.disjuncts.size();
        entry.disjuncts.push_back(generic.disjuncts[d]);
      }
    }

    std::optional<UpdateFailure> failure;
    for (const auto& c : mine) {
      try {
        auto slot = index.find(c.disjunct);
        if (slot == index.end()) throw Error("no disjunct " + std::to_string(c.disjunct));
        const RevisabilityClause* clause = grammar.find_clause(c.clause);
        if (!clause) throw Error("unknown clause '" + c.clause + "'");
        const FeaturePath& target = clause->target_path();
        if (c.path.size() < target.size()) throw Error("path '" + c.path.str() + "' does not fit the clause");
        const FeaturePath prefix = prefix_of(c.path, target.size());
        if (prefix + target != c.path) throw Error("path '" + c.path.str() + "' does not fit the clause");
        if (c.new_value.empty()) throw Error("empty update value");

        FeatureStructure& fs = entry.disjuncts[slot->second];
        const LeafSet fallback = pattern_type(*clause, target);
        const bool present = resolve_path(fs, c.path).has_value();
        NodeId node = extend_path(fs, h, c.path, fallback);
        if (fs.type(node) != c.old_value)
          throw Error("stale candidate: slot holds " + h.display(fs.type(node)) + ", expected " +
                      h.display(c.old_value));
        if (!present && c.kind == ClauseKind::Generalizable)
          extend_path(fs, h, prefix + clause->ctxt_path, pattern_type(*clause, clause->ctxt_path));
        fs.set_type(node, c.new_value);
      } catch (const Error& e) {
        failure = UpdateFailure{c, e.what()};
        break;
      }
    }
    if (failure) {
      for (const auto& c : mine) outcome.failures.push_back(UpdateFailure{c, failure->message});
      continue;
    }

    EntryChange change;
    change.form = form;
    change.diff = diff_entries(existing, &entry, h);
    if (existing)
      for (const auto& d : existing->disjuncts) change.before.push_back(render_fs(d, h, {true}));
    for (const auto& d : entry.disjuncts) change.after.push_back(render_fs(d, h, {true}));
    lexicon.assert_entry(std::move(entry));
    outcome.applied.insert(outcome.applied.end(), mine.begin(), mine.end());
    outcome.changes.push_back(std::move(change));
  }
  return outcome;
}

UpdateReport process_sentence(Lexicon& lexicon, const Grammar& grammar, std::string_view sentence) {
  const TypeHierarchy& h = grammar.types();
  UpdateReport report;
  report.sentence = std::string(sentence);
  ParseResult parse = Parser(grammar).parse(sentence, lexicon);
  report.solutions = parse.solutions.size();
  report.grammatical = parse.grammatical();
  report.version = lexicon.version();
  if (!report.grammatical) return report;

  std::vector<std::vector<UpdateCandidate>> informative_sets;
  for (std::size_t s = 0; s < parse.solutions.size(); ++s) {
    std::vector<UpdateCandidate> keep;
    for (auto& c : compute_updates(parse, s, grammar)) {
      if (informative(c, h))
        keep.push_back(std::move(c));
      else if (std::find(report.rejected.begin(), report.rejected.end(), c) == report.rejected.end())
        report.rejected.push_back(std::move(c));
    }
    informative_sets.push_back(std::move(keep));
  }

  Reconciled rec = reconcile_solutions(informative_sets, sentence);
  ApplyOutcome outcome = apply_updates(lexicon, grammar, rec.agreed);
  bool changed = !outcome.applied.empty();
  for (const auto& p : rec.pending) changed = lexicon.add_pending(p) || changed;
  if (changed) lexicon.bump_version();

  report.applied = std::move(outcome.applied);
  report.failures = std::move(outcome.failures);
  report.changes = std::move(outcome.changes);
  report.pending = std::move(rec.pending);
  report.version = lexicon.version();
  return report;
}

namespace {

std::string candidate_line(const UpdateCandidate& c, const TypeHierarchy& h) {
  return c.form + " <" + std::to_string(c.disjunct) + "> " + c.clause + " " + c.path.str() + ": " +
         h.display(c.old_value, true) + " → " + h.display(c.new_value, true);
}

}  // namespace

std::string format_report(const UpdateReport& r, const TypeHierarchy& h) {
  std::string out = "sentence: " + r.sentence + "\n";
  if (!r.grammatical) return out + "no parse\n";
  out += "solutions: " + std::to_string(r.solutions) + "\n";
  auto section = [&](const char* title, const std::vector<UpdateCandidate>& cands) {
    if (cands.empty()) return;
    out += std::string(title) + ":\n";
    for (const auto& c : cands) out += "  " + candidate_line(c, h) + "\n";
  };
  section("applied", r.applied);
  section("rejected", r.rejected);
  if (!r.pending.empty()) {
    out += "pending:\n";
    for (const auto& p : r.pending) {
      out += "  solution " + std::to_string(p.solution) + ":\n";
      for (const auto& c : p.candidates) out += "    " + candidate_line(c, h) + "\n";
    }
  }
  if (!r.failures.empty()) {
    out += "failed:\n";
    for (const auto& f : r.failures) out += "  " + candidate_line(f.candidate, h) + " (" + f.message + ")\n";
  }
  for (const auto& change : r.changes) {
    out += "changed " + change.form + ":\n";
    for (const auto& line : change.diff) out += "  " + line + "\n";
  }
  out += "version: " + std::to_string(r.version) + "\n";
  return out;
}

}  // namespace lexlearn
