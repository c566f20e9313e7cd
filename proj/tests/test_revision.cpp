#include <doctest.h>

#include "lexlearn/error.hpp"
#include "lexlearn/revision.hpp"

using namespace lexlearn;

namespace {

const std::string kData = LEXLEARN_DATA_DIR;

const Grammar& grammar() {
  static const Grammar g = Grammar::load(kData + "/demo.types", kData + "/demo.clauses");
  return g;
}

const TypeHierarchy& types() { return grammar().types(); }

Lexicon fresh_lexicon() { return Lexicon::load_source(kData + "/demo.lex", types()); }

LeafSet T(const char* expr) { return types().parse_expression(expr); }

LeafSet type_at(const FeatureStructure& fs, const char* path) {
  auto node = resolve_path(fs, FeaturePath::parse(path));
  REQUIRE(node);
  return fs.type(*node);
}

const FeatureStructure& only_disjunct(const Lexicon& lex, const char* form) {
  const auto* e = lex.find(form);
  REQUIRE(e);
  REQUIRE(e->disjuncts.size() == 1);
  return e->disjuncts.front();
}

std::string show(const Lexicon& lex, const char* form) {
  return render_fs(only_disjunct(lex, form), types(), {true});
}

LeafSet strip(LeafSet t) { return t.minus(*types().u_s()); }

const char* const kFirst = "Die Nase ist ein Sinnesorgan.";
const char* const kSecond = "Das Ohr perzipiert.";
const char* const kThird = "Eine verschnupfte Nase perzipiert den Gestank.";
const char* const kAmbiguous = "Das Aktionspotential erreicht den Dendriten.";

const UpdateCandidate* find(const std::vector<UpdateCandidate>& cands, const char* form, const char* path) {
  for (const auto& c : cands)
    if (c.form == form && c.path.str() == path) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("clause matching") {
  Lexicon lex = fresh_lexicon();
  auto r = Parser(grammar()).parse(kFirst, lex);
  REQUIRE(r.solutions.size() == 1);
  auto nase = match_revisability(r.solutions[0].projection(1), grammar());
  std::vector<std::string> names;
  for (const auto& m : nase) names.push_back(m.clause->name);
  CHECK(names == std::vector<std::string>{"gender-spec", "nounsem-spec"});
  CHECK(match_revisability(r.solutions[0].projection(0), grammar()).empty());  // determiner

  process_sentence(lex, grammar(), kFirst);
  process_sentence(lex, grammar(), kSecond);
  auto third = Parser(grammar()).parse(kThird, lex);
  REQUIRE(third.solutions.size() == 1);
  std::size_t selres = 0;
  for (const auto& m : match_revisability(third.solutions[0].projection(3), grammar()))
    if (m.clause->name == "selres-gen") ++selres;
  CHECK(selres == 2);
}

TEST_CASE("update values") {
  Lexicon lex = fresh_lexicon();
  auto first = Parser(grammar()).parse(kFirst, lex);
  auto cands1 = compute_updates(first, 0, grammar());
  const auto* gend = find(cands1, "Nase", "cont.ind.gend");
  REQUIRE(gend);
  CHECK(gend->kind == ClauseKind::Specializable);
  CHECK(gend->old_value == (T("gender") | *types().u_s()));
  CHECK(gend->new_value == (T("fem") | *types().u_s()));
  CHECK(informative(*gend, types()));
  process_sentence(lex, grammar(), kFirst);

  auto second = Parser(grammar()).parse(kSecond, lex);
  auto cands2 = compute_updates(second, 0, grammar());
  const auto* valence = find(cands2, "perzipiert", "arg-st.gen");
  REQUIRE(valence);
  CHECK(valence->clause == "valence-gen");
  CHECK(valence->old_value == T("u_g"));
  CHECK(valence->new_value == T("u_g∨npnom"));
  const auto* subj = find(cands2, "perzipiert", "arg-st.args[0].loc.cont.gen");
  REQUIRE(subj);
  CHECK(subj->old_value == T("u_g"));  // slot absent in the generic entry
  CHECK(subj->new_value == T("u_g∨ear"));
  process_sentence(lex, grammar(), kSecond);

  auto third = Parser(grammar()).parse(kThird, lex);
  auto cands3 = compute_updates(third, 0, grammar());
  const auto* arg0 = find(cands3, "perzipiert", "arg-st.args[0].loc.cont.gen");
  REQUIRE(arg0);
  CHECK(arg0->old_value == T("u_g∨ear"));
  CHECK(arg0->new_value == T("u_g∨sense_organ"));
  const auto* ctxt = find(cands3, "Nase", "cont.ctxt");
  REQUIRE(ctxt);
  CHECK(strip(ctxt->old_value) == T("sense_organ"));
  CHECK(strip(ctxt->new_value) == T("nose"));
  CHECK(informative(*ctxt, types()));
}

TEST_CASE("informativeness") {
  UpdateCandidate spec{"Nase", 0, "nounsem-spec", ClauseKind::Specializable, FeaturePath::parse("cont.ctxt"),
                       T("u_s∨nose"), T("u_s∨sense_organ")};
  CHECK_FALSE(informative(spec, types()));
  spec.old_value = T("u_s∨sense_organ");
  spec.new_value = T("u_s∨nose");
  CHECK(informative(spec, types()));
  spec.new_value = T("u_s∨sense_organ");
  CHECK_FALSE(informative(spec, types()));
  spec.new_value = T("sense_organ");  // the marker is ignored
  CHECK_FALSE(informative(spec, types()));

  UpdateCandidate gen{"x", 0, "valence-gen", ClauseKind::Generalizable, FeaturePath::parse("arg-st.gen"),
                      T("u_g∨npnom"), T("u_g∨npnom")};
  CHECK_FALSE(informative(gen, types()));
  gen.new_value = T("u_g∨npnom∨npnom_npacc");
  CHECK(informative(gen, types()));
}

TEST_CASE("known information is never specialized") {
  Lexicon lex = fresh_lexicon();
  // Ohr is listed with gender and semantics: no specializable candidates.
  auto r = Parser(grammar()).parse("Das Ohr ist ein Sinnesorgan.", lex);
  REQUIRE(r.grammatical());
  for (const auto& c : compute_updates(r, 0, grammar())) CHECK(c.kind == ClauseKind::Generalizable);
}

TEST_CASE("worked example, sentence by sentence") {
  Lexicon lex = fresh_lexicon();

  auto first = process_sentence(lex, grammar(), kFirst);
  CHECK(first.grammatical);
  CHECK(first.applied.size() == 2);
  CHECK(show(lex, "Nase") == "[phon: \"Nase\", head: noun, cont: [ind.gend: fem, gen: u_g, ctxt: sense_organ]]");
  CHECK(lex.find("Nase")->origin == Origin::Acquired);
  CHECK_FALSE(lex.contains("perzipiert"));
  CHECK(lex.version() == 1);

  auto second = process_sentence(lex, grammar(), kSecond);
  CHECK(second.applied.size() == 2);
  CHECK(show(lex, "perzipiert") ==
        "[phon: \"perzipiert\", head: verb, arg-st: [gen: u_g∨npnom, ctxt: arg_struc, "
        "args: <[loc.cont: [gen: u_g∨ear, ctxt: nom_sem]] | _>]]");
  CHECK(show(lex, "Nase") == "[phon: \"Nase\", head: noun, cont: [ind.gend: fem, gen: u_g, ctxt: sense_organ]]");

  auto third = process_sentence(lex, grammar(), kThird);
  CHECK(show(lex, "Nase") == "[phon: \"Nase\", head: noun, cont: [ind.gend: fem, gen: u_g, ctxt: nose]]");
  CHECK(show(lex, "perzipiert") ==
        "[phon: \"perzipiert\", head: verb, arg-st: [gen: u_g∨npnom∨npnom_npacc, ctxt: arg_struc, "
        "args: <[loc.cont: [gen: u_g∨sense_organ, ctxt: nom_sem]], [loc.cont: [gen: u_g∨smell, ctxt: nom_sem]] | _>]]");
  // The stored values keep u_s on the specializable slots.
  CHECK(type_at(only_disjunct(lex, "Nase"), "cont.ctxt") == T("u_s∨nose"));
  CHECK(type_at(only_disjunct(lex, "Nase"), "cont.ind.gend") == T("u_s∨fem"));
  CHECK(lex.version() == 3);

  bool nase_diff = false;
  for (const auto& change : third.changes) {
    if (change.form == "Nase") {
      CHECK(change.diff == std::vector<std::string>{"cont.ctxt: sense_organ → nose"});
      nase_diff = true;
    }
    if (change.form == "perzipiert") CHECK(change.diff.size() == 3);
  }
  CHECK(nase_diff);

  auto again = process_sentence(lex, grammar(), kThird);
  CHECK(again.applied.empty());
  CHECK(lex.version() == 3);
}

TEST_CASE("ungrammatical input changes nothing") {
  Lexicon lex = fresh_lexicon();
  process_sentence(lex, grammar(), kFirst);
  std::string before = lex.store_text(types());
  for (const char* s : {"Der sensible Geruch perzipiert.", "Die Nase ist ehemalige."}) {
    auto r = process_sentence(lex, grammar(), s);
    CHECK_FALSE(r.grammatical);
    CHECK(r.solutions == 0);
    CHECK(r.applied.empty());
    CHECK(format_report(r, types()).find("no parse") != std::string::npos);
  }
  CHECK(lex.store_text(types()) == before);
}

TEST_CASE("ambiguous parse: valence hypotheses stay pending") {
  Lexicon lex = fresh_lexicon();
  auto r = process_sentence(lex, grammar(), kAmbiguous);
  CHECK(r.solutions == 2);
  CHECK_FALSE(find(r.applied, "erreicht", "arg-st.gen"));
  CHECK(find(r.applied, "erreicht", "arg-st.args[0].loc.cont.gen"));
  CHECK(find(r.applied, "erreicht", "arg-st.args[1].loc.cont.gen"));
  REQUIRE(r.pending.size() == 2);
  std::vector<LeafSet> hyps;
  for (const auto& p : r.pending) {
    CHECK(p.form == "erreicht");
    REQUIRE(p.candidates.size() == 1);
    CHECK(p.candidates[0].clause == "valence-gen");
    hyps.push_back(p.candidates[0].new_value);
  }
  CHECK(hyps == std::vector<LeafSet>{T("u_g∨npnom_npacc"), T("u_g∨npnom_npdat")});
  CHECK(type_at(only_disjunct(lex, "erreicht"), "arg-st.gen") == T("u_g"));
  CHECK(lex.pending_for("erreicht").size() == 2);

  auto again = process_sentence(lex, grammar(), kAmbiguous);
  CHECK(again.applied.empty());
  CHECK(lex.pending().size() == 2);
}

TEST_CASE("reconciliation") {
  UpdateCandidate a{"x", 0, "valence-gen", ClauseKind::Generalizable, FeaturePath::parse("arg-st.gen"), T("u_g"),
                    T("u_g∨npnom")};
  UpdateCandidate b = a;
  b.new_value = T("u_g∨npnom_npacc");
  UpdateCandidate c = a;
  c.path = FeaturePath::parse("arg-st.args[0].loc.cont.gen");

  auto one = reconcile_solutions({{a, c}}, "s");
  CHECK(one.agreed.size() == 2);
  CHECK(one.pending.empty());

  auto two = reconcile_solutions({{a, c}, {c, b}}, "s");
  CHECK(two.agreed == std::vector<UpdateCandidate>{c});
  REQUIRE(two.pending.size() == 2);
  CHECK(two.pending[0].solution == 0);
  CHECK(two.pending[0].candidates == std::vector<UpdateCandidate>{a});
  CHECK(two.pending[1].candidates == std::vector<UpdateCandidate>{b});

  UpdateCandidate other_disjunct = c;
  other_disjunct.disjunct = 1;
  CHECK(reconcile_solutions({{c}, {other_disjunct}}, "s").agreed.empty());
}

TEST_CASE("apply is all-or-nothing per entry") {
  Lexicon lex = fresh_lexicon();
  process_sentence(lex, grammar(), kFirst);
  std::string before = lex.store_text(types());

  UpdateCandidate good{"Nase", 0, "nounsem-spec", ClauseKind::Specializable, FeaturePath::parse("cont.ctxt"),
                       T("u_s∨sense_organ"), T("u_s∨ear")};
  UpdateCandidate stale = good;
  stale.clause = "gender-spec";
  stale.path = FeaturePath::parse("cont.ind.gend");
  stale.old_value = T("u_s∨gender");  // the entry already says fem
  stale.new_value = T("u_s∨fem");
  auto out = apply_updates(lex, grammar(), {good, stale});
  CHECK(out.applied.empty());
  CHECK(out.failures.size() == 2);
  CHECK(out.failures[0].message.find("stale") != std::string::npos);
  CHECK(lex.store_text(types()) == before);

  auto ok = apply_updates(lex, grammar(), {good});
  CHECK(ok.applied.size() == 1);
  CHECK(type_at(only_disjunct(lex, "Nase"), "cont.ctxt") == T("u_s∨ear"));
}

TEST_CASE("first acquisition keeps only the selected generic disjunct") {
  Lexicon lex = fresh_lexicon();
  CHECK_FALSE(process_sentence(lex, grammar(), "Das Ohr ist verschnupfte.").grammatical);  // attr only
  process_sentence(lex, grammar(), "Das Ohr ist flauschig.");
  const auto* e = lex.find("flauschig");
  REQUIRE(e);
  REQUIRE(e->disjuncts.size() == 1);
  CHECK(type_at(e->disjuncts[0], "head.prd.gen") == T("u_g∨pred"));
  CHECK(type_at(e->disjuncts[0], "head.prd.ctxt") == T("prd"));
}

TEST_CASE("gen slots only grow and lexical ctxt of generalizable clauses is untouched") {
  Lexicon lex = fresh_lexicon();
  const char* script[] = {kFirst, kSecond, kThird, kAmbiguous, "Das Ohr ist flauschig.", "Eine flauschige Nase perzipiert.",
                          "Der Geruch ist flauschig.", "Ein Ohr erreicht die Nase."};
  for (const char* s : script) {
    Lexicon before = lex;
    auto r = process_sentence(lex, grammar(), s);
    for (const auto& c : r.applied) {
      CAPTURE(c.path.str());
      if (c.kind == ClauseKind::Generalizable)
        CHECK(c.new_value.includes(c.old_value));
      else
        CHECK(strip(c.old_value).includes(strip(c.new_value)));
    }
    for (const auto& [form, entry] : before.entries()) {
      const auto* now = lex.find(form);
      REQUIRE(now);
      for (std::size_t d = 0; d < entry.disjuncts.size() && d < now->disjuncts.size(); ++d) {
        for (const auto& clause : grammar().clauses()) {
          if (clause.kind != ClauseKind::Generalizable || clause.scope) continue;
          auto old_ctxt = resolve_path(entry.disjuncts[d], clause.ctxt_path);
          auto new_ctxt = resolve_path(now->disjuncts[d], clause.ctxt_path);
          if (old_ctxt && new_ctxt)
            CHECK(entry.disjuncts[d].type(*old_ctxt) == now->disjuncts[d].type(*new_ctxt));
        }
      }
    }
  }
}
