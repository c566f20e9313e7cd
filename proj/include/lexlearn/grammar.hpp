#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lexlearn/feature_structure.hpp"
#include "lexlearn/type_hierarchy.hpp"

namespace lexlearn {

class Lexicon;

enum class Origin { Known, Acquired };

/// Full-form lexical entry: a DNF-expanded list of disjunct signs.
struct LexicalEntry {
  std::string form;
  std::vector<FeatureStructure> disjuncts;
  Origin origin = Origin::Known;
};

enum class ClauseKind { Generalizable, Specializable };

std::string_view to_string(ClauseKind kind);
ClauseKind clause_kind_from(std::string_view text);

/// Declares where revisable information lives in a word's sign.
///
/// A word matches when its sign unifies with `anchor`. With a `scope`, the
/// clause applies once per element of the list at that path, and each
/// element must also unify with `element_pattern`; the slot paths are then
/// relative to the element.
struct RevisabilityClause {
  std::string name;
  ClauseKind kind = ClauseKind::Generalizable;
  FeatureStructure anchor{LeafSet{}};
  std::optional<FeaturePath> scope;
  std::optional<FeatureStructure> element_pattern;
  FeaturePath gen_path;   // generalizable only
  FeaturePath ctxt_path;  // generalizable only
  FeaturePath spec_path;  // specializable only

  /// The structure slot paths are relative to.
  const FeatureStructure& slot_pattern() const { return element_pattern ? *element_pattern : anchor; }
  /// Path of the revised slot (gen for generalizable, spec otherwise).
  const FeaturePath& target_path() const { return kind == ClauseKind::Generalizable ? gen_path : spec_path; }
};

/// Maps an instantiated argument frame (one case per element) to a valence type.
struct ValenceRule {
  std::string type_name;
  LeafSet type;
  std::vector<LeafSet> cases;
};

class ValenceMapping {
 public:
  void add(ValenceRule rule) { rules_.push_back(std::move(rule)); }
  const std::vector<ValenceRule>& rules() const { return rules_; }

  /// Throws GrammarGap when no rule, or more than one, fits the frame.
  LeafSet type_of(std::span<const LeafSet> cases, const TypeHierarchy& h) const;

 private:
  std::vector<ValenceRule> rules_;
};

/// Grammar configuration: type hierarchy, revisability clauses, valence
/// mapping and the generic entries used for unknown words. Immutable after
/// load.
///
/// Clause file syntax (`#` comments):
///
///     clause <name> generalizable anchor <AVM> [scope each <path>] gen=<path> ctxt=<path> .
///     clause <name> specializable anchor <AVM> spec=<path> .
///     valence <type> := <case> <case> ... .
///     generic <name> := <AVM> .
///
/// For a scoped clause the anchor spells the list as `<element | _>`; the
/// element is the pattern each list element must match.
class Grammar {
 public:
  Grammar(TypeHierarchy types, std::string_view clause_text);
  static Grammar load(const std::string& types_path, const std::string& clauses_path);

  const TypeHierarchy& types() const { return types_; }
  const std::vector<RevisabilityClause>& clauses() const { return clauses_; }
  const RevisabilityClause* find_clause(std::string_view name) const;
  const ValenceMapping& valence() const { return valence_; }

  /// Generic disjunct templates (without `phon`), in declaration order.
  const std::vector<std::pair<std::string, FeatureStructure>>& generic_templates() const { return generics_; }
  /// Copy of this grammar with the generic templates replaced.
  Grammar with_generic_templates(std::vector<std::pair<std::string, FeatureStructure>> generics) const;

 private:
  TypeHierarchy types_;
  std::vector<RevisabilityClause> clauses_;
  ValenceMapping valence_;
  std::vector<std::pair<std::string, FeatureStructure>> generics_;
};

/// Maximally underspecified entry for an unseen form: one disjunct per
/// generic template, each with `phon` set to `form`. Origin is Acquired.
LexicalEntry generic_unknown_entry(const Grammar& grammar, std::string_view form);

/// Disjunct copies for `form`; unknown forms get the generic disjuncts, so
/// the result is never empty.
std::vector<FeatureStructure> lookup(const Lexicon& lexicon, const Grammar& grammar, std::string_view form);

/// Reads lexicon source text: `entry "<form>" [origin acquired] := <AVM> ( '|' <AVM> )* .`
/// Every disjunct must carry `phon: "<form>"`. Duplicate forms are errors.
std::vector<LexicalEntry> parse_lexicon_entries(std::string_view text, const TypeHierarchy& h);

/// One `entry` statement in the syntax above (no trailing newline).
std::string render_entry(const LexicalEntry& entry, const TypeHierarchy& h);

}  // namespace lexlearn
