#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexlearn/candidate.hpp"
#include "lexlearn/grammar.hpp"
#include "lexlearn/lexicon.hpp"
#include "lexlearn/parser.hpp"

namespace lexlearn {

struct ClauseMatch {
  const RevisabilityClause* clause = nullptr;
  /// List element index for scoped clauses.
  std::optional<std::size_t> element;
  /// The word (or list element) unified with the clause pattern; slot paths
  /// resolve in it.
  FeatureStructure unified{LeafSet{}};
};

/// Clauses whose anchor unifies with `word`. A scoped clause yields one
/// match per list element that unifies with its element pattern.
std::vector<ClauseMatch> match_revisability(const FeatureStructure& word, const Grammar& grammar);

/// Update candidates for one solution, before the informativeness check.
///
/// Generalizable: new = lexical gen ∪ parse ctxt; a gen slot missing from
/// the lexical disjunct counts as the clause pattern's type there.
/// Specializable: only for lexical slots carrying u_s; new = parse value
/// with u_s kept. Candidates for the same slot (a form used twice) are
/// merged by union or intersection respectively.
std::vector<UpdateCandidate> compute_updates(const ParseResult& parse, std::size_t solution, const Grammar& grammar);

/// Generalizable: new ⊋ old. Specializable: new ⊊ old, u_s ignored.
bool informative(const UpdateCandidate& candidate, const TypeHierarchy& h);

struct Reconciled {
  std::vector<UpdateCandidate> agreed;
  std::vector<PendingHypothesis> pending;
};

/// Candidates present in every solution are agreed; the rest become one
/// PendingHypothesis per (solution, form).
Reconciled reconcile_solutions(const std::vector<std::vector<UpdateCandidate>>& per_solution,
                               std::string_view sentence);

struct UpdateFailure {
  UpdateCandidate candidate;
  std::string message;
};

struct EntryChange {
  std::string form;
  /// Presentation renderings; `before` is empty for a newly acquired form.
  std::vector<std::string> before;
  std::vector<std::string> after;
  std::vector<std::string> diff;
};

struct ApplyOutcome {
  std::vector<UpdateCandidate> applied;
  std::vector<UpdateFailure> failures;
  std::vector<EntryChange> changes;
};

/// Revises entries in place. An unseen form first gets a copy of the
/// generic entry cut down to the disjuncts the candidates refer to. Each
/// entry is revised on a copy and re-asserted only if every one of its
/// candidates succeeds. Does not touch the version counter.
ApplyOutcome apply_updates(Lexicon& lexicon, const Grammar& grammar, const std::vector<UpdateCandidate>& agreed);

struct UpdateReport {
  std::string sentence;
  bool grammatical = false;
  std::size_t solutions = 0;
  std::vector<UpdateCandidate> applied;
  std::vector<UpdateCandidate> rejected;
  std::vector<PendingHypothesis> pending;
  std::vector<UpdateFailure> failures;
  std::vector<EntryChange> changes;
  /// Lexicon version after the sentence.
  std::size_t version = 0;
};

/// Tokenize, parse, compute candidates per solution, drop uninformative
/// ones, reconcile, apply, record pending hypotheses. The version goes up
/// when an entry changed or a new pending hypothesis was recorded. An
/// ungrammatical sentence leaves the lexicon untouched.
UpdateReport process_sentence(Lexicon& lexicon, const Grammar& grammar, std::string_view sentence);

/// Human-readable report (presentation-mode types).
std::string format_report(const UpdateReport& report, const TypeHierarchy& h);

}  // namespace lexlearn
