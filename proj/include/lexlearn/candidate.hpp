#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lexlearn/feature_structure.hpp"
#include "lexlearn/grammar.hpp"
#include "lexlearn/type_hierarchy.hpp"

namespace lexlearn {

/// A proposed type revision at one slot of one lexical disjunct.
struct UpdateCandidate {
  std::string form;
  /// Index into the disjunct list the parse used: the entry's own disjuncts
  /// for listed forms, the generic templates for unseen ones.
  std::size_t disjunct = 0;
  std::string clause;
  ClauseKind kind = ClauseKind::Generalizable;
  /// Absolute path inside the disjunct, list indices resolved.
  FeaturePath path;
  LeafSet old_value;
  LeafSet new_value;

  bool operator==(const UpdateCandidate&) const = default;
};

/// Candidates one parse solution proposed for a form that the other
/// solutions did not agree on. Kept for inspection; never applied.
struct PendingHypothesis {
  std::string form;
  std::string sentence;
  std::size_t solution = 0;
  std::vector<UpdateCandidate> candidates;

  bool operator==(const PendingHypothesis&) const = default;
};

}  // namespace lexlearn
