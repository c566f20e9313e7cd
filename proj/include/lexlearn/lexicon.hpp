#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexlearn/candidate.hpp"
#include "lexlearn/grammar.hpp"

namespace lexlearn {

/// Full-form lexicon with a version counter and the pending hypotheses
/// left over from ambiguous parses.
///
/// Store file syntax: the lexicon source syntax (see parse_lexicon_entries),
/// preceded by `version <n> .` and followed by pending blocks:
///
///     pending "<form>" solution <k> sentence "<text>" {
///       candidate <clause> <kind> disjunct <d> path <path> old <type> new <type> .
///     }
///
/// Types are written in full, including the u_s marker.
class Lexicon {
 public:
  Lexicon() = default;

  /// Lexicon source text (entries only).
  static Lexicon parse_source(std::string_view text, const TypeHierarchy& h);
  static Lexicon load_source(const std::string& path, const TypeHierarchy& h);

  static Lexicon parse_store(std::string_view text, const TypeHierarchy& h);
  static Lexicon load_store(const std::string& path, const TypeHierarchy& h);
  std::string store_text(const TypeHierarchy& h) const;
  /// Writes through a temporary file and a rename.
  void save_store(const std::string& path, const TypeHierarchy& h) const;

  const LexicalEntry* find(std::string_view form) const;
  bool contains(std::string_view form) const { return find(form) != nullptr; }
  const std::map<std::string, LexicalEntry, std::less<>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  /// Removes and returns the entry; throws Error if the form is absent.
  LexicalEntry retract(std::string_view form);
  /// Inserts or replaces the entry for `entry.form`.
  void assert_entry(LexicalEntry entry);

  std::size_t version() const { return version_; }
  void bump_version() { ++version_; }

  const std::vector<PendingHypothesis>& pending() const { return pending_; }
  std::vector<PendingHypothesis> pending_for(std::string_view form) const;
  /// Adds the hypothesis unless one with the same form and candidate slots
  /// and values (disjunct indices aside) is already recorded. Returns
  /// whether it was added.
  bool add_pending(PendingHypothesis hypothesis);

 private:
  std::map<std::string, LexicalEntry, std::less<>> entries_;
  std::size_t version_ = 0;
  std::vector<PendingHypothesis> pending_;
};

/// Structural difference between two versions of an entry, one line per
/// changed slot: `path: old → new` with presentation-mode type names.
/// Subtrees present on only one side are printed whole, with `(none)` for
/// the missing side. Either argument may be null (entry absent).
std::vector<std::string> diff_entries(const LexicalEntry* before, const LexicalEntry* after,
                                      const TypeHierarchy& h);

}  // namespace lexlearn
