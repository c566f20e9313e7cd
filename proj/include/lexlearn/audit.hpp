#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lexlearn/revision.hpp"

namespace lexlearn {

enum class AuditStatus { Applied, Rejected, Pending, Failed };

std::string_view to_string(AuditStatus status);

/// One line of the audit log: a candidate and what became of it.
struct AuditRecord {
  AuditStatus status = AuditStatus::Applied;
  UpdateCandidate candidate;
  std::string sentence;
  /// Lexicon version after the sentence was processed.
  std::size_t version = 0;
  /// Parse solution that proposed a pending candidate.
  std::optional<std::size_t> solution;
  /// Failure message.
  std::string message;

  bool operator==(const AuditRecord&) const = default;
};

/// Records for a report, in the order applied, rejected, pending, failed.
std::vector<AuditRecord> audit_records(const UpdateReport& report);

/// One JSON object per line, keys `status form clause kind disjunct path old
/// new sentence version`, plus `solution` for pending and `message` for
/// failed records. Types are written with full display, u_s included.
std::string audit_json(const AuditRecord& record, const TypeHierarchy& h);
AuditRecord parse_audit_json(std::string_view line, const TypeHierarchy& h);

/// Appends one line per record, creating the file if needed.
void append_audit_log(const std::string& path, const std::vector<AuditRecord>& records, const TypeHierarchy& h);
/// Missing file reads as an empty log. Errors carry the line number.
std::vector<AuditRecord> read_audit_log(const std::string& path, const TypeHierarchy& h);

/// Called once per replayed sentence that changed an entry.
using ReplayObserver = std::function<void(const EntryChange& change, std::size_t version)>;

/// Re-runs the logged history on `lexicon` (normally the lexicon the log
/// started from): applied candidates are re-applied and pending ones
/// re-recorded, one version step at a time. Throws Error when a record no
/// longer applies or the version counter disagrees with the log.
void replay_audit(Lexicon& lexicon, const Grammar& grammar, const std::vector<AuditRecord>& records,
                  const ReplayObserver& observer = {});

}  // namespace lexlearn
