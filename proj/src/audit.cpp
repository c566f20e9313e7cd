#include "lexlearn/audit.hpp"

#include <fstream>
#include <json.hpp>

#include "lexlearn/error.hpp"

namespace lexlearn {

using Json = nlohmann::ordered_json;

std::string_view to_string(AuditStatus status) {
  switch (status) {
    case AuditStatus::Applied: return "applied";
    case AuditStatus::Rejected: return "rejected";
    case AuditStatus::Pending: return "pending";
    case AuditStatus::Failed: return "failed";
  }
  return "?";
}

namespace {

AuditStatus status_from(const std::string& text) {
  for (auto s : {AuditStatus::Applied, AuditStatus::Rejected, AuditStatus::Pending, AuditStatus::Failed})
    if (to_string(s) == text) return s;
  throw Error("unknown audit status '" + text + "'");
}

}  // namespace

std::vector<AuditRecord> audit_records(const UpdateReport& report) {
  std::vector<AuditRecord> out;
  auto add = [&](AuditStatus status, const UpdateCandidate& c) {
    AuditRecord r;
    r.status = status;
    r.candidate = c;
    r.sentence = report.sentence;
    r.version = report.version;
    out.push_back(std::move(r));
    return &out.back();
  };
  for (const auto& c : report.applied) add(AuditStatus::Applied, c);
  for (const auto& c : report.rejected) add(AuditStatus::Rejected, c);
  for (const auto& p : report.pending)
    for (const auto& c : p.candidates) add(AuditStatus::Pending, c)->solution = p.solution;
  for (const auto& f : report.failures) add(AuditStatus::Failed, f.candidate)->message = f.message;
  return out;
}

std::string audit_json(const AuditRecord& r, const TypeHierarchy& h) {
  const UpdateCandidate& c = r.candidate;
  Json j;
  j["status"] = to_string(r.status);
  j["form"] = c.form;
  j["clause"] = c.clause;
  j["kind"] = to_string(c.kind);
  j["disjunct"] = c.disjunct;
  j["path"] = c.path.str();
  j["old"] = h.display(c.old_value);
  j["new"] = h.display(c.new_value);
  j["sentence"] = r.sentence;
  j["version"] = r.version;
  if (r.solution) j["solution"] = *r.solution;
  if (r.status == AuditStatus::Failed) j["message"] = r.message;
  return j.dump();
}

AuditRecord parse_audit_json(std::string_view line, const TypeHierarchy& h) {
  try {
    Json j = Json::parse(line);
    AuditRecord r;
    r.status = status_from(j.at("status").get<std::string>());
    UpdateCandidate& c = r.candidate;
    c.form = j.at("form").get<std::string>();
    c.clause = j.at("clause").get<std::string>();
    c.kind = clause_kind_from(j.at("kind").get<std::string>());
    c.disjunct = j.at("disjunct").get<std::size_t>();
    c.path = FeaturePath::parse(j.at("path").get<std::string>());
    c.old_value = h.parse_expression(j.at("old").get<std::string>());
    c.new_value = h.parse_expression(j.at("new").get<std::string>());
    r.sentence = j.at("sentence").get<std::string>();
    r.version = j.at("version").get<std::size_t>();
    if (j.contains("solution")) r.solution = j["solution"].get<std::size_t>();
    if (j.contains("message")) r.message = j["message"].get<std::string>();
    return r;
  } catch (const Json::exception& e) {
    throw Error(std::string("bad audit record: ") + e.what());
  }
}

void append_audit_log(const std::string& path, const std::vector<AuditRecord>& records, const TypeHierarchy& h) {
  if (records.empty()) return;
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot open " + path);
  for (const auto& r : records) out << audit_json(r, h) << '\n';
  if (!out) throw Error("write failed: " + path);
}

std::vector<AuditRecord> read_audit_log(const std::string& path, const TypeHierarchy& h) {
  std::vector<AuditRecord> out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  std::string line;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    if (line.empty()) continue;
    try {
      out.push_back(parse_audit_json(line, h));
    } catch (const Error& e) {
      throw Error(path + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

void replay_audit(Lexicon& lexicon, const Grammar& grammar, const std::vector<AuditRecord>& records,
                  const ReplayObserver& observer) {
  std::size_t i = 0;
  while (i < records.size()) {
    const std::size_t version = records[i].version;
    std::size_t end = i;
    while (end < records.size() && records[end].version == version) ++end;

    std::vector<UpdateCandidate> applied;
    for (std::size_t k = i; k < end; ++k)
      if (records[k].status == AuditStatus::Applied) applied.push_back(records[k].candidate);
    ApplyOutcome outcome = apply_updates(lexicon, grammar, applied);
    if (!outcome.failures.empty())
      throw Error("replay of version " + std::to_string(version) + " failed for " + outcome.failures[0].candidate.form +
                  ": " + outcome.failures[0].message);
    bool changed = !outcome.applied.empty();

    std::optional<PendingHypothesis> hyp;
    auto flush = [&] {
      if (hyp) changed = lexicon.add_pending(std::move(*hyp)) || changed;
      hyp.reset();
    };
    for (std::size_t k = i; k < end; ++k) {
      const AuditRecord& r = records[k];
      if (r.status != AuditStatus::Pending) continue;
      const std::size_t solution = r.solution.value_or(0);
      if (!hyp || hyp->form != r.candidate.form || hyp->sentence != r.sentence || hyp->solution != solution) {
        flush();
        hyp = PendingHypothesis{r.candidate.form, r.sentence, solution, {}};
      }
      hyp->candidates.push_back(r.candidate);
    }
    flush();

    if (changed) lexicon.bump_version();
    if (lexicon.version() != version)
      throw Error("replay reached version " + std::to_string(lexicon.version()) + " where the log records " +
                  std::to_string(version));
    if (observer)
      for (const auto& change : outcome.changes) observer(change, version);
    i = end;
  }
}

}  // namespace lexlearn
