#include "lexlearn/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <optional>

#include "lexlearn/audit.hpp"
#include "lexlearn/error.hpp"

namespace lexlearn {

namespace {

const std::string kDataDir = LEXLEARN_DATA_DIR;
const char* const kDemoForms[] = {"Nase", "perzipiert"};

struct Config {
  std::string types = kDataDir + "/demo.types";
  std::string clauses = kDataDir + "/demo.clauses";
  std::string lexicon = kDataDir + "/demo.lex";
  std::string store = "lexlearn.store";

  std::string log() const { return store + ".log"; }
};

/// Grammar plus the working lexicon: the store when it exists, the lexicon
/// source otherwise.
struct Session {
  Config config;
  Grammar grammar;
  Lexicon lexicon;

  explicit Session(const Config& c)
      : config(c), grammar(Grammar::load(c.types, c.clauses)), lexicon(initial_lexicon()) {}

  Lexicon source_lexicon() const { return Lexicon::load_source(config.lexicon, grammar.types()); }

  void persist(const UpdateReport& report) const {
    append_audit_log(config.log(), audit_records(report), grammar.types());
    lexicon.save_store(config.store, grammar.types());
  }

 private:
  Lexicon initial_lexicon() const {
    if (std::filesystem::exists(config.store)) return Lexicon::load_store(config.store, grammar.types());
    return source_lexicon();
  }
};

std::string show_entry(const Lexicon& lex, const Grammar& grammar, const std::string& form) {
  const TypeHierarchy& h = grammar.types();
  std::string out;
  const LexicalEntry* entry = lex.find(form);
  std::optional<LexicalEntry> generic;
  if (entry) {
    out = form + (entry->origin == Origin::Acquired ? " (acquired)\n" : " (known)\n");
  } else {
    generic = generic_unknown_entry(grammar, form);
    entry = &*generic;
    out = form + ": not in lexicon; generic entry:\n";
  }
  const bool several = entry->disjuncts.size() > 1;
  for (std::size_t i = 0; i < entry->disjuncts.size(); ++i)
    out += "  " + (several ? "<" + std::to_string(i) + "> " : std::string()) +
           render_fs(entry->disjuncts[i], h, {true}) + "\n";
  if (std::size_t n = lex.pending_for(form).size()) out += "  pending hypotheses: " + std::to_string(n) + "\n";
  return out;
}

std::string report_text(const UpdateReport& report, const TypeHierarchy& h, bool json) {
  if (!json) return format_report(report, h);
  std::string out;
  for (const auto& r : audit_records(report)) out += audit_json(r, h) + "\n";
  return out;
}

std::vector<std::string> script_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

int cmd_process(const Config& config, const std::string& sentence, bool dry_run, bool json, std::ostream& out) {
  Session s(config);
  UpdateReport report = process_sentence(s.lexicon, s.grammar, sentence);
  out << report_text(report, s.grammar.types(), json);
  if (!report.grammatical) return 1;
  if (!dry_run) s.persist(report);
  return 0;
}

int cmd_batch(const Config& config, const std::string& file, bool dry_run, bool json, std::ostream& out) {
  Session s(config);
  for (const auto& sentence : script_lines(file)) {
    UpdateReport report = process_sentence(s.lexicon, s.grammar, sentence);
    out << report_text(report, s.grammar.types(), json);
    if (!dry_run && report.grammatical) s.persist(report);
  }
  return 0;
}

int cmd_diff(const Config& config, const std::string& form, std::ostream& out) {
  Session s(config);
  Lexicon lex = s.source_lexicon();
  std::optional<std::pair<EntryChange, std::size_t>> last;
  replay_audit(lex, s.grammar, read_audit_log(config.log(), s.grammar.types()),
               [&](const EntryChange& change, std::size_t version) {
                 if (change.form == form) last.emplace(change, version);
               });
  if (!last) {
    out << form << ": no recorded change\n";
    return 0;
  }
  out << form << " (version " << last->second << ")\n";
  for (const auto& line : last->first.diff) out << "  " << line << "\n";
  return 0;
}

int cmd_pending(const Config& config, std::ostream& out) {
  Session s(config);
  const TypeHierarchy& h = s.grammar.types();
  if (s.lexicon.pending().empty()) {
    out << "no pending hypotheses\n";
    return 0;
  }
  for (const auto& p : s.lexicon.pending()) {
    out << p.form << ", solution " << p.solution << " of \"" << p.sentence << "\":\n";
    for (const auto& c : p.candidates)
      out << "  " << c.clause << " " << c.path.str() << ": " << h.display(c.old_value, true) << " → "
          << h.display(c.new_value, true) << "\n";
  }
  return 0;
}

int cmd_demo(const Config& config, std::ostream& out) {
  Session s(config);
  Lexicon lex = s.source_lexicon();
  for (const auto& sentence : script_lines(kDataDir + "/demo_script.txt")) {
    out << format_report(process_sentence(lex, s.grammar, sentence), s.grammar.types());
    for (const char* form : kDemoForms) out << show_entry(lex, s.grammar, form);
  }
  return 0;
}

int cmd_check(const Config& config, std::ostream& out) {
  Session s(config);
  const TypeHierarchy& h = s.grammar.types();
  out << config.types << ": " << h.leaf_count() << " leaves, " << h.named_types().size() << " named types\n";
  out << config.clauses << ": " << s.grammar.clauses().size() << " clauses, " << s.grammar.generic_templates().size()
      << " generic disjuncts\n";
  Lexicon source = s.source_lexicon();
  out << config.lexicon << ": " << source.size() << " entries\n";
  if (!std::filesystem::exists(config.store)) {
    out << config.store << ": not created yet\n";
    return 0;
  }
  out << config.store << ": " << s.lexicon.size() << " entries, version " << s.lexicon.version() << ", "
      << s.lexicon.pending().size() << " pending\n";
  auto records = read_audit_log(config.log(), h);
  replay_audit(source, s.grammar, records);
  if (source.store_text(h) != s.lexicon.store_text(h))
    throw Error(config.log() + ": replay does not reproduce " + config.store);
  out << config.log() << ": " << records.size() << " records, replay matches\n";
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Incremental lexicon revision from parsed sentences", "lexlearn");
  app.require_subcommand(1);
  app.fallthrough();
  Config config;
  app.add_option("--types", config.types, "type hierarchy file");
  app.add_option("--clauses", config.clauses, "revisability clause file");
  app.add_option("--lexicon", config.lexicon, "lexicon source file");
  app.add_option("--store", config.store, "lexicon store (audit log at <store>.log)");
  app.set_config("--config", "", "file of `key = path` lines")->envname("LEXLEARN_CONFIG");

  bool dry_run = false, json = false;
  std::vector<std::string> words;
  std::string file, form;

  auto* process = app.add_subcommand("process", "process one sentence and persist the revised lexicon");
  process->add_option("sentence", words, "the sentence")->required();
  process->add_flag("--dry-run", dry_run, "do not persist");
  process->add_flag("--json", json, "print audit records as JSON lines");

  auto* batch = app.add_subcommand("batch", "process a file of sentences, one per line");
  batch->add_option("file", file)->required();
  batch->add_flag("--dry-run", dry_run, "do not persist");
  batch->add_flag("--json", json, "print audit records as JSON lines");

  auto* show = app.add_subcommand("show", "print an entry");
  show->add_option("form", form)->required();
  auto* diff = app.add_subcommand("diff", "print the last recorded change of an entry");
  diff->add_option("form", form)->required();
  auto* pending = app.add_subcommand("pending", "list pending hypotheses");
  auto* demo = app.add_subcommand("demo", "run the worked example on a fresh copy of the lexicon");
  auto* check = app.add_subcommand("check", "validate the configured files");

  std::vector<std::string> argv_store{"lexlearn"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*process) {
      std::string sentence;
      for (const auto& w : words) sentence += (sentence.empty() ? "" : " ") + w;
      return cmd_process(config, sentence, dry_run, json, out);
    }
    if (*batch) return cmd_batch(config, file, dry_run, json, out);
    if (*show) {
      Session s(config);
      out << show_entry(s.lexicon, s.grammar, form);
      return 0;
    }
    if (*diff) return cmd_diff(config, form, out);
    if (*pending) return cmd_pending(config, out);
    if (*demo) return cmd_demo(config, out);
    if (*check) return cmd_check(config, out);
  } catch (const std::exception& e) {
    err << "lexlearn: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace lexlearn
