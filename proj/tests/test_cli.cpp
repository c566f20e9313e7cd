#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "lexlearn/cli.hpp"
#include "lexlearn/grammar.hpp"

using namespace lexlearn;
namespace fs = std::filesystem;

namespace {

const std::string kData = LEXLEARN_DATA_DIR;

struct Run {
  int code;
  std::string out;
  std::string err;
};

class Sandbox {
 public:
  Sandbox() {
    static int counter = 0;
    dir_ = fs::temp_directory_path() / ("lexlearn-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(dir_);
  }
  ~Sandbox() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string store() const { return path("lex.store"); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }

  Run run(std::vector<std::string> args) const {
    args.insert(args.begin(), {"--store", store()});
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
  }

 private:
  fs::path dir_;
};

const char* const kScript[] = {"Die Nase ist ein Sinnesorgan.", "Das Ohr perzipiert.",
                               "Eine verschnupfte Nase perzipiert den Gestank."};

}  // namespace

TEST_CASE("demo prints the final perzipiert entry") {
  Sandbox box;
  Run r = box.run({"demo"});
  CHECK(r.code == 0);
  CHECK(r.out.find("perzipiert (acquired)\n  [phon: \"perzipiert\", head: verb, arg-st: [gen: u_g∨npnom∨npnom_npacc") !=
        std::string::npos);
  CHECK_FALSE(fs::exists(box.store()));
}

TEST_CASE("batch over the script then show reproduces demo") {
  Sandbox box;
  const std::string demo = box.run({"demo"}).out;

  std::string stepwise;
  for (const char* sentence : kScript) {
    box.write("one.txt", std::string(sentence) + "\n");
    Run b = box.run({"batch", box.path("one.txt")});
    REQUIRE(b.code == 0);
    stepwise += b.out + box.run({"show", "Nase"}).out + box.run({"show", "perzipiert"}).out;
  }
  CHECK(stepwise == demo);

  Sandbox whole;
  Run b = whole.run({"batch", kData + "/demo_script.txt"});
  std::string tail = whole.run({"show", "Nase"}).out + whole.run({"show", "perzipiert"}).out;
  REQUIRE(demo.size() > tail.size());
  CHECK(demo.substr(demo.size() - tail.size()) == tail);
  CHECK(b.code == 0);
}

TEST_CASE("process: ungrammatical input exits 1 and persists nothing") {
  Sandbox box;
  Run r = box.run({"process", "Der sensible Geruch perzipiert."});
  CHECK(r.code == 1);
  CHECK(r.out.find("no parse") != std::string::npos);
  CHECK_FALSE(fs::exists(box.store()));
}

TEST_CASE("process persists, dry run does not") {
  Sandbox box;
  CHECK(box.run({"process", "--dry-run", kScript[0]}).code == 0);
  CHECK_FALSE(fs::exists(box.store()));
  CHECK(box.run({"process", kScript[0]}).code == 0);
  CHECK(fs::exists(box.store()));
  CHECK(fs::exists(box.store() + ".log"));
  CHECK(box.run({"show", "Nase"}).out.find("ctxt: sense_organ") != std::string::npos);
  // Words may also arrive unquoted.
  Run r = box.run({"process", "Das", "Ohr", "perzipiert."});
  CHECK(r.code == 0);
  CHECK(r.out.find("version: 2") != std::string::npos);
}

TEST_CASE("process --json prints audit records") {
  Sandbox box;
  Run r = box.run({"process", "--json", "Das Aktionspotential erreicht den Dendriten."});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::size_t pending = 0, applied = 0;
  while (std::getline(lines, line)) {
    auto j = nlohmann::json::parse(line);
    for (const char* key : {"form", "clause", "path", "old", "new", "sentence"}) CHECK(j.contains(key));
    if (j["status"] == "pending") ++pending;
    if (j["status"] == "applied") ++applied;
  }
  CHECK(pending == 2);
  CHECK(applied == 2);
}

TEST_CASE("show of an unseen form") {
  Sandbox box;
  Run r = box.run({"show", "unseenword"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("unseenword: not in lexicon", 0) == 0);
  Grammar g = Grammar::load(kData + "/demo.types", kData + "/demo.clauses");
  for (const auto& d : generic_unknown_entry(g, "unseenword").disjuncts)
    CHECK(r.out.find(render_fs(d, g.types(), {true})) != std::string::npos);
}

TEST_CASE("pending and diff") {
  Sandbox box;
  CHECK(box.run({"pending"}).out == "no pending hypotheses\n");
  box.run({"batch", kData + "/demo_script.txt"});
  box.run({"process", "Das Aktionspotential erreicht den Dendriten."});
  Run p = box.run({"pending"});
  CHECK(p.out.find("u_g → u_g∨npnom_npacc") != std::string::npos);
  CHECK(p.out.find("u_g → u_g∨npnom_npdat") != std::string::npos);

  CHECK(box.run({"diff", "Nase"}).out == "Nase (version 3)\n  cont.ctxt: sense_organ → nose\n");
  CHECK(box.run({"diff", "Ohr"}).out == "Ohr: no recorded change\n");
  Run check = box.run({"check"});
  CHECK(check.code == 0);
  CHECK(check.out.find("replay matches") != std::string::npos);
}

TEST_CASE("configuration file via LEXLEARN_CONFIG") {
  Sandbox box;
  box.write("lexlearn.ini", "store = " + box.path("configured.store") + "\n");
  ::setenv("LEXLEARN_CONFIG", box.path("lexlearn.ini").c_str(), 1);
  std::ostringstream out, err;
  int code = run_cli({"process", kScript[0]}, out, err);
  ::unsetenv("LEXLEARN_CONFIG");
  CHECK(code == 0);
  CHECK(fs::exists(box.path("configured.store")));
}

TEST_CASE("file errors exit 2 with context") {
  Sandbox box;
  Run missing = box.run({"--types", box.path("none.types"), "check"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("none.types") != std::string::npos);

  box.write("bad.types", "leaf a b\ntype c = a | zzz\n");
  Run bad = box.run({"--types", box.path("bad.types"), "check"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("bad.types") != std::string::npos);
  CHECK(bad.err.find("line 2") != std::string::npos);

  CHECK(box.run({"process", kScript[0]}).code == 0);
  std::ofstream(box.store() + ".log", std::ios::app) << "{broken\n";
  Run corrupt = box.run({"check"});
  CHECK(corrupt.code == 2);
  CHECK(corrupt.err.find("lex.store.log:3: bad audit record") != std::string::npos);

  CHECK(box.run({}).code == 2);
  CHECK(box.run({"process"}).code == 2);
  CHECK(box.run({"batch", box.path("nope.txt")}).code == 2);
}
