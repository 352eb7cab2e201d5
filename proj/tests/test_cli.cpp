#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(QDMR_CLI) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

struct TempDir {
  fs::path dir;
  TempDir() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("qdmr_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& content) const {
    auto p = dir / name;
    std::ofstream(p) << content;
    return p.string();
  }
};

}  // namespace

TEST_CASE("parse and compile") {
  TempDir t;
  auto in = t.write("d.txt", "Return flights ; Return #1 from Toronto\n");
  auto p = run("parse --in " + in);
  CHECK(p.code == 0);
  CHECK(p.out == "return flights ;return #1 from toronto\n");
  CHECK(run("parse --in " + in + " --sep sep").out.find("[SEP]") != std::string::npos);

  auto c = run("compile --in " + in);
  CHECK(c.code == 0);
  CHECK(c.out.find("FILTER") != std::string::npos);
  auto g = run("compile --graph --format json --in " + in);
  CHECK(nlohmann::json::parse(g.out)["edges"].size() == 1);
  CHECK(run("compile --graph --format dot --in " + in).out.find("digraph") != std::string::npos);

  auto bad = t.write("bad.txt", "return a ;return #2\n");
  CHECK(run("parse --in " + bad).code == 1);
}

TEST_CASE("validate") {
  TempDir t;
  auto in = t.write("d.txt", "return flights ;return #1 from toronto\nreturn airplanes\n");
  auto q = t.write("q.txt", "I would like a flight from Toronto\nI would like a flight from Toronto\n");
  auto r = run("validate --in " + in + " --questions " + q);
  CHECK(r.code == 1);
  CHECK(r.out == "1\tok\n2\tinvalid\n");
}

TEST_CASE("exec") {
  auto r = run("exec --kb " + fixture("executor/toy.tsv") + " --qdmr " + fixture("executor/comparative.txt"));
  CHECK(r.code == 0);
  CHECK(r.out == "{A}\n");
}

TEST_CASE("eval") {
  TempDir t;
  auto gold = t.write("g.txt", "return flights ;return #1 from toronto\nreturn touchdowns ;return the number of #1\n");
  auto pred = t.write("p.txt", "return flights ;return #1 from toronto\nreturn touchdowns\n");
  auto qs = t.write("q.txt", "flights from toronto\nhow many touchdowns\n");
  auto out = (t.dir / "scores.tsv").string();
  auto r = run("eval --gold " + gold + " --pred " + pred + " --questions " + qs + " --out " + out);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("em=0.500 sari=", 0) == 0);
  CHECK(fs::exists(out));
  auto short_pred = t.write("p1.txt", "return flights\n");
  CHECK(run("eval --gold " + gold + " --pred " + short_pred + " --questions " + qs).code == 2);
}

TEST_CASE("decompose") {
  auto r = run("decompose --steps --tree " + fixture("rulebased/multi-prep.conll"));
  CHECK(r.code == 0);
  CHECK(r.out == "flights\n#1 from Tacoma\n#2 to Orlando\n#3 on Saturday\n");
  auto coref = run("decompose --steps --tree " + fixture("rulebased/sent-coref.conll") + " --coref " +
                   fixture("rulebased/sent-coref.coref"));
  CHECK(coref.out == "the claim that has the largest total settlement amount\nthe effective date of #1\n");
}

TEST_CASE("stats") {
  auto r = run("stats --csv " + fixture("dataset/sample.csv"));
  CHECK(r.code == 0);
  CHECK(r.out.find("SELECT\t1.0000") != std::string::npos);
  CHECK(r.out.find("3-4\t0.6600") != std::string::npos);
}

TEST_CASE("breakrc") {
  TempDir t;
  auto q = t.write("q.txt", "return authors ;return papers of #1\n");
  auto r = run("breakrc --kb " + fixture("executor/toy.tsv") + " --qdmr " + q + " --all-candidates");
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j.dump().find("p3") != std::string::npos);
  // one of --kb / --corpus is required
  CHECK(run("breakrc --qdmr " + q).code == 2);
  CHECK(run("breakrc --qdmr " + q + " --kb " + fixture("executor/toy.tsv") + " --corpus " + q).code == 2);
}

TEST_CASE("gen is deterministic") {
  auto a = run("gen --seed 5"), b = run("gen --seed 5");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != run("gen --seed 6").out);
}

TEST_CASE("usage errors") {
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code != 0);
  CHECK(run("exec --kb /nonexistent --qdmr /nonexistent").code == 2);
}
