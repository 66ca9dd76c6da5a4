#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "frobcoord/lexicon.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

Run run(const std::string& args, const std::string& env = "") {
  const auto err_path = std::filesystem::temp_directory_path() / "frobcoord_cli_stderr.txt";
  const std::string cmd =
      env + " " + quote(FROBCOORD_CLI) + " " + args + " 2>" + quote(err_path.string());
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  return r;
}

const std::string kLex = quote(std::string(FROBCOORD_DATA) + "/fixtures.lex");

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("check accepts and rejects") {
  const auto ok = run("check " + kLex + " mary likes musicals");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "(0.0–1.0) (1.2–2.0)"));

  const auto bad = run("check " + kLex + " likes mary");
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "ungrammatical"));

  const auto all = run("check --all --ascii-diagram " + kLex + " john sleeps");
  CHECK(all.code == 0);
  CHECK(contains(all.out, "(0.0–1.0)"));
  CHECK(contains(all.out, "+"));
}

TEST_CASE("environmental failures exit 2") {
  const auto missing = run("check /nonexistent/lexicon.lex mary");
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());
  CHECK(missing.out.empty());
  CHECK(run("check " + kLex + " mary likes unicorns").code == 2);
  CHECK(run("eval " + kLex + " mary likes musicals --mode sideways").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("selftest --trials 1", "FROBCOORD_SEED=banana").code == 2);
}

TEST_CASE("eval prints sentence vectors") {
  const auto r = run("eval " + kLex + " john sleeps");
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  std::vector<double> values;
  double v;
  while (in >> v) values.push_back(v);
  REQUIRE(values.size() == 2);
  CHECK(values[0] == doctest::Approx(0.6 * 0.9 + 0.8 * 0.4));

  CHECK(run("eval " + kLex + " sleeps john").code == 1);
}

TEST_CASE("eval --compare reports agreement of both modes") {
  for (const char* sentence :
       {"john sleeps and snores", "bank granted mary but denied john loan",
        "men watch football and women knit", "john likes mary and musicals"}) {
    const auto r = run("eval --compare --format json " + kLex + " " + sentence);
    INFO(sentence);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["max_abs_difference"].get<double>() < 1e-10);
    CHECK(j["shape"] == nlohmann::json::array({2}));
  }
  const auto plain = run("eval --compare --mode closed-form " + kLex + " john sleeps and snores");
  CHECK(plain.code == 0);
  CHECK(contains(plain.out, "0.268 0.282"));
  CHECK(contains(plain.out, "max abs difference"));
}

TEST_CASE("json output round-trips through the lexicon literal syntax") {
  const auto r = run("eval --format json " + kLex + " bank granted mary but denied john loan");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  frobcoord::LiteralSpec data;
  for (const auto& v : j["data"]) data.push_back(v.get<double>());
  frobcoord::LexiconFile file;
  file.basic_types = {{"s", 2}};
  file.entries.push_back({"result", frobcoord::parse_type("s"), data, 0});
  const auto back = frobcoord::parse_lexicon(frobcoord::format_lexicon(file));
  CHECK(std::get<frobcoord::LiteralSpec>(back.entries[0].spec) == data);
  // The printed JSON text itself is valid literal syntax.
  const auto literal = "#type s 2\nresult : s = " + j["data"].dump() + "\n";
  CHECK(std::get<frobcoord::LiteralSpec>(frobcoord::parse_lexicon(literal).entries[0].spec) == data);
}

TEST_CASE("derive shows types, links and a diagram") {
  const auto r = run("derive " + kLex + " men watch football and women knit");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "3 and : s.r s s.l"));
  CHECK(contains(r.out, "links: (0.0–1.0) (1.1–3.0) (1.2–2.0) (3.2–5.1) (4.0–5.0)"));
  CHECK(contains(r.out, "residual: s"));
}

TEST_CASE("boolean lexica evaluate over or-and") {
  const auto dir = std::filesystem::temp_directory_path() / "frobcoord_cli_bool";
  std::filesystem::create_directories(dir);
  const auto path = dir / "bool.lex";
  std::ofstream(path) << "#semiring bool\n#type n 3\n#type s 2\n"
                         "cats : n = [1, 1, 0]\ndogs : n = [0, 1, 1]\nand : n.r n n.l = @conj\n";
  const auto r = run("eval --target n " + quote(path.string()) + " cats and dogs");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "0 1 0"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("selftest exit codes") {
  const auto ok = run("selftest --trials 5");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "PASS frobenius-axioms"));
  CHECK(contains(ok.out, "PASS stripping-equality"));

  const auto seeded = run("selftest --trials 2", "FROBCOORD_SEED=12345");
  CHECK(seeded.code == 0);
  CHECK(contains(seeded.out, "seed 12345"));

  CHECK(run("selftest --trials 5 --max-dim 1").code == 0);

  const auto fault = run("selftest --trials 5 --inject-fault");
  CHECK(fault.code == 1);
  CHECK(contains(fault.out, "FAIL"));
  CHECK(contains(fault.out, "counterexample: semiring="));
}
