#include "doctest.h"

#include <fstream>
#include <sstream>

#include "ibu/cli.hpp"
#include "ibu/replays.hpp"
#include "ibu/scenario_text.hpp"
#include "ibu/search.hpp"

using namespace ibu;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "/tmp/ibu_test_" + name + ".scn";
  std::ofstream f(path);
  f << text;
  return path;
}

}  // namespace

TEST_CASE("replay: the first counterexample scenario") {
  const CliRun r = cli({"replay", "--example", "2"});
  CHECK(r.code == 1);  // the demonstrated violation is flagged
  CHECK(r.out.find("{w2, w3}") != std::string::npos);
  CHECK(r.out.find("{w2}") != std::string::npos);
  CHECK(r.out.find("postulate C1") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("replay: every bundled scenario confirms its expectations") {
  for (int n = 1; n <= 9; ++n) {
    const CliRun r = cli({"replay", "--example", std::to_string(n)});
    INFO("scenario " << n << "\n" << r.out);
    CHECK(r.out.find("FAIL") == std::string::npos);
    const bool violating = n >= 2 && n <= 5;
    CHECK(r.code == (violating ? 1 : 0));
  }
}

TEST_CASE("replay: the impossibility enumeration") {
  const CliRun c1 = cli({"replay", "--theorem6", "c1"});
  CHECK(c1.code == 0);
  CHECK(c1.out.find("0 survivors / 29 candidates") != std::string::npos);
  const CliRun c2 = cli({"replay", "--theorem6", "c2"});
  CHECK(c2.code == 0);
  CHECK(c2.out.find("0 survivors / 29 candidates") != std::string::npos);
  const CliRun ablated = cli({"replay", "--theorem6", "c1", "--ablate", "n2"});
  CHECK(ablated.code == 0);
  CHECK(ablated.out.find("survivor:") != std::string::npos);
}

TEST_CASE("eval prints models and exits zero") {
  const std::string path = write_temp("eval", builtin_example_text(2));
  const CliRun r = cli({"eval", path, "--formula", "bot"});
  CHECK(r.code == 0);
  CHECK(r.out.find("{}") != std::string::npos);
  const CliRun r2 = cli({"eval", path, "--formula", "b | n"});
  CHECK(r2.out.find("{w2, w3, w4, w5, w6, w7}") != std::string::npos);
}

TEST_CASE("update and iterate follow the script by default") {
  const std::string path = write_temp("upd", builtin_example_text(2));
  const CliRun u = cli({"update", path, "--state", "S", "--with", "b | n"});
  CHECK(u.code == 0);
  CHECK(u.out.find("belief: {w2, w4}") != std::string::npos);
  CHECK(u.out.find("order w2") != std::string::npos);

  const CliRun i = cli({"iterate", path, "--state", "S", "--with", "b | n",
                        "--then", "n"});
  CHECK(i.code == 0);
  CHECK(i.out.find("{w2, w4}") != std::string::npos);
  CHECK(i.out.find("{w2, w3}") != std::string::npos);

  const CliRun op1 = cli({"update", path, "--state", "S", "--with", "b | n",
                          "--op", "op1"});
  CHECK(op1.code == 0);
  CHECK(op1.out.find("belief: {w2, w4}") != std::string::npos);

  // Unknown state: a validation error.
  const CliRun bad = cli({"update", path, "--state", "X", "--with", "b"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("unknown state") != std::string::npos);
}

TEST_CASE("check reports violations with exit code one") {
  const std::string path = write_temp("chk", builtin_example_text(2));
  const CliRun good = cli({"check", path, "--postulate", "u1"});
  CHECK(good.code == 0);
  CHECK(good.out.find("holds-exhaustively") != std::string::npos);

  const CliRun bad = cli({"check", path, "--postulate", "c1"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("violated") != std::string::npos);

  const CliRun all = cli({"check", path, "--all", "--state", "S"});
  CHECK(all.code == 1);  // c1 fails among the fifteen

  const CliRun unknown = cli({"check", path, "--postulate", "zz"});
  CHECK(unknown.code == 2);
}

TEST_CASE("cr checks a single transition") {
  const std::string path = write_temp("cr", builtin_example_text(2));
  const CliRun r = cli({"cr", path, "--condition", "cr1", "--state", "S",
                        "--with", "b | n"});
  CHECK(r.code == 1);
  CHECK(r.out.find("violated") != std::string::npos);
  const CliRun lex = cli({"cr", path, "--condition", "lexr", "--state", "S",
                          "--with", "b | n", "--op", "op1"});
  CHECK(lex.code == 0);
}

TEST_CASE("harness exits cleanly when verdicts agree") {
  const std::string path = write_temp("har", builtin_example_text(2));
  const CliRun r = cli({"harness", path, "--state", "S"});
  CHECK(r.code == 0);
  CHECK(r.out.find("0 disagreements") != std::string::npos);

  const CliRun some = cli({"harness", path, "--state", "S", "--pairs",
                           "c1,lex"});
  CHECK(some.code == 0);
  CHECK(some.out.find("2 agreements") != std::string::npos);
}

TEST_CASE("abstract-world scenarios work through every checking command") {
  const std::string path =
      write_temp("abstract", print_scenario(theorem6_scenario()));
  const CliRun chk =
      cli({"check", path, "--postulate", "u1", "--op", "op1"});
  CHECK(chk.code == 0);
  CHECK(chk.out.find("holds-exhaustively") != std::string::npos);

  const CliRun cr = cli({"cr", path, "--condition", "cr1", "--state", "S",
                         "--with", "{w3, w4, w5, w6}", "--op", "op1"});
  CHECK(cr.code == 1);  // the famous transition breaks the first condition

  const CliRun upd = cli({"update", path, "--state", "S", "--with",
                          "{w3, w4, w5, w6}", "--op", "op1"});
  CHECK(upd.code == 0);
  CHECK(upd.out.find("belief: {w3}") != std::string::npos);
}

TEST_CASE("random emits a parseable deterministic scenario") {
  const CliRun a = cli({"random", "--seed", "7", "--script-entries", "1"});
  const CliRun b = cli({"random", "--seed", "7", "--script-entries", "1"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const std::string path = write_temp("rand", a.out);
  const CliRun check = cli({"check", path, "--postulate", "u1", "--op", "op1"});
  CHECK(check.code == 0);
}

TEST_CASE("json twin reports are stable and machine-readable") {
  const std::string path = write_temp("json", builtin_example_text(2));
  const CliRun a = cli({"--json", "check", path, "--postulate", "c1"});
  const CliRun b = cli({"--json", "check", path, "--postulate", "c1"});
  CHECK(a.code == 1);
  CHECK(a.out == b.out);
  CHECK(a.out.find("\"schema\": \"ibu-report/1\"") != std::string::npos);
  CHECK(a.out.find("\"verdict\": \"violated\"") != std::string::npos);

  const CliRun replay = cli({"--json", "replay", "--theorem6", "c1"});
  CHECK(replay.code == 0);
  CHECK(replay.out.find("\"survivors\": 0") != std::string::npos);
  CHECK(replay.out.find("\"candidates\": 29") != std::string::npos);
}

TEST_CASE("usage problems exit with code two") {
  CHECK(cli({"replay"}).code == 2);
  CHECK(cli({"eval", "/nonexistent.scn", "--formula", "b"}).code == 2);
  CHECK(cli({"nonsense"}).code == 2);

  const std::string bad = write_temp("bad", "atoms: b\nstate S {");
  const CliRun r = cli({"eval", bad, "--formula", "b"});
  CHECK(r.code == 2);
  CHECK(r.err.find("offset") != std::string::npos);
}

TEST_CASE("replay --file runs user expectations") {
  const std::string good = write_temp("userfile", R"(
atoms: p q
state S {
  belief: {w0};
  order w0: [w0] < [w1] < [w2, w3];
}
expect {
  update S with p | q == {w1};
}
)");
  CHECK(cli({"replay", "--file", good}).code == 0);

  const std::string failing = write_temp("userfile2", R"(
atoms: p q
state S {
  belief: {w0};
  order w0: [w0] < [w1] < [w2, w3];
}
expect {
  update S with p | q == {w2};
}
)");
  const CliRun r = cli({"replay", "--file", failing});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
}
