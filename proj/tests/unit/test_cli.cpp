#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lgame/cli.hpp"

using namespace lgame;
using namespace lgame::cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "lgame");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = dispatch(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / ("lgame_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

const std::string kModel = temp_file("m.pm", "domain: a b\nrelation R/1 partial\n  + (b)\n");

}  // namespace

TEST_CASE("solve exit codes") {
  auto r = run({"solve", "-m", kModel, "-f", "claim C0. C0"});
  CHECK(r.code == 20);
  CHECK(r.out.rfind("indeterminate\n", 0) == 0);
  CHECK(run({"solve", "-m", kModel, "-f", "exists x. R(x)"}).code == 10);
  CHECK(run({"solve", "-m", kModel, "-f", "forall x. R(x)"}).code == 20);
  CHECK(run({"solve", "-m", kModel, "-f", "not exists x. x = x"}).code == 11);
  r = run({"solve", "-f", "insert x. x = x", "--budget", "8"});
  CHECK(r.code == 10);
  CHECK(r.out.rfind("verified\n", 0) == 0);
  CHECK(run({"solve", "-f", "claim C0. insert x. C0", "--budget", "5"}).code == 21);
}

TEST_CASE("check output") {
  auto r = run({"check", "-m", kModel, "-f", "det R(x)", "--assign", "x=a"});
  CHECK(r.code == 0);
  CHECK(r.out == "plus=false minus=true\n");
  r = run({"check", "-m", kModel, "-f", "det R(a)"});
  CHECK(r.out == "plus=false minus=true\n");
  CHECK(run({"check", "-m", kModel, "-f", "R(b)"}).out == "plus=true minus=false\n");
  CHECK(run({"check", "-m", kModel, "-f", "R(b)", "--assign", "b=a"}).out ==
        "plus=false minus=false\n");
  CHECK(run({"check", "-m", kModel, "-f", "exists b. not R(b)"}).out == "plus=false minus=false\n");
  r = run({"check", "-m", kModel, "-f", "wnot R(x)", "--assign", "x=a", "--json"});
  CHECK(Json::parse(r.out) == Json{{"plus", true}, {"minus", true}});
}

TEST_CASE("error exit codes") {
  CHECK(run({}).code == 64);
  CHECK(run({"frobnicate"}).code == 64);
  CHECK(run({"solve", "-m", kModel}).code == 64);
  CHECK(run({"solve", "-m", "/nonexistent/model", "-f", "x = x"}).code == 64);
  CHECK(run({"solve", "-m", kModel, "-f", "exists . R(x)"}).code == 65);
  CHECK(run({"solve", "-m", kModel, "-f", "S(x)"}).code == 65);
  CHECK(run({"solve", "-m", kModel, "-f", "wnot R(x)"}).code == 65);
  CHECK(run({"check", "-m", kModel, "-f", "insert x. R(x)"}).code == 65);
  CHECK(run({"solve", "-m", kModel, "-f", "insert x. R(x)", "--exact"}).code == 64);
  CHECK(run({"solve", "-m", kModel, "-f", "x = x", "--assign", "x=zz"}).code == 64);
  CHECK(run({"solve", "-m", kModel, "-f", "x = x", "--delete-miss", "maybe"}).code == 64);
  const auto bad_model = temp_file("bad.pm", "domain: a\nrelation R/1\n + (q)\n");
  auto r = run({"encode", "-m", bad_model});
  CHECK(r.code == 65);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("convention flags") {
  CHECK(run({"solve", "-m", kModel, "-f", "delete x. exists y. y = y"}).code == 11);
  CHECK(run({"solve", "-m", kModel, "-f", "delete x. exists y. y = y", "--delete-miss", "ignore"})
            .code == 10);
  CHECK(run({"solve", "-m", kModel, "-f", "C1"}).code == 20);
  CHECK(run({"solve", "-m", kModel, "-f", "C1", "--claim-unbound", "lose"}).code == 11);
  CHECK(run({"solve", "-m", kModel, "-f", "insert x. not R(x)", "--budget", "4"}).code == 21);
  CHECK(run({"solve", "-m", kModel, "-f", "insert x. not R(x)", "--budget", "4", "--fresh-status",
             "negative"})
            .code == 10);
  CHECK(run({"solve", "-m", kModel, "-f", "exists x. x = y", "--assign", "y=b"}).code == 10);
}

TEST_CASE("json verdicts replay") {
  for (const char* f : {"exists x. R(x)", "not exists x. x = x", "forall x. (R(x) | not R(x))",
                        "exists x. delete x. forall y. not R(y)"}) {
    CAPTURE(f);
    auto r = run({"solve", "-m", kModel, "-f", f, "--json"});
    const Json j = Json::parse(r.out);
    CHECK(r.code == exit_code(j["outcome"] == "verified" ? Outcome::Verified
                              : j["outcome"] == "falsified" ? Outcome::Falsified
                              : j["outcome"] == "indeterminate" ? Outcome::IndeterminateProven
                                                                : Outcome::Unknown));
    if (j["trace"].is_null()) continue;
    auto p = load_problem(std::string("domain: a b\nrelation R/1 partial\n  + (b)\n"), f, {}, false, false);
    auto table = index_subformulas(p.formula);
    auto start = initial_position(p.structure, p.assignment, table);
    CHECK(hash_hex(position_hash(start)) == j["start"]);
    auto end = replay_choices(start, j["trace"]["moves"], table, {});
    auto legal = legal_moves(end, table);
    REQUIRE(std::holds_alternative<Terminal>(legal));
    CHECK(to_string(std::get<Terminal>(legal).winner) == j["trace"]["terminal"]);
    CHECK(hash_hex(position_hash(end)) == j["trace"]["moves"].back()["to"]);
  }
}

TEST_CASE("repeated runs are identical") {
  auto a = run({"solve", "-m", kModel, "-f", "exists x. deleteT R(x). forall y. not R(y)", "--json"});
  auto b = run({"solve", "-m", kModel, "-f", "exists x. deleteT R(x). forall y. not R(y)", "--json"});
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
}

TEST_CASE("render-nl and encode") {
  auto r = run({"render-nl", "-f", "claim C0. C0"});
  CHECK(r.out == "it is possible to verify the claim C0 which states that C0\n");
  r = run({"encode", "-m", kModel});
  CHECK(r.out == "n=2;R:1:?+;\n");
}

TEST_CASE("inferred vocabulary") {
  auto r = run({"solve", "-f", "insertT T(x,y). T(x,y)", "--budget", "3"});
  CHECK(r.code == 11);  // empty domain: no tuple to choose
  r = run({"solve", "-m", kModel, "-f", "exists x. insertT X(x). X(x)", "--aux-implicit"});
  CHECK(r.code == 10);
  CHECK(run({"solve", "-m", kModel, "-f", "exists x. insertT X(x). X(x)"}).code == 65);
}

TEST_CASE("machines from the command line") {
  const auto m = temp_file("loop.tm", "states: q0 q1 yes no\nstart: q0\naccept: yes\nreject: no\n"
                                      "delta: (q0,*) -> (q1,*,R)\ndelta: (q1,*) -> (q0,*,L)\n");
  auto r = run({"run-tm", "--machine", m, "--input", "ab"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("cycle", 0) == 0);
  r = run({"run-tm", "--machine", m, "-m", kModel, "--json"});
  CHECK(Json::parse(r.out)["input"] == "n=2;R:1:?+;");
  CHECK(run({"run-tm", "--machine", m}).code == 64);
  r = run({"correspond", "--curated", "--json"});
  CHECK(r.code == 0);
  for (const auto& pair : Json::parse(r.out)) {
    CHECK(pair["disagree"] == 0);
    CHECK(pair["inconclusive"] == 0);
  }
  r = run({"correspond", "--machine", m, "-f", "claim C0. C0", "--max-size", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("3/3 agree") != std::string::npos);
}

TEST_CASE("interactive play") {
  auto r = run({"play", "-m", kModel, "-f", "exists x. R(x)"}, "1\n");
  CHECK(r.code == 0);
  CHECK(r.out.find("[1] choose x := b") != std::string::npos);
  CHECK(r.out.find("play over: eloise wins") != std::string::npos);

  // The engine plays Eloise and picks the witness that wins.
  r = run({"play", "-m", kModel, "-f", "exists x. R(x)", "--role", "abelard"});
  CHECK(r.out.find("engine (eloise): choose x := b") != std::string::npos);
  CHECK(r.out.find("eloise wins") != std::string::npos);

  r = run({"play", "-m", kModel, "-f", "claim C0. C0", "--max-moves", "6"},
          "0\n0\nfoo\n9\n:hint\n0\n0\n0\n0\n");
  CHECK(r.out.find("not a choice") != std::string::npos);
  CHECK(r.out.find("choice out of range") != std::string::npos);
  CHECK(r.out.find("solver (budget 6): unknown") != std::string::npos);
  CHECK(r.out.find("move limit reached after 6 moves") != std::string::npos);

  r = run({"play", "-m", kModel, "-f", "(R(x) | exists x. R(x))"}, ":hint\n:quit\n");
  CHECK(r.out.find("suggested choice [1]") != std::string::npos);
  CHECK(r.out.find("quit") != std::string::npos);
}
