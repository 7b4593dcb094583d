#include "doctest.h"
#include "support.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "contset/complement.hpp"
#include "contset/continuity.hpp"
#include "contset/io.hpp"

using namespace contset;
using namespace contset::testing;

namespace {

std::string data(const std::string& name) { return std::string(CONTSET_DATA_DIR) + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// One sample invocation per command; every command must have one.
const std::map<std::string, std::vector<std::string>>& samples() {
  static const std::map<std::string, std::vector<std::string>> s{
      {"trim", {data("finA.nba")}},
      {"empty", {data("evenA.dba")}},
      {"member", {data("evenA.dba"), "(ab)"}},
      {"intersect", {data("evenA.dba"), data("infB.dba")}},
      {"union", {data("evenA.dba"), data("finA.nba")}},
      {"complement", {data("evenA.dba")}},
      {"included", {data("evenA.dba"), data("infB.dba")}},
      {"equiv", {data("evenA.dba"), data("evenA.dba")}},
      {"closure", {data("startsA.dba")}},
      {"dense-in", {data("evenA.dba"), data("finA.nba")}},
      {"isolated", {data("isolated.muller")}},
      {"dom", {data("infA.sync")}},
      {"im", {data("infA.sync")}},
      {"eval", {data("infA.sync"), "(ab)"}},
      {"functional", {data("idOrSwap.sync")}},
      {"disc-auto", {data("infA.sync")}},
      {"cont-set", {data("id.sync")}},
      {"is-cont", {data("infA.sync")}},
      {"is-cont-at", {data("infA.sync"), "(a)"}},
      {"pi2-witness", {data("evenA.dba")}},
      {"dense-partition", {data("universal.muller")}},
      {"domain-witness", {data("isolated.muller"), data("evenA.dba")}},
      {"globalize", {data("startsA.dba"), data("startsA.dba")}},
      {"pcp-solve", {data("solv.pcp")}},
      {"pcp-build", {data("solv.pcp")}},
      {"pcp-build-nested", {data("solv.pcp")}},
      {"pcp-point", {data("solv.pcp"), "12"}},
      {"pcp-falsify", {data("solv.pcp"), "1"}},
      {"normalize", {"ab(ab)"}},
      {"lasso-eq", {"(ab)", "a(ba)"}},
      {"divergence", {"(ab)", "(a)"}},
      {"to-nba", {data("eventuallyA.muller")}},
      {"prefix-dfa", {data("evenA.dba")}},
      {"nonfunctional", {data("idOrSwap.sync")}},
      {"trim-transducer", {data("infA.sync")}},
      {"pcp-point-nested", {data("solv.pcp"), "12", "123"}},
  };
  return s;
}

}  // namespace

TEST_CASE("registry") {
  std::set<std::string> names, operations;
  for (const auto& c : cli::commands()) {
    CHECK(names.insert(c.name).second);
    CHECK(operations.insert(c.operation).second);
    CHECK_FALSE(c.summary.empty());
  }
  for (const char* required :
       {"trim", "empty", "member", "intersect", "union", "complement", "included", "equiv",
        "closure", "dense-in", "isolated", "dom", "im", "eval", "functional", "disc-auto",
        "cont-set", "is-cont", "is-cont-at", "pi2-witness", "dense-partition", "domain-witness",
        "globalize", "pcp-solve", "pcp-build", "pcp-build-nested", "pcp-point", "pcp-falsify"})
    CHECK(names.count(required) == 1);
  // Every command runs on sample data and answers with 0 or 1.
  for (const auto& c : cli::commands()) {
    CAPTURE(c.name);
    auto it = samples().find(c.name);
    REQUIRE(it != samples().end());
    std::vector<std::string> args{c.name};
    args.insert(args.end(), it->second.begin(), it->second.end());
    auto r = run(args);
    CAPTURE(r.err);
    CHECK((r.code == 0 || r.code == 1));
    CHECK_FALSE(r.out.empty());
    CHECK(r.err.empty());
  }
  CHECK(samples().size() == cli::commands().size());
}

TEST_CASE("boolean queries") {
  auto r = run({"member", data("evenA.dba"), "(ab)"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  r = run({"member", data("evenA.dba"), "a(b)"});
  CHECK(r.code == 1);
  CHECK(r.out == "false\n");

  r = run({"equiv", data("evenA.dba"), data("evenA.dba")});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  r = run({"included", data("finA.nba"), data("evenA.dba")});
  REQUIRE(r.code == 1);
  auto out = lines(r.out);
  REQUIRE(out.size() == 2);
  CHECK(out[0] == "false");
  auto witness = LassoWord::parse(ab(), out[1]);
  CHECK(oracle_accepts(fin_a(), witness));
  CHECK_FALSE(oracle_accepts(even_a().nba(), witness));

  r = run({"empty", data("evenA.dba")});
  CHECK(r.code == 1);
  REQUIRE(lines(r.out).size() == 2);
  CHECK(oracle_accepts(even_a().nba(), LassoWord::parse(ab(), lines(r.out)[1])));

  r = run({"is-cont", data("id.sync")});
  CHECK(r.out == "true\n");
  r = run({"is-cont", data("infA.sync")});
  CHECK(r.code == 1);
  CHECK(lines(r.out).size() == 2);

  r = run({"functional", data("idOrSwap.sync")});
  CHECK(r.code == 1);
  CHECK(lines(r.out).size() == 4);
  r = run({"functional", data("infA.sync")});
  CHECK(r.code == 0);
  r = run({"nonfunctional", data("idOrSwap.sync"), "--max", "2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 4);

  CHECK(run({"lasso-eq", "(ab)", "a(ba)"}).code == 0);
  CHECK(run({"lasso-eq", "(ab)", "(ba)"}).code == 1);
  CHECK(run({"divergence", "(ab)", "a(b)"}).out == "2\n");
  CHECK(run({"divergence", "(ab)", "abab(ab)"}).out == "equal\n");
  CHECK(run({"normalize", "ab(ab)"}).out == "(ab)\n");
  CHECK(run({"normalize", "x1 y (y)", "--alphabet", "x1 y"}).out == "x1 ( y )\n");
}

TEST_CASE("automaton outputs parse back") {
  auto r = run({"complement", data("evenA.dba")});
  REQUIRE(r.code == 0);
  CHECK(is_equivalent(parse_as_nba(r.out), fin_a()));
  r = run({"complement", data("evenA.dba"), "--method", "rank-based"});
  REQUIRE(r.code == 0);
  CHECK(is_equivalent(parse_as_nba(r.out), fin_a()));
  r = run({"complement", data("eventuallyA.muller")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("kind: muller") != std::string::npos);

  r = run({"pi2-witness", data("evenA.dba"), "--letter", "b"});
  REQUIRE(r.code == 0);
  auto t = parse_as_sync(r.out);
  CHECK(check_functional(t));
  CHECK(is_equivalent(continuity_set(t), even_a().nba()));

  r = run({"cont-set", data("infA.sync")});
  REQUIRE(r.code == 0);
  CHECK(is_empty(parse_as_nba(r.out)));

  r = run({"dense-partition", data("universal.muller")});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# second part") != std::string::npos);

  r = run({"trim", data("evenA.dba"), "--dot"});
  CHECK(r.out.rfind("digraph", 0) == 0);

  r = run({"eval", data("infA.sync"), "(ab)"});
  CHECK(r.out == "(a)\n");
  r = run({"eval", data("idOrSwap.sync"), "(a)", "--bound", "1"});
  CHECK(lines(r.out).size() == 2);
  CHECK(lines(r.out)[1] == "...");
  r = run({"eval", data("startsA.dba"), "(a)"});
  CHECK(r.code == 2);
}

TEST_CASE("pcp commands") {
  auto r = run({"pcp-solve", data("pcp1.pcp"), "--max", "9", "--primitive"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"1 2 3", "3 2 1", "1 1 2 2 3 3", "3 3 2 2 1 1",
                                                 "1 1 1 2 2 2 3 3 3", "3 3 3 2 2 2 1 1 1"});
  r = run({"pcp-solve", data("pcp1.pcp"), "--max", "9"});
  CHECK(lines(r.out).size() == pcp_solve_bounded(pcp_one(), 9).size());
  CHECK(run({"pcp-solve", data("never.pcp"), "--max", "5"}).out.empty());

  CHECK(run({"pcp-point", data("solv.pcp"), "1,2"}).code == 0);
  CHECK(run({"pcp-point", data("solv.pcp"), "1"}).code == 1);
  CHECK(run({"pcp-point", data("solv.pcp"), "3"}).code == 2);
  CHECK(run({"pcp-point-nested", data("solv.pcp"), "12", "11"}).code == 1);

  r = run({"pcp-falsify", data("solv.pcp"), "1", "--max", "3"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 7);
  CHECK(run({"pcp-falsify", data("solv.pcp"), "12"}).code == 1);

  r = run({"pcp-build", data("solv.pcp")});
  REQUIRE(r.code == 0);
  auto t = parse_transducer(r.out);
  auto x = LassoWord::parse(t.input_alphabet(), "c1 c2 (a' b')");
  auto y = evaluate(t, x, 2);
  REQUIRE(y.outputs.size() == 1);
  CHECK(y.outputs[0].to_string() == "a b b ( a' b' )");
}

TEST_CASE("errors and files") {
  auto r = run({"no-such-command"});
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run({}).code == 2);
  CHECK(run({"member", data("evenA.dba")}).code == 2);
  CHECK(run({"member", data("missing.nba"), "(a)"}).code == 2);
  CHECK(run({"member", data("evenA.dba"), "(c)"}).code == 2);
  CHECK(run({"complement", data("evenA.dba"), "--method", "magic"}).code == 2);

  const std::string bad = "/tmp/contset_cli_bad.nba";
  std::ofstream(bad) << "kind: nba\nalphabet: a b\nstates: two\n";
  r = run({"trim", bad});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 3") != std::string::npos);
  CHECK(lines(r.err).size() == 1);

  r = run({"domain-witness", data("isolated.muller"), data("infB.dba")});
  CHECK(r.code == 2);
  CHECK(r.err.find("isolated point") != std::string::npos);
  r = run({"functional", data("solv.pcp")});
  CHECK(r.code == 2);

  const std::string target = "/tmp/contset_cli_out.nba";
  std::remove(target.c_str());
  r = run({"closure", data("evenA.dba"), "--out", target});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(target);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(is_equivalent(parse_as_nba(text.str()), Nba::universal(ab())));

  r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("pcp-solve") != std::string::npos);
}
