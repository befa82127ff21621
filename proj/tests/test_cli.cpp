#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "sba/cli.hpp"

using namespace sba;

namespace {

struct Run {
  int code = 0;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

bool has(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("validate reports both checks and exits on the special-biserial verdict") {
  Run r = invoke({"validate", "data/ex1.sba"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "special-biserial: PASS"));
  CHECK(has(r.out, "gentle: FAIL"));
  CHECK(r.err.empty());

  Run g = invoke({"validate", "data/ex3.sba"});
  CHECK(g.code == 0);
  CHECK(has(g.out, "gentle: PASS"));

  Run missing = invoke({"validate", "data/no_such_file.sba"});
  CHECK(missing.code == 2);
  CHECK(has(missing.err, "error:"));
  CHECK(missing.out.empty());
}

TEST_CASE("stable-end reproduces the pinned dimensions") {
  Run r = invoke({"stable-end", "data/ex1.sba", "--string", "x- y x- y"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "end: 7"));
  CHECK(has(r.out, "proj-trivial: 6"));
  CHECK(has(r.out, "stable: 1"));
  CHECK(has(r.out, "verdict: GENTLE_CONFIRMED"));
  CHECK(has(r.out, "extracted presentation:"));

  Run two = invoke({"stable-end", "data/commsquare.sba", "--string", "b d-", "--string", "a- c"});
  CHECK(two.code == 0);
  CHECK(has(two.out, "summands: 2"));
  CHECK(has(two.out, "verdict: EXT_NONZERO"));
  CHECK(has(two.out, "ext: src=1 dst=0 dim=1"));
}

TEST_CASE("ext1 and stable-hom print the pinned dimensions") {
  Run e = invoke({"ext1", "data/ex3.sba", "--from", "1(1,+1)", "--to", "1(1,+1)"});
  CHECK(e.code == 0);
  CHECK(has(e.out, "ext1: 1"));

  Run s = invoke({"stable-hom", "data/ex1.sba", "--from", "x- y x- y", "--to", "x- y x- y"});
  CHECK(s.code == 0);
  CHECK(has(s.out, "hom: 7"));
  CHECK(has(s.out, "proj-trivial: 6"));
  CHECK(has(s.out, "stable: 1"));
}

TEST_CASE("gentle-check exit code follows the verdict") {
  CHECK(invoke({"gentle-check", "data/ex3.sba"}).code == 0);
  Run bad = invoke({"gentle-check", "data/ex1.sba"});
  CHECK(bad.code == 1);
  CHECK(has(bad.out, "gentle: FAIL"));
}

TEST_CASE("hom reports the dual-route agreement") {
  Run r = invoke({"hom", "data/commsquare.sba", "--from", "b d-", "--to", "a- c"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "graph maps: 2"));
  CHECK(has(r.out, "linear dim: 2"));
  CHECK(has(r.out, "agreement: PASS"));
}

TEST_CASE("strings and signs enumerate deterministically") {
  Run s = invoke({"strings", "data/ex3.sba", "--max-len", "4"});
  CHECK(s.code == 0);
  CHECK(has(s.out, "1(1,+1)"));
  CHECK(has(s.out, "total: 2"));

  Run g = invoke({"signs", "data/commsquare.sba"});
  CHECK(g.code == 0);
  CHECK(has(g.out, "arrow a: 1 -> 2 sigma="));
  CHECK(has(g.out, "arrow d: 3 -> 4 sigma="));
}

TEST_CASE("module builds strings and bands") {
  Run s = invoke({"module", "data/ex1.sba", "--string", "x- y x- y"});
  CHECK(s.code == 0);
  CHECK(has(s.out, "module: M(x- y x- y)"));
  CHECK(has(s.out, "dimension: 5"));

  Run b = invoke({"module", "data/ex2.sba", "--band", "x- x- y x- y y", "--lambda", "1"});
  CHECK(b.code == 0);
  CHECK(has(b.out, "dimension: 6"));

  Run dump = invoke({"--dump-module", "module", "data/ex3.sba", "--string", "1(1,+1)"});
  CHECK(dump.code == 0);
  CHECK(has(dump.out, "action x:"));

  Run neither = invoke({"module", "data/ex1.sba"});
  CHECK(neither.code == 2);
  CHECK(has(neither.err, "module needs --string or --band"));
}

TEST_CASE("overlap-ext passes on the linear quiver instance") {
  Run r = invoke({"overlap-ext", "data/a3.sba", "--from", "b", "--to", "a"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "two-sided pairs: 1"));
  CHECK(has(r.out, "built=yes exact=yes nonsplit=yes ext1=1"));
  CHECK(has(r.out, "result: PASS"));
}

TEST_CASE("json output carries versioned schemas and exact values") {
  Run v = invoke({"--format", "json", "validate", "data/ex1.sba"});
  CHECK(v.code == 0);
  nlohmann::json doc = nlohmann::json::parse(v.out);
  CHECK(doc["schema"] == "sba/validate/v1");
  CHECK(doc["special_biserial"]["ok"] == true);
  CHECK(doc["gentle"]["ok"] == false);

  Run se = invoke({"--format", "json", "stable-end", "data/ex1.sba", "--string", "x- y x- y"});
  nlohmann::json sd = nlohmann::json::parse(se.out);
  CHECK(sd["schema"] == "sba/stable-end/v1");
  CHECK(sd["end"] == 7);
  CHECK(sd["proj_trivial"] == 6);
  CHECK(sd["stable"] == 1);
  CHECK(sd["verdict"] == "GENTLE_CONFIRMED");
  CHECK(sd["extracted"]["vertices"] == 1);
  CHECK(sd["extracted"]["arrows"] == 0);

  Run e = invoke({"--format", "json", "ext1", "data/ex3.sba", "--from", "1(1,+1)", "--to",
               "1(1,+1)"});
  nlohmann::json ed = nlohmann::json::parse(e.out);
  CHECK(ed["schema"] == "sba/ext1/v1");
  CHECK(ed["dimension"] == 1);

  Run h = invoke({"--format", "json", "hom", "data/ex1.sba", "--from", "x- y x- y", "--to",
               "x- y x- y"});
  nlohmann::json hd = nlohmann::json::parse(h.out);
  CHECK(hd["schema"] == "sba/hom/v1");
  CHECK(hd["graph_maps"] == 7);
  CHECK(hd["agreement"] == true);
}

TEST_CASE("theorem-scan is reproducible through the CLI") {
  std::vector<std::string> args{"theorem-scan", "--trials", "3", "--max-len", "5"};
  Run a = invoke(args);
  CHECK(a.code == 0);
  CHECK(has(a.out, "summary: trials=3"));
  CHECK(has(a.out, "counterexamples=0"));
  Run b = invoke(args);
  CHECK(a.out == b.out);

  Run other = invoke({"--seed", "43", "theorem-scan", "--trials", "3", "--max-len", "5"});
  CHECK(other.out != a.out);

  Run js = invoke({"--format", "json", "theorem-scan", "--trials", "2", "--max-len", "4"});
  CHECK(js.code == 0);
  nlohmann::json jd = nlohmann::json::parse(js.out);
  CHECK(jd["schema"] == "sba/scan-report/v1");
  CHECK(jd["summary"]["counterexamples"] == 0);
  CHECK(jd["config"]["seed"] == 42);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"no-such-command"}).code == 2);
  CHECK(invoke({"validate"}).code == 2);
  CHECK(invoke({"--field", "fp:6", "validate", "data/ex1.sba"}).code == 2);
  CHECK(invoke({"--field", "gibberish", "validate", "data/ex1.sba"}).code == 2);
  CHECK(invoke({"--format", "yaml", "validate", "data/ex1.sba"}).code == 2);
  CHECK(invoke({"ext1", "data/ex3.sba", "--from", "zz", "--to", "x"}).code == 2);
  CHECK(invoke({"stable-end", "data/ex2.sba", "--string", "x- x- y x- y y"}).code == 2);

  Run help = invoke({"--help"});
  CHECK(help.code == 0);
  CHECK(has(help.out, "Usage:"));
}

TEST_CASE("prime field arithmetic flows through the CLI") {
  Run r = invoke({"--field", "fp:7", "stable-end", "data/ex1.sba", "--string", "x- y x- y"});
  CHECK(r.code == 0);
  CHECK(has(r.out, "end: 7"));
  CHECK(has(r.out, "stable: 1"));
  CHECK(has(r.out, "verdict: GENTLE_CONFIRMED"));
}
