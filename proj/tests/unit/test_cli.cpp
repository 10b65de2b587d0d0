#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "testkit.hpp"
#include "ugkit/cli.hpp"

using namespace ugkit;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  for (auto& a : args) {
    if (a.starts_with("@")) a = testkit::corpus_path(a.substr(1));
  }
  std::ostringstream out, err;
  Outcome o;
  o.code = run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("info") {
  Outcome o = run_cli({"info", "@UG1.ug"});
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("unital: yes") != std::string::npos);
  CHECK(o.out.find("condition (L): holds") != std::string::npos);
  CHECK(o.out.find("singular: none") != std::string::npos);
}

TEST_CASE("condition L failure exits 1 with the witness") {
  Outcome o = run_cli({"condition-l", "@UG5.ug"});
  CHECK(o.code == kExitFails);
  CHECK(o.out.find("e") != std::string::npos);
}

TEST_CASE("edge matrix") {
  Outcome o = run_cli({"edge-matrix", "@UG2.ug"});
  CHECK(o.code == kExitOk);
  CHECK(o.out == "2\nlabels: e1 e2\n1 1\n1 0\n");
}

TEST_CASE("exit codes") {
  CHECK(run_cli({}).code == kExitUsage);
  CHECK(run_cli({"bogus"}).code == kExitUsage);
  CHECK(run_cli({"info", "@missing.ug"}).code == kExitUsage);
  CHECK(run_cli({"rep", "@UG5.ug"}).code == kExitCapability);
  CHECK(run_cli({"edge-matrix", "@UG7.ug"}).code == kExitCapability);
  CHECK(run_cli({"member", "@UG6.ug", "--set", "ray(t) \\ { t1 t2 }"}).code == kExitFails);
  CHECK(run_cli({"member", "@UG6.ug", "--set", "{ u }"}).code == kExitOk);
  CHECK(run_cli({"el-check", "@UG4.ug", "-X", "e"}).code == kExitCapability);
  CHECK(run_cli({"el-check", "@UG1.ug", "-X", "e,f"}).code == kExitOk);
  CHECK(run_cli({"approx", "@UG2.ug", "-F", "e1"}).code == kExitOk);
  CHECK(run_cli({"rep", "--check", "@UG4.ug"}).code == kExitOk);
  CHECK(run_cli({"desingularize", "--depth", "2", "@UG3.ug"}).code == kExitOk);
}

TEST_CASE("errors are positioned") {
  Outcome o = run_cli({"info", "@../tests/unit/data/empty_range.ug"});
  CHECK(o.code == kExitUsage);
  CHECK(o.err.find(":3:14: EmptyRange") != std::string::npos);
}

TEST_CASE("json envelopes") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--json", "info", "@UG1.ug"},
           {"--json", "condition-l", "@UG5.ug"},
           {"--json", "rep", "@UG5.ug"},
           {"--json", "approx", "@UG2.ug", "-F", "e1"},
           {"--json", "info", "@../tests/unit/data/empty_range.ug"}}) {
    Outcome o = run_cli(args);
    auto j = nlohmann::json::parse(o.out);
    CHECK(j.at("schema") == kReportSchema);
    CHECK(j.at("exit_code") == o.code);
    CHECK(j.at("command") == args[1]);
    CHECK((j.contains("result") != j.contains("error")));
    if (j.contains("error")) CHECK(j["error"].at("issues").is_array());
  }
}

TEST_CASE("output is byte-stable") {
  for (const auto& doc : testkit::corpus_documents()) {
    for (const char* cmd : {"info", "dot"}) {
      Outcome a = run_cli({"--json", cmd, "@" + doc + ".ug"});
      Outcome b = run_cli({"--json", cmd, "@" + doc + ".ug"});
      CHECK(a.out == b.out);
      CHECK(a.code == b.code);
    }
  }
}

TEST_CASE("conversions") {
  Outcome m = run_cli({"from-matrix", "@UG2.mat"});
  CHECK(m.code == kExitOk);
  CHECK(m.out.find("ultragraph UG2") == 0);
  Outcome g = run_cli({"from-graph", "@cycle3.graph"});
  CHECK(g.code == kExitOk);
  CHECK(parse_document(g.out).named_edges().size() == 4);
}

TEST_CASE("batch mode over a directory") {
  Outcome o = run_cli({"--all", "info", std::string(UGKIT_CORPUS_DIR)});
  CHECK(o.code == kExitOk);
  CHECK(o.out.find("UG1.ug") != std::string::npos);
}

}  // TEST_SUITE
