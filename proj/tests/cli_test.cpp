#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gtest/gtest.h"
#include "hts/cli.hpp"
#include "hts/errors.hpp"

namespace hts::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fixture(const std::string& name) { return std::string(HTS_FIXTURE_DIR) + "/" + name; }

struct Result {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hts_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& body) {
    const auto path = (dir_ / name).string();
    std::ofstream(path, std::ios::binary) << body;
    return path;
  }

  fs::path dir_;
};

TEST_F(CliTest, CheckValidAndInvalid) {
  const auto ok = invoke({"check", fixture("valid_square.json")});
  EXPECT_EQ(ok.code, kOk);
  EXPECT_TRUE(ok.doc()["valid"].get<bool>());

  const auto bad = invoke({"check", fixture("invalid_square.json")});
  EXPECT_EQ(bad.code, kPredicateInvalid);
  const auto doc = bad.doc();
  EXPECT_FALSE(doc["valid"].get<bool>());
  EXPECT_EQ(doc["violation"]["p"], json::array({1, 1}));
  EXPECT_EQ(doc["violation"]["lhs"], 0);
  EXPECT_EQ(doc["violation"]["rhs"], 1);
}

TEST_F(CliTest, CheckTotalMismatchReportsFullSides) {
  const auto r = invoke({"check", fixture("invalid_total.txt"), "--format", "text"});
  EXPECT_EQ(r.code, kPredicateInvalid);
  EXPECT_EQ(r.doc()["full"]["lhs"], 3);
  EXPECT_EQ(r.doc()["full"]["rhs"], 4);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(invoke({"check", fixture("truncated.json")}).code, kInputError);
  EXPECT_EQ(invoke({"check", fixture("does_not_exist.json")}).code, kInputError);
  EXPECT_EQ(invoke({"check", fixture("unsorted_square.json")}).code, kInputError);
  EXPECT_EQ(invoke({"check", fixture("valid_square.json"), "--format", "yaml"}).code, kInputError);
  EXPECT_EQ(invoke({"frobnicate"}).code, kInputError);
  EXPECT_EQ(invoke({}).code, kInputError);
  const auto wrong_k = write("k.json", R"({"k": 3, "n": [2, 2], "alpha": [1, 1], "kind": "losing", "lists": []})");
  EXPECT_EQ(invoke({"check", wrong_k}).code, kInputError);
  const auto negative = write("neg.json", R"({"k": 2, "n": [2, 2], "alpha": [1, 1], "kind": "losing",
                                              "lists": [[-1, 3], [1, 1]]})");
  EXPECT_EQ(invoke({"check", negative}).code, kInputError);
}

TEST_F(CliTest, SortFlag) {
  const auto r = invoke({"check", fixture("unsorted_square.json"), "--sort"});
  EXPECT_EQ(r.code, kOk);
}

TEST(ParseTextTest, HeaderCommentsAndErrors) {
  const auto inst = parse_instance_text("# comment\n\n2 2 2 1 1 score\n0 2\n  1 1\n", false);
  EXPECT_EQ(inst.shape, Shape::make({2, 2}, {1, 1}));
  EXPECT_EQ(inst.lists, (ScoreLists{ListKind::score, {{0, 2}, {1, 1}}}));
  EXPECT_EQ(parse_instance_text("1 3 2\n0 1 2\n", false).lists.kind, ListKind::losing);
  EXPECT_THROW(parse_instance_text("", false), InputError);
  EXPECT_THROW(parse_instance_text("2 2 2 1\n0 2\n1 1\n", false), InputError);
  EXPECT_THROW(parse_instance_text("2 2 2 1 1 losing extra\n0 2\n1 1\n", false), InputError);
  EXPECT_THROW(parse_instance_text("2 2 2 1 1\n0 2x\n1 1\n", false), InputError);
  EXPECT_THROW(parse_instance_text("2 2 2 1 1\n0 2\n", false), InputError);
  EXPECT_THROW(parse_instance_text("2 2 2 1 1 draws\n0 2\n1 1\n", false), InputError);
}

TEST(ParseJsonTest, Errors) {
  EXPECT_NO_THROW(parse_instance_json(R"({"k":1,"n":[3],"alpha":[2],"kind":"losing","lists":[[0,1,2]]})", false));
  EXPECT_THROW(parse_instance_json("[]", false), InputError);
  EXPECT_THROW(parse_instance_json(R"({"k":1,"n":[3],"alpha":[2],"lists":[[0,1,2]]})", false), InputError);
  EXPECT_THROW(parse_instance_json(R"({"k":1,"n":[3],"alpha":[2],"kind":"losing","lists":[[0,1.5,2]]})", false),
               InputError);
  EXPECT_THROW(parse_instance_json(R"({"k":1,"n":[3],"alpha":[0],"kind":"losing","lists":[[0,1,2]]})", false),
               InputError);
}

TEST_F(CliTest, RealizeThenVerify) {
  for (const std::string method : {"inductive", "flow"}) {
    for (const std::string form : {"arcs", "losers"}) {
      const auto r = invoke({"realize", fixture("valid_square.json"), "--method", method, "--emit", form});
      ASSERT_EQ(r.code, kOk) << r.err;
      const auto doc = r.doc();
      EXPECT_EQ(doc[form].size(), 4u);
      const auto path = write("witness.json", r.out);
      const auto v = invoke({"verify", path});
      EXPECT_EQ(v.code, kOk) << v.out;
      EXPECT_TRUE(v.doc()["matches_expected"].get<bool>());
      EXPECT_EQ(v.doc()["losing"], json::parse("[[0,2],[1,1]]"));
      EXPECT_EQ(v.doc()["score"], json::parse("[[0,2],[1,1]]"));
      EXPECT_EQ(v.doc()["totals"]["losing"], 4);
      EXPECT_EQ(v.doc()["totals"]["score"], 4);
    }
  }
}

TEST_F(CliTest, RealizeForcedAndScoreInput) {
  const auto forced = invoke({"realize", fixture("valid_square_forced.json"), "--emit", "losers"});
  ASSERT_EQ(forced.code, kOk);
  const auto forced_doc = forced.doc();
  for (const auto& loser : forced_doc["losers"]) EXPECT_EQ(loser[0], 2);

  const auto score = invoke({"realize", fixture("valid_square_score.json")});
  ASSERT_EQ(score.code, kOk);
  EXPECT_EQ(score.doc()["converted_from"], "score");
  EXPECT_EQ(score.doc()["expected_losing"], json::parse("[[0,2],[1,1]]"));
  EXPECT_NE(score.err.find("converted"), std::string::npos);
}

TEST_F(CliTest, RealizeInvalidExitsOne) {
  const auto r = invoke({"realize", fixture("invalid_square.json")});
  EXPECT_EQ(r.code, kPredicateInvalid);
  EXPECT_EQ(r.doc()["violation"]["p"], json::array({1, 1}));
  EXPECT_EQ(invoke({"realize", fixture("invalid_square.json"), "--method", "flow"}).code, kPredicateInvalid);
}

TEST_F(CliTest, VerifyReportsEditedAndMissingArcs) {
  const auto r = invoke({"realize", fixture("valid_square.json"), "--emit", "arcs"});
  ASSERT_EQ(r.code, kOk);
  auto doc = json::parse(r.out);

  // Reverse one arc: its loser changes, so the lists differ.
  auto edited = doc;
  auto& arc = edited["arcs"][0];
  std::reverse(arc.begin(), arc.end());
  const auto e = invoke({"verify", write("edited.json", edited.dump())});
  EXPECT_EQ(e.code, kPredicateInvalid);
  EXPECT_TRUE(e.doc()["structurally_valid"].get<bool>());
  EXPECT_FALSE(e.doc()["matches_expected"].get<bool>());

  auto missing = doc;
  missing["arcs"].erase(missing["arcs"].begin() + 2);
  const auto m = invoke({"verify", write("missing.json", missing.dump())});
  EXPECT_EQ(m.code, kPredicateInvalid);
  EXPECT_FALSE(m.doc()["structurally_valid"].get<bool>());
  ASSERT_EQ(m.doc()["issues"].size(), 1u);
  EXPECT_EQ(m.doc()["issues"][0]["kind"], "missing");

  auto twice = doc;
  twice["arcs"][1] = twice["arcs"][0];
  const auto t = invoke({"verify", write("twice.json", twice.dump())});
  EXPECT_EQ(t.code, kPredicateInvalid);
  const auto report = t.doc();
  std::vector<std::string> kinds;
  for (const auto& issue : report["issues"]) kinds.push_back(issue["kind"]);
  EXPECT_EQ(kinds, (std::vector<std::string>{"duplicate_selection", "missing"}));

  auto outside = doc;
  outside["arcs"][3][0] = json::array({3, 1});
  const auto o = invoke({"verify", write("outside.json", outside.dump())});
  EXPECT_EQ(o.code, kPredicateInvalid);
  EXPECT_EQ(o.doc()["issues"][0]["kind"], "out_of_range");
}

TEST_F(CliTest, ConvertBothWays) {
  const auto r = invoke({"convert", fixture("valid_square.json")});
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(r.doc()["kind"], "score");
  EXPECT_EQ(r.doc()["lists"], json::parse("[[0,2],[1,1]]"));
  const auto back = invoke({"convert", write("score.json", r.out)});
  ASSERT_EQ(back.code, kOk);
  EXPECT_EQ(back.doc()["kind"], "losing");
  const auto forced = invoke({"convert", fixture("valid_square_forced.json")});
  EXPECT_EQ(forced.doc()["lists"], json::parse("[[2,2],[0,0]]"));
}

TEST_F(CliTest, EnumerateAndBudget) {
  const auto r = invoke({"enumerate", "--n", "2,2", "--alpha", "1,1"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.doc()["count"], 7);
  EXPECT_EQ(r.doc()["assignments"], 16);
  EXPECT_EQ(r.doc()["lists"].size(), 7u);
  const auto jobs = invoke({"enumerate", "--n", "2,2", "--alpha", "1,1", "--jobs", "3"});
  EXPECT_EQ(jobs.out, r.out);
  const auto scores = invoke({"enumerate", "--n", "2,2", "--alpha", "1,1", "--kind", "score"});
  EXPECT_EQ(scores.doc()["count"], 7);
  EXPECT_EQ(invoke({"enumerate", "--n", "2,2,2", "--alpha", "1,1,1", "--budget", "100"}).code, kResourceLimit);
}

TEST_F(CliTest, RandomIsByteStable) {
  const std::vector<std::string> args = {"random", "--n", "3,2", "--alpha", "2,1", "--seed", "77"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  ASSERT_EQ(a.code, kOk);
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other.back() = "78";
  EXPECT_NE(invoke(other).out, a.out);
  const auto v = invoke({"verify", write("random.json", a.out)});
  EXPECT_EQ(v.code, kOk);
  EXPECT_TRUE(v.doc()["matches_expected"].get<bool>());
}

TEST_F(CliTest, CapacityIsResourceLimit) {
  EXPECT_EQ(invoke({"random", "--n", "200,200", "--alpha", "100,100", "--seed", "1"}).code, kResourceLimit);
  EXPECT_EQ(invoke({"random", "--n", "40,40", "--alpha", "20,20", "--seed", "1"}).code, kResourceLimit);
}

TEST_F(CliTest, CheckIsStableAcrossJobs) {
  const auto one = invoke({"check", fixture("valid_wide.json"), "--jobs", "1"});
  const auto four = invoke({"check", fixture("valid_wide.json"), "--jobs", "4"});
  EXPECT_EQ(one.code, kOk);
  EXPECT_EQ(one.out, four.out);
}

}  // namespace
}  // namespace hts::cli
