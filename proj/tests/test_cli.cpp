#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "egg/cli.hpp"
#include "egg/pruning.hpp"
#include "egg/serialization.hpp"
#include "fixtures.hpp"

namespace egg {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run egg(std::vector<std::string> args) {
  std::ostringstream out, err;
  args.insert(args.begin(), "-q");
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fix1_path(const char* name) { return (test::data_dir() / "fix1" / name).string(); }
std::string defect_path(const char* name) { return (test::data_dir() / "defects" / name).string(); }

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("egg_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const char* name) const { return (dir_ / name).string(); }
  fs::path dir_;
};

TEST_F(CliTest, ValidateCleanAndDefective) {
  const auto ok = egg({"validate", fix1_path("graph.egg.json")});
  EXPECT_EQ(ok.code, cli::kExitOk);
  EXPECT_NE(ok.out.find("0 violation(s)"), std::string::npos) << ok.out;

  const auto bad = egg({"validate", defect_path("double_containment.egg.json")});
  EXPECT_EQ(bad.code, cli::kExitFailure);
  EXPECT_NE(bad.out.find("error double-containment object_2"), std::string::npos) << bad.out;

  EXPECT_EQ(egg({"validate", path("missing.json")}).code, cli::kExitUsage);
}

TEST_F(CliTest, BuildMatchesShippedGraph) {
  const auto r = egg({"build", "--manifest", fix1_path("scene.manifest.json"), "--records", fix1_path("events.records.jsonl"),
                      "--out", path("g.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(test::read_file(path("g.json")), test::read_file(fix1_path("graph.egg.json")));
}

TEST_F(CliTest, PruneWithInlineIq) {
  const auto r = egg({"prune", fix1_path("graph.egg.json"), "--time", "0:1000", "--locations", "room_1", "--objects",
                      "object_1,object_2", "--events", "event_1", "--out", path("sub.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto sub = parse_graph(test::read_file(path("sub.json")));
  EXPECT_EQ(sub.object_ids(), test::ids({"object_1", "object_4"}));
  EXPECT_EQ(sub.event_ids(), test::ids({"event_1", "event_2"}));
  EXPECT_NE(r.out.find("compression"), std::string::npos) << r.out;
}

TEST_F(CliTest, PruneWithIqFileAndRules) {
  const auto r = egg({"prune", fix1_path("graph.egg.json"), "--iq", fix1_path("prune.iq.json"), "--location-rule",
                      "literal", "--time-rule", "literal", "--out", "-"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  PruneConfig cfg;
  cfg.location_event_rule = LocationEventRule::kLiteral;
  cfg.time_hierarchy_rule = TimeHierarchyRule::kLiteral;
  RelevantInfo info;
  info.time = TimeInterval{Timestamp{0}, Timestamp{1000}};
  info.locations = test::ids({"room_1"});
  info.spatial = test::ids({"object_1"});
  info.events = test::ids({"event_1", "event_2"});
  const auto expected = serialize(prune_pipeline(test::fix1(), info, cfg));
  EXPECT_EQ(r.out, expected);
}

TEST_F(CliTest, PruneErrors) {
  EXPECT_EQ(egg({"prune", fix1_path("graph.egg.json"), "--objects", "object_9"}).code, cli::kExitUsage);
  EXPECT_EQ(egg({"prune", fix1_path("graph.egg.json"), "--time", "9:1"}).code, cli::kExitUsage);
  EXPECT_EQ(egg({"prune", fix1_path("graph.egg.json"), "--locations", "Room 1"}).code, cli::kExitUsage);
  EXPECT_EQ(egg({"prune", defect_path("dangling_edge.egg.json"), "--events", "event_1"}).code, cli::kExitFailure);
  EXPECT_EQ(egg({"prune", fix1_path("graph.egg.json"), "--location-rule", "overlap"}).code, cli::kExitUsage);
}

TEST_F(CliTest, QueryScripted) {
  const auto r = egg({"query", fix1_path("graph.egg.json"), "Which mug was used for making coffee?", "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["answer"], "object_1");
  EXPECT_EQ(j["modality"], "node");

  const auto plain = egg({"query", fix1_path("graph.egg.json"), "Was the blue mug ever used to make coffee?"});
  EXPECT_EQ(plain.code, cli::kExitOk);
  EXPECT_NE(plain.out.find("false"), std::string::npos) << plain.out;
}

TEST_F(CliTest, QueryRemoteNeedsEndpointOrReplay) {
  ::unsetenv("EGG_ENDPOINT");
  EXPECT_EQ(egg({"query", fix1_path("graph.egg.json"), "Where is the laptop?", "--agent", "remote"}).code,
            cli::kExitTransport);
  EXPECT_EQ(egg({"query", fix1_path("graph.egg.json"), "Where is the laptop?", "--agent", "remote", "--replay",
                 path("empty")})
                .code,
            cli::kExitTransport);
}

TEST_F(CliTest, EvalReplayIsByteIdentical) {
  const auto replay = (test::fixtures_dir() / "replay" / "fix1").string();
  for (const char* out : {"a", "b"}) {
    const auto r = egg({"eval", "--dataset", fix1_path("dataset.qa.json"), "--graph", fix1_path("graph.egg.json"),
                        "--agent", "remote", "--replay", replay, "--out", path(out), "--concurrency", "3"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  }
  EXPECT_EQ(test::read_file(path("a") + "/report.json"), test::read_file(path("b") + "/report.json"));
  EXPECT_EQ(test::read_file(path("a") + "/report.txt"), test::read_file(path("b") + "/report.txt"));
}

TEST_F(CliTest, EvalMinScoreAndAblation) {
  const auto pass = egg({"eval", "--dataset", fix1_path("dataset.qa.json"), "--graph", fix1_path("graph.egg.json"),
                         "--min-score", "0.99"});
  EXPECT_EQ(pass.code, cli::kExitOk) << pass.err;
  EXPECT_NE(pass.out.find("EGG"), std::string::npos);
  const auto fail = egg({"eval", "--dataset", fix1_path("dataset.qa.json"), "--graph", fix1_path("graph.egg.json"),
                         "--ablate", "event_only", "--no-prune", "--min-score", "0.99"});
  EXPECT_EQ(fail.code, cli::kExitFailure);
  EXPECT_NE(fail.out.find("Event-only"), std::string::npos) << fail.out;
}

TEST_F(CliTest, GenBuildEvalRoundTrip) {
  auto r = egg({"gen", "--out", path("syn"), "--seed", "42", "--rooms", "2", "--objects", "6", "--events", "8",
                "--questions", "3,3,3,2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* f : {"scene.manifest.json", "events.records.jsonl", "dataset.qa.json", "graph.egg.json"})
    EXPECT_TRUE(fs::exists(dir_ / "syn" / f)) << f;
  r = egg({"build", "--manifest", path("syn/scene.manifest.json"), "--records", path("syn/events.records.jsonl"),
           "--out", path("rebuilt.json")});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(test::read_file(path("rebuilt.json")), test::read_file(path("syn/graph.egg.json")));
  r = egg({"eval", "--dataset", path("syn/dataset.qa.json"), "--graph", path("syn/graph.egg.json"), "--min-score", "0.99"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.out << r.err;
}

TEST_F(CliTest, GenRejectsInfeasibleParams) {
  EXPECT_EQ(egg({"gen", "--out", path("x"), "--rooms", "0"}).code, cli::kExitUsage);
  EXPECT_EQ(egg({"gen", "--out", path("x"), "--questions", "1,2"}).code, cli::kExitUsage);
  EXPECT_EQ(egg({"gen", "--out", path("x"), "--templates", "juggle"}).code, cli::kExitUsage);
}

TEST_F(CliTest, InspectAndUsage) {
  const auto r = egg({"inspect", fix1_path("graph.egg.json")});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("room_1"), std::string::npos) << r.out;
  EXPECT_EQ(egg({}).code, cli::kExitUsage);
  EXPECT_EQ(egg({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(egg({"--help"}).code, cli::kExitOk);
}

}  // namespace
}  // namespace egg
