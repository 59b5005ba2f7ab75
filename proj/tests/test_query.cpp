#include <gtest/gtest.h>

#include "egg/error.hpp"
#include "egg/query.hpp"
#include "fixtures.hpp"

namespace egg {
namespace {

using test::ids;

TEST(Modality, TextForms) {
  for (auto m : {Modality::kText, Modality::kBinary, Modality::kNode, Modality::kTime})
    EXPECT_EQ(parse_modality(to_string(m)), m);
  EXPECT_FALSE(parse_modality("Binary").has_value());
}

TEST(Payload, MatchesModality) {
  EXPECT_TRUE(payload_matches(Modality::kText, AnswerPayload{std::string("x")}));
  EXPECT_TRUE(payload_matches(Modality::kBinary, AnswerPayload{true}));
  EXPECT_TRUE(payload_matches(Modality::kNode, AnswerPayload{ids({"room_1"})}));
  EXPECT_TRUE(payload_matches(Modality::kTime, AnswerPayload{TimeValue{Timestamp{5}}}));
  EXPECT_FALSE(payload_matches(Modality::kBinary, AnswerPayload{std::string("true")}));
  EXPECT_FALSE(payload_matches(Modality::kNode, AnswerPayload{TimeValue{Timestamp{5}}}));
}

TEST(Payload, Rendering) {
  EXPECT_EQ(render_payload(true), "true");
  EXPECT_EQ(render_payload(ids({"room_2", "room_1"})), "room_1,room_2");
  EXPECT_EQ(render_payload(TimeValue{TimeInterval{{100}, {200}}}), "[100, 200]");
  EXPECT_EQ(render_payload(std::string("a mug")), "a mug");
}

TEST(Dataset, Fix1) {
  const auto qs = parse_dataset(test::read_file(test::data_dir() / "fix1" / "dataset.qa.json"));
  ASSERT_EQ(qs.size(), 6u);
  EXPECT_EQ(qs[0].id, "fix1_q1");
  EXPECT_EQ(qs[0].modality, Modality::kBinary);
  EXPECT_EQ(std::get<bool>(qs[0].gold), true);
  EXPECT_EQ(std::get<IdSet>(qs[1].gold), ids({"room_1"}));
  EXPECT_EQ(std::get<TimeInterval>(std::get<TimeValue>(qs[3].gold)), (TimeInterval{{500}, {600}}));
  EXPECT_EQ(parse_dataset(write_dataset(qs)).size(), qs.size());
  EXPECT_EQ(write_dataset(parse_dataset(write_dataset(qs))), write_dataset(qs));
}

TEST(Dataset, InstantGold) {
  const auto qs = parse_dataset(R"({"queries": [{"id": "a", "question": "when?", "modality": "time", "gold": {"at": 42}}]})");
  EXPECT_EQ(std::get<Timestamp>(std::get<TimeValue>(qs[0].gold)), Timestamp{42});
}

TEST(Dataset, Rejections) {
  auto code = [](const std::string& text) {
    try {
      parse_dataset(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  EXPECT_EQ(code(R"({"queries": [{"id": "a", "question": "q", "modality": "binary", "gold": "yes"}]})"), ErrorCode::kSchema);
  EXPECT_EQ(code(R"({"queries": [{"id": "a", "question": "q", "modality": "node", "gold": ["Room 1"]}]})"), ErrorCode::kSchema);
  EXPECT_EQ(code(R"({"queries": [{"id": "a", "question": "q", "modality": "colour", "gold": 1}]})"), ErrorCode::kSchema);
  EXPECT_EQ(code(R"({"queries": [{"id": "a", "question": "q", "modality": "text", "gold": "x", "hint": 1}]})"), ErrorCode::kSchema);
  EXPECT_EQ(code(R"({"queries": [{"id": "a", "question": "q", "modality": "text", "gold": "x"},
                                 {"id": "a", "question": "q", "modality": "text", "gold": "x"}]})"),
            ErrorCode::kDuplicateId);
  EXPECT_EQ(code("{"), ErrorCode::kSyntax);
}

TEST(Answer, AbstainCarriesModality) {
  const auto a = abstain(Modality::kNode);
  EXPECT_TRUE(a.abstained);
  EXPECT_EQ(a.modality, Modality::kNode);
  EXPECT_TRUE(payload_matches(Modality::kNode, a.payload));
}

}  // namespace
}  // namespace egg
