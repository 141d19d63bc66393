#include <gtest/gtest.h>

#include <sstream>

#include "bsa/core/error.hpp"
#include "bsa/planning/accuracy.hpp"
#include "bsa/planning/client.hpp"
#include "bsa/planning/log_io.hpp"
#include "bsa/planning/mock_server.hpp"
#include "bsa/planning/prompts.hpp"
#include "bsa/planning/response.hpp"
#include "bsa/planning/runner.hpp"
#include "bsa/planning/samples.hpp"

using namespace bsa;
using namespace bsa::planning;

namespace {

constexpr auto Asp = ActionClass::Aspiration;
constexpr auto Clip = ActionClass::Clipping;
constexpr auto Coag = ActionClass::Coagulation;
constexpr auto Diss = ActionClass::Dissection;
constexpr auto Knot = ActionClass::KnotTying;
constexpr auto Pack = ActionClass::Packaging;
constexpr auto Retr = ActionClass::TissueRetraction;

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InvalidArgument;
}

std::vector<PlanningSample> fixture_samples() {
  std::vector<PlanningSample> out;
  for (const auto& ctx : read_contexts_file(BSA_FIXTURES "/contexts.jsonl")) {
    auto s = make_samples(ctx);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

LogEntry hand(const std::string& ctx, int t, ActionClass next, std::optional<ActionClass> next2,
              std::vector<ActionClass> preds) {
  LogEntry e;
  e.context_id = ctx;
  e.t = t;
  e.next = next;
  e.next2 = next2;
  e.predictions = std::move(preds);
  return e;
}

// Six entries over three contexts, each metric counted by hand below.
PredictionLog hand_log() {
  PredictionLog log;
  log.add(hand("c1", 4, Diss, Clip, {Diss, Knot, Pack}));      // strict@1, relaxed@1
  log.add(hand("c1", 5, Clip, std::nullopt, {Asp, Clip, Pack}));  // strict@2, relaxed@2
  log.add(hand("c2", 4, Pack, Diss, {Diss, Asp, Pack}));       // strict@3, relaxed@1 via next2
  log.add(hand("c2", 5, Asp, Clip, {Knot, Coag, Retr}));       // miss
  log.add(hand("c2", 6, Clip, std::nullopt, {Clip}));            // strict@1
  log.add(hand("c3", 4, Diss, std::nullopt, {Clip, Asp}));       // miss
  return log;
}

}  // namespace

TEST(Samples, SlidingWindow) {
  const auto ctxs = read_contexts_file(BSA_FIXTURES "/contexts.jsonl");
  ASSERT_EQ(ctxs.size(), 3u);
  const auto s = make_samples(ctxs[0]);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].t, 4);
  EXPECT_EQ(s[0].key(), "cvs01/4");
  EXPECT_EQ(s[0].distant, (std::array<ActionClass, 4>{Diss, Retr, Asp, Retr}));
  EXPECT_EQ(s[0].near_action, Diss);
  EXPECT_EQ(s[0].next, Clip);
  EXPECT_EQ(s[0].next2, Retr);
  EXPECT_FALSE(s[1].next2.has_value());
  EXPECT_EQ(fixture_samples().size(), 6u);
  ContextSequence tiny{"x", SurgeryType::Gastrectomy, {{"a", Diss, {}}, {"b", Diss, {}}}};
  EXPECT_TRUE(make_samples(tiny).empty());
}

TEST(Samples, FramePicksIncludeEnds) {
  EXPECT_EQ(uniform_frame_picks(10, 4), (std::vector<std::size_t>{0, 3, 6, 9}));
  EXPECT_EQ(uniform_frame_picks(3, 4), (std::vector<std::size_t>{0, 1, 1, 2}));
  const auto p = uniform_frame_picks(100, 4);
  EXPECT_EQ(p.front(), 0u);
  EXPECT_EQ(p.back(), 99u);
}

TEST(Samples, NearFramesFromClipImages) {
  ContextSequence ctx{"v", SurgeryType::Hysterectomy, {}};
  for (int i = 0; i < 7; ++i) {
    ContextClip c{"c" + std::to_string(i), Diss, {}};
    for (int f = 0; f < 9; ++f) c.frames.push_back("c" + std::to_string(i) + "_" + std::to_string(f) + ".png");
    ctx.clips.push_back(c);
  }
  const auto s = make_samples(ctx);
  ASSERT_EQ(s[0].near_frames.size(), 4u);
  EXPECT_EQ(s[0].near_frames[0].path, "c4_0.png");
  EXPECT_EQ(s[0].near_frames[3].path, "c4_8.png");
  EXPECT_EQ(s[0].current_frame.path, "c4_8.png");
}

TEST(Response, AcceptedShapes) {
  const auto fenced = parse_response(
      "Here you go:\n```json\n{\"scene_understanding\":\"s\",\"predictions\":[{\"action\":\"Clipping\","
      "\"rationale\":\"r\"},{\"action\":\"dissection\"}]}\n```\n");
  EXPECT_EQ(fenced.actions(), (std::vector<ActionClass>{Clip, Diss}));
  EXPECT_EQ(fenced.predictions[0].rationale, "r");
  EXPECT_EQ(parse_response(R"(I think {"predictions": ["Tissue Retraction", "suction"]} fits.)").actions(),
            (std::vector<ActionClass>{Retr, Asp}));
  EXPECT_EQ(parse_response(R"({"predictions": "knot tying, packaging"})").actions(),
            (std::vector<ActionClass>{Knot, Pack}));
}

TEST(Response, DedupAndTruncate) {
  const auto r = parse_response(R"({"predictions": ["Clipping","clip","Dissection","Packaging","Aspiration"]})");
  EXPECT_EQ(r.actions(), (std::vector<ActionClass>{Clip, Diss, Pack}));
}

TEST(Response, Rejects) {
  EXPECT_EQ(code_of([] { parse_response("no json here"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_response(R"({"scene": "x"})"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_response(R"({"predictions": []})"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_response(R"({"predictions": ["Stapling"]})"); }), Errc::UnknownAction);
  EXPECT_FALSE(resolve_action_name("dissectionn").has_value());
  EXPECT_FALSE(resolve_action_name("NonAction").has_value());
}

TEST(Response, JsonRoundTrip) {
  const auto r = parse_response(R"({"progress_judgment":"p","predictions":[{"action":"Coagulation","rationale":"bleeding"}]})");
  const auto back = response_from_json(response_to_json(r));
  EXPECT_EQ(back.actions(), r.actions());
  EXPECT_EQ(back.progress_judgment, "p");
}

TEST(Prompts, AssemblyIsDeterministic) {
  const auto kb = read_knowledge_base_file(BSA_DATA "/knowledge_base.json");
  const auto s = fixture_samples();
  const auto a = assemble_prompts(s[0], kb), b = assemble_prompts(s[0], kb);
  EXPECT_EQ(a.system_prompt, b.system_prompt);
  EXPECT_EQ(a.user_text, b.user_text);
  EXPECT_EQ(a.sample_key, "cvs01/4");
  for (const auto& q : user_queries()) EXPECT_NE(a.user_text.find(q), std::string::npos);
  EXPECT_NE(a.user_text.find("predictions"), std::string::npos);
  KnowledgeBase empty;
  EXPECT_EQ(code_of([&] { assemble_prompts(s[0], empty); }), Errc::UnknownProcedure);
}

TEST(Client, RequestBody) {
  PromptBundle b{"k", "sys", "user", {{"frame", "/nonexistent/a.png"}}};
  const auto j = build_request(b, "m");
  EXPECT_EQ(j["model"], "m");
  EXPECT_EQ(j["temperature"], 0);
  EXPECT_EQ(j["messages"][0]["role"], "system");
  EXPECT_NE(j.dump().find("/nonexistent/a.png"), std::string::npos);
}

TEST(Accuracy, HandLog) {
  const auto log = hand_log();
  EXPECT_DOUBLE_EQ(s_local_acc(log, 1), 2.0 / 6);
  EXPECT_DOUBLE_EQ(s_local_acc(log, 2), 3.0 / 6);
  EXPECT_DOUBLE_EQ(s_local_acc(log, 3), 4.0 / 6);
  EXPECT_DOUBLE_EQ(s_global_acc(log, 1), (1.0 / 2 + 1.0 / 3 + 0.0) / 3);
  EXPECT_DOUBLE_EQ(s_global_acc(log, 2), (1.0 + 1.0 / 3 + 0.0) / 3);
  EXPECT_DOUBLE_EQ(s_global_acc(log, 3), (1.0 + 2.0 / 3 + 0.0) / 3);
  EXPECT_DOUBLE_EQ(r_local_acc(log, 1), 3.0 / 6);
  EXPECT_DOUBLE_EQ(r_local_acc(log, 2), 4.0 / 6);
  EXPECT_DOUBLE_EQ(r_local_acc(log, 3), 4.0 / 6);
  EXPECT_DOUBLE_EQ(r_global_acc(log, 1), (1.0 / 2 + 2.0 / 3 + 0.0) / 3);
  EXPECT_DOUBLE_EQ(r_global_acc(log, 3), (1.0 + 2.0 / 3 + 0.0) / 3);
  EXPECT_EQ(code_of([&] { s_local_acc(log, 0); }), Errc::OutOfRange);
  EXPECT_EQ(code_of([] { r_global_acc(PredictionLog{}, 1); }), Errc::EmptyLog);
}

TEST(Accuracy, CsvAndMonotone) {
  const auto t = accuracy_table(hand_log());
  for (const auto& row : t.v) {
    EXPECT_LE(row[0], row[1]);
    EXPECT_LE(row[1], row[2]);
  }
  for (int k = 0; k < 3; ++k) EXPECT_LE(t.v[0][k], t.v[2][k]);  // relaxed never below strict
  std::ostringstream os;
  write_accuracy_csv(os, t);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "metric,top1,top2,top3");
  EXPECT_NE(os.str().find("S-LocalAcc,0.333333,0.500000,0.666667"), std::string::npos);
}

TEST(Accuracy, SurgeonMatch) {
  const auto log = hand_log();
  std::vector<std::vector<ActionClass>> choices{{Diss}, {Clip, Asp}, {Pack}, {Knot, Asp}, {Asp}, {Diss}};
  const auto m = surgeon_match_metrics(log, choices);
  EXPECT_DOUBLE_EQ(m.top1_match, 2.0 / 6);       // entries 1, 4
  EXPECT_DOUBLE_EQ(m.top1_any_match, 3.0 / 6);   // entries 1, 2, 4
  EXPECT_DOUBLE_EQ(m.top3_inclusion, 4.0 / 6);   // entries 1, 2, 3, 4
  choices.pop_back();
  EXPECT_EQ(code_of([&] { surgeon_match_metrics(log, choices); }), Errc::AlignmentError);
}

TEST(Log, DuplicateKeyAndRoundTrip) {
  auto log = hand_log();
  EXPECT_EQ(code_of([&] { log.add(hand("c1", 4, Diss, std::nullopt, {Diss})); }), Errc::InvalidArgument);
  log.meta = {"http://x", "m", 7, 3};
  std::stringstream ss;
  write_log(ss, log);
  const auto back = read_log(ss);
  ASSERT_EQ(back.size(), log.size());
  EXPECT_EQ(back.meta.seed, 7u);
  EXPECT_EQ(back.entries()[2].next2, Diss);
  EXPECT_FALSE(back.entries()[1].next2.has_value());
  EXPECT_EQ(back.entries()[3].predictions, log.entries()[3].predictions);
  EXPECT_EQ(accuracy_table(back).v, accuracy_table(log).v);
}

namespace {

struct MockRun {
  PredictionLog log;
  std::size_t served = 0;
};

MockRun run_mock(MockMode mode, int parallelism = 2) {
  const auto samples = fixture_samples();
  MockConfig mc;
  mc.mode = mode;
  mc.seed = 3;
  for (const auto& s : samples) mc.truth[s.key()] = s.next;
  MockServer server(mc);
  server.start();
  ClientConfig cc;
  cc.endpoint = server.endpoint();
  cc.timeout_s = 10;
  const auto kb = read_knowledge_base_file(BSA_DATA "/knowledge_base.json");
  MockRun r{run_planning(samples, kb, cc, RunOptions{parallelism, 3}), 0};
  r.served = server.requests_served();
  server.stop();
  return r;
}

}  // namespace

TEST(Mock, GroundTruthIsPerfect) {
  const auto r = run_mock(MockMode::GroundTruth);
  ASSERT_EQ(r.log.size(), 6u);
  EXPECT_EQ(r.served, 6u);
  EXPECT_EQ(s_local_acc(r.log, 1), 1.0);
  EXPECT_FALSE(r.log.entries()[0].transcript.empty());
}

TEST(Mock, MalformedReplyIsRetriedOnce) {
  const auto r = run_mock(MockMode::MalformedThenValid);
  EXPECT_EQ(r.served, 12u);
  for (const auto& e : r.log.entries()) {
    EXPECT_EQ(e.parse_retries, 1);
    EXPECT_TRUE(e.error.empty());
  }
  EXPECT_EQ(s_local_acc(r.log, 1), 1.0);
}

TEST(Mock, NonTaxonomyActionFailsTheQuery) {
  const auto r = run_mock(MockMode::NonTaxonomy, 1);
  for (const auto& e : r.log.entries()) {
    EXPECT_TRUE(e.predictions.empty());
    EXPECT_NE(e.error.find("ParseError"), std::string::npos) << e.error;
    EXPECT_NE(e.error.find("Stapling"), std::string::npos) << e.error;
  }
  EXPECT_EQ(s_local_acc(r.log, 3), 0.0);
}

TEST(Mock, RateLimitIsHonored) {
  const auto r = run_mock(MockMode::RateLimitOnce);
  for (const auto& e : r.log.entries()) EXPECT_EQ(e.rate_limit_waits, 1);
  EXPECT_EQ(s_local_acc(r.log, 1), 1.0);
}

TEST(Mock, UniformRepliesAreSeededPerKey) {
  MockConfig mc;
  mc.mode = MockMode::UniformRandom;
  mc.seed = 5;
  MockServer a(mc), b(mc);
  EXPECT_EQ(a.reply_for("k/1", 0), b.reply_for("k/1", 0));
  const auto r = parse_response(nlohmann::json::parse(a.reply_for("k/1", 0))["choices"][0]["message"]["content"]
                                    .get<std::string>());
  EXPECT_EQ(r.actions().size(), 3u);
  EXPECT_EQ(code_of([] { parse_mock_mode("chaos"); }), Errc::InvalidArgument);
}

TEST(Mock, UnreachableEndpoint) {
  ClientConfig cc;
  cc.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  cc.timeout_s = 2;
  PromptBundle b{"k", "s", "u", {}};
  EXPECT_EQ(code_of([&] { query_agent(b, cc); }), Errc::TransportError);
}
