#include <doctest.h>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "cream/judge.hpp"
#include "cream/parse.hpp"
#include "cream/promptkit.hpp"
#include "cream/text.hpp"

using namespace cream;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("cream_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

SummaryDoc summary_of(std::vector<std::string> lines) {
    SummaryDoc doc;
    doc.summary_id = "s";
    doc.meeting_id = "m";
    doc.model_id = "x";
    doc.sentences = std::move(lines);
    return doc;
}

}  // namespace

TEST_CASE("mock_extract dedups repeated sentences") {
    auto facts = mock_extract("The alpha plan passed. The beta review failed. The alpha plan passed.", 16);
    REQUIRE(facts.size() == 2);
    CHECK(facts.facts()[0].text == "the alpha plan passed");
    CHECK(facts.facts()[1].text == "the beta review failed");
}

TEST_CASE("mock_extract truncates to max_facts") {
    std::string paragraph;
    for (int i = 0; i < 40; ++i) {
        paragraph += "Unique sentence number " + std::to_string(i) + ". ";
    }
    CHECK(mock_extract(paragraph, 16).size() == 16);
}

TEST_CASE("mock_extract maps a single sentence to its normalization") {
    auto facts = mock_extract("Only One Sentence Here", 16);
    REQUIRE(facts.size() == 1);
    CHECK(facts.facts()[0].text == "only one sentence here");
}

TEST_CASE("mock_extract clips facts to 20 tokens") {
    std::string longsent;
    for (int i = 0; i < 30; ++i) longsent += "word" + std::to_string(i) + " ";
    auto facts = mock_extract(longsent, 16);
    REQUIRE(facts.size() == 1);
    CHECK(tokenize(facts.facts()[0].text).size() == 20);
}

TEST_CASE("mock_align supports identical lines with containment 1.0") {
    auto facts = KeyFactSet::build({"the quarterly budget was approved"}, 16,
                                   FactSource::concatenated_pair);
    auto summary = summary_of({"An unrelated opener sentence.",
                               "The quarterly budget was approved."});
    auto alignment = mock_align(facts, summary);
    REQUIRE(alignment.entries.size() == 1);
    CHECK(alignment.entries[0].supported);
    CHECK(alignment.entries[0].line_numbers == std::set<std::uint32_t>{2});
}

TEST_CASE("mock_align rejects facts sharing no words") {
    auto facts = KeyFactSet::build({"zebras gallop quickly"}, 16,
                                   FactSource::concatenated_pair);
    auto summary = summary_of({"The quarterly budget was approved."});
    auto alignment = mock_align(facts, summary);
    CHECK_FALSE(alignment.entries[0].supported);
    CHECK(alignment.entries[0].line_numbers.empty());
}

TEST_CASE("mock_align threshold arithmetic: 2/3 >= 0.6") {
    auto facts = KeyFactSet::build({"alpha beta gamma"}, 16,
                                   FactSource::concatenated_pair);
    auto summary = summary_of({"alpha beta delta"});
    auto alignment = mock_align(facts, summary, 0.6);
    CHECK(alignment.entries[0].supported);
    CHECK(alignment.entries[0].line_numbers == std::set<std::uint32_t>{1});
    // 1/3 < 0.6 once another word differs
    auto weaker = KeyFactSet::build({"alpha epsilon zeta"}, 16,
                                    FactSource::concatenated_pair);
    CHECK_FALSE(mock_align(weaker, summary, 0.6).entries[0].supported);
}

TEST_CASE("mock judge answers a rendered extraction prompt deterministically") {
    MockJudge judge;
    JudgeRequest request;
    request.prompt = render_extraction_prompt(
        "The budget passed. The review is in May.", 16);
    auto first = judge.complete(request);
    auto second = judge.complete(request);
    CHECK(first.raw_text == second.raw_text);
    auto facts = parse_extraction_response(extract_json_payload(first.raw_text));
    CHECK(facts == std::vector<std::string>{"the budget passed", "the review is in may"});
}

TEST_CASE("mock judge answers alignment prompts with the verdict schema") {
    MockJudge judge;
    auto facts = KeyFactSet::build({"the budget passed"}, 16,
                                   FactSource::concatenated_pair);
    auto summary = summary_of({"The budget passed.", "Totally unrelated filler words."});
    JudgeRequest request;
    request.prompt = render_alignment_prompt(facts, summary);
    auto parsed = parse_alignment_response(
        extract_json_payload(judge.complete(request).raw_text), facts, 2);
    CHECK(parsed.alignment.entries[0].supported);
    CHECK(parsed.alignment.entries[0].line_numbers == std::set<std::uint32_t>{1});
}

TEST_CASE("mock judge answers combined prompts") {
    MockJudge judge;
    auto summary = summary_of({"The budget passed."});
    JudgeRequest request;
    request.prompt = render_combined_prompt(
        "The budget passed.\n\nThe review is in May.", summary, 16);
    auto payload = extract_json_payload(judge.complete(request).raw_text);
    auto fact_texts = parse_extraction_response(payload);
    REQUIRE(fact_texts.size() == 2);
    auto facts = KeyFactSet::build(fact_texts, 16, FactSource::concatenated_pair);
    auto parsed = parse_alignment_response(payload, facts, 1);
    CHECK(parsed.alignment.entries[0].supported);
    CHECK_FALSE(parsed.alignment.entries[1].supported);
}

TEST_CASE("mock judge answers faithfulness prompts") {
    MockJudge judge;
    Transcript transcript{"m", {{"alice", "The budget passed today."}}};
    auto summary = summary_of({"The budget passed.", "Martians attended remotely."});
    JudgeRequest request;
    request.prompt = render_faithfulness_prompt(transcript, summary);
    auto parsed = parse_faithfulness_response(
        extract_json_payload(judge.complete(request).raw_text), 2);
    CHECK(parsed.labels == FaithfulnessLabels{true, false});
}

TEST_CASE("mock judge rejects unrecognized prompts") {
    MockJudge judge;
    JudgeRequest request;
    request.prompt = "free-form text with no sections";
    CHECK_THROWS_AS(judge.complete(request), input_error);
}

TEST_CASE("cache: second identical request is served from disk") {
    TempDir dir;
    auto judge = CachingJudge(std::make_shared<MockJudge>(), dir.path.string());
    JudgeRequest request;
    request.prompt = render_extraction_prompt("The budget passed.", 16);
    auto first = judge.complete(request);
    CHECK_FALSE(first.cached);
    auto second = judge.complete(request);
    CHECK(second.cached);
    CHECK(second.raw_text == first.raw_text);
}

TEST_CASE("cache: different requests get different keys") {
    JudgeRequest a, b;
    a.prompt = b.prompt = "same";
    a.judge_model_id = "m1";
    b.judge_model_id = "m2";
    CHECK(CachingJudge::cache_key(a) != CachingJudge::cache_key(b));
    b = a;
    b.temperature = 0.7;
    CHECK(CachingJudge::cache_key(a) != CachingJudge::cache_key(b));
}

TEST_CASE("cache: bypass still refreshes the stored entry") {
    TempDir dir;
    auto judge = CachingJudge(std::make_shared<MockJudge>(), dir.path.string());
    JudgeRequest request;
    request.prompt = render_extraction_prompt("The budget passed.", 16);
    judge.complete(request);
    request.bypass_cache = true;
    CHECK_FALSE(judge.complete(request).cached);
    request.bypass_cache = false;
    CHECK(judge.complete(request).cached);
}

TEST_CASE("remote judge talks chat-completion JSON and retries 429") {
    httplib::Server server;
    std::atomic<int> calls{0};
    server.Post("/v1/chat/completions", [&](const httplib::Request& req,
                                            httplib::Response& res) {
        int n = ++calls;
        auto body = nlohmann::json::parse(req.body);
        CHECK(body["messages"][0]["content"] == "hello judge");
        if (n == 1) {
            res.status = 429;
            return;
        }
        nlohmann::json reply = {
            {"model", "test-model"},
            {"choices",
             {{{"message", {{"role", "assistant"}, {"content", "judged"}}}}}}};
        res.set_content(reply.dump(), "application/json");
    });
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread server_thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    RemoteConfig config;
    config.endpoint = "http://127.0.0.1:" + std::to_string(port);
    config.retry.max_retries = 2;
    config.retry.initial_delay = std::chrono::milliseconds(10);
    RemoteJudge judge(config);
    JudgeRequest request;
    request.prompt = "hello judge";
    request.judge_model_id = "test-model";
    auto response = judge.complete(request);
    CHECK(response.raw_text == "judged");
    CHECK(calls == 2);

    server.stop();
    server_thread.join();
}

TEST_CASE("remote judge with zero retries surfaces a transport error") {
    RemoteConfig config;
    config.endpoint = "http://127.0.0.1:1";  // nothing listens here
    config.retry.max_retries = 0;
    config.timeout = std::chrono::milliseconds(1000);
    RemoteJudge judge(config);
    JudgeRequest request;
    request.prompt = "hello";
    CHECK_THROWS_AS(judge.complete(request), transport_error);
}

TEST_CASE("remote judge requires the configured credential variable") {
    RemoteConfig config;
    config.endpoint = "http://127.0.0.1:1";
    config.api_key_env = "CREAM_TEST_DEFINITELY_UNSET_KEY";
    CHECK_THROWS_AS(RemoteJudge{config}, config_error);
}
