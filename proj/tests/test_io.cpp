#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cream/config.hpp"
#include "cream/io.hpp"

using namespace cream;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("cream_io_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content) const {
        auto p = (path / name).string();
        std::ofstream out(p, std::ios::binary);
        out << content;
        return p;
    }
};

ComparisonResult sample_result() {
    ComparisonResult r;
    r.meeting_id = "m1";
    r.model_a = "a";
    r.model_b = "b";
    r.scores_a = {0.75, 0.5, std::nullopt};
    r.scores_b = {0.25, 1.0, std::nullopt};
    r.key_facts = KeyFactSet::build({"fact one", "fact two"}, 16,
                                    FactSource::concatenated_pair);
    r.alignment_a.entries = {{1, true, {1, 2}}, {2, false, {}}};
    r.alignment_b.entries = {{1, false, {}}, {2, true, {1}}};
    r.warnings = {{"dropped_line", "line 9 out of range"}};
    return r;
}

}  // namespace

TEST_CASE("read_meetings parses JSONL turns") {
    TempDir dir;
    auto path = dir.file(
        "meetings.jsonl",
        R"({"meeting_id":"m1","turns":[{"speaker":"alice","text":"hello"}]})" "\n"
        R"({"meeting_id":"m2","turns":[{"speaker":"bob","text":"bye"}]})" "\n");
    auto meetings = read_meetings(path);
    REQUIRE(meetings.size() == 2);
    CHECK(meetings[0].meeting_id == "m1");
    CHECK(meetings[1].turns[0].speaker == "bob");
}

TEST_CASE("read_summaries splits text and enforces the line cap") {
    TempDir dir;
    auto path = dir.file("summaries.jsonl",
                         R"({"meeting_id":"m1","model_id":"x","text":"A. B."})" "\n");
    auto summaries = read_summaries(path, 200);
    auto& doc = summaries.at({"m1", "x"});
    CHECK(doc.sentences == std::vector<std::string>{"A.", "B."});

    CHECK_THROWS_AS(read_summaries(path, 1), input_error);
}

TEST_CASE("read_summaries rejects duplicates and bad JSON") {
    TempDir dir;
    auto dup = dir.file("dup.jsonl",
                        R"({"meeting_id":"m1","model_id":"x","text":"A."})" "\n"
                        R"({"meeting_id":"m1","model_id":"x","text":"B."})" "\n");
    CHECK_THROWS_AS(read_summaries(dup, 200), input_error);
    auto bad = dir.file("bad.jsonl", "{oops\n");
    CHECK_THROWS_AS(read_summaries(bad, 200), input_error);
    CHECK_THROWS_AS(read_summaries((dir.path / "missing.jsonl").string(), 200),
                    input_error);
}

TEST_CASE("qmsum records convert to transcripts") {
    json record = {{"meeting_transcripts",
                    {{{"speaker", "alice"}, {"content", "hello there"}},
                     {{"speaker", "bob"}, {"content", "welcome"}}}}};
    auto transcript = qmsum_to_transcript(record, "meeting_7");
    CHECK(transcript.meeting_id == "meeting_7");
    REQUIRE(transcript.turns.size() == 2);
    CHECK(transcript.turns[1].text == "welcome");
}

TEST_CASE("comparison results survive a file round trip") {
    TempDir dir;
    auto path = (dir.path / "results.jsonl").string();
    auto meta = json{{"seed", 7}};
    write_results_file(path, meta, {sample_result()});
    auto file = read_results_file(path);
    CHECK(file.meta == meta);
    REQUIRE(file.results.size() == 1);
    const auto& r = file.results[0];
    CHECK(r.meeting_id == "m1");
    CHECK(r.scores_a.completeness == 0.75);
    CHECK(r.scores_b.conciseness == 1.0);
    CHECK(r.key_facts.size() == 2);
    CHECK(r.alignment_a.entries[0].line_numbers == std::set<std::uint32_t>{1, 2});
    CHECK(r.warnings.size() == 1);
    CHECK(r.valid);
}

TEST_CASE("results file writes are byte-deterministic") {
    TempDir dir;
    auto p1 = (dir.path / "r1.jsonl").string();
    auto p2 = (dir.path / "r2.jsonl").string();
    auto meta = json{{"seed", 7}};
    write_results_file(p1, meta, {sample_result()});
    write_results_file(p2, meta, {sample_result()});
    std::ifstream f1(p1), f2(p2);
    std::string s1((std::istreambuf_iterator<char>(f1)), {});
    std::string s2((std::istreambuf_iterator<char>(f2)), {});
    CHECK(s1 == s2);
}

TEST_CASE("pairwise matrix averages per-cell scores") {
    auto r1 = sample_result();
    auto r2 = sample_result();
    r2.meeting_id = "m2";
    r2.scores_a = {0.25, 0.5, std::nullopt};
    r2.scores_b = {0.75, 1.0, std::nullopt};
    auto matrix = pairwise_matrix({r1, r2});
    REQUIRE(matrix.models == std::vector<std::string>{"a", "b"});
    auto& comp = matrix.cells.at(Metric::completeness);
    CHECK(*comp[0][1] == doctest::Approx(0.5));   // a vs b
    CHECK(*comp[1][0] == doctest::Approx(0.5));   // b vs a
    CHECK_FALSE(comp[0][0].has_value());          // no self matches
}

TEST_CASE("leaderboard exports carry every model and metric") {
    RatingTable table;
    table.by_metric[Metric::completeness] = {{"a", {1016, 2, 3}}, {"b", {984, 2, 3}}};
    table.by_metric[Metric::conciseness] = {{"a", {990, 1, 3}}, {"b", {1010, 1, 3}}};
    auto matrix = pairwise_matrix({sample_result()});

    auto csv = leaderboard_to_csv(table);
    CHECK(csv.find("completeness,1,a,1016.00") != std::string::npos);
    CHECK(csv.find("conciseness,1,b,1010.00") != std::string::npos);

    auto md = leaderboard_to_markdown(table, matrix);
    CHECK(md.find("## completeness leaderboard") != std::string::npos);
    CHECK(md.find("## conciseness leaderboard") != std::string::npos);
    CHECK(md.find("| 1 | a | 1016.00 | 2.00 | 3 |") != std::string::npos);
    CHECK(md.find("raw pairwise completeness scores") != std::string::npos);

    auto j = leaderboard_to_json(table, matrix, json{{"seed", 1}});
    CHECK(j["metrics"]["completeness"]["leaderboard"][0]["model"] == "a");
    CHECK(j["metrics"]["conciseness"]["leaderboard"][0]["model"] == "b");
}

TEST_CASE("config files parse with overrides and comments") {
    TempDir dir;
    auto path = dir.file("run.conf",
                         "# judge settings\n"
                         "backend = mock\n"
                         "max_key_facts = 30\n"
                         "epsilon = 0.05  # wide ties\n"
                         "seed = 99\n");
    auto config = load_config(path);
    CHECK(config.backend == "mock");
    CHECK(config.max_key_facts == 30);
    CHECK(config.epsilon == 0.05);
    CHECK(config.seed == 99);

    apply_config_entry(config, "mode", "combined_prompt");
    CHECK(config.mode == "combined_prompt");
    CHECK_THROWS_AS(apply_config_entry(config, "nonsense_key", "1"), config_error);
    CHECK_THROWS_AS(apply_config_entry(config, "epsilon", "abc"), config_error);
}

TEST_CASE("config validation catches bad combinations") {
    RunConfig config;
    config.backend = "remote";
    CHECK_THROWS_AS(config.validate(), config_error);
    config.backend = "mock";
    config.max_key_facts = 0;
    CHECK_THROWS_AS(config.validate(), config_error);
}
