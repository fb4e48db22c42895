#include <doctest.h>

#include "cream/parse.hpp"

using namespace cream;

namespace {

KeyFactSet two_facts() {
    return KeyFactSet::build({"f1", "f2"}, 16, FactSource::concatenated_pair);
}

}  // namespace

TEST_CASE("extract_json_payload strips code fences") {
    CHECK(extract_json_payload("```json\n[{\"a\": 1}]\n```") == "[{\"a\": 1}]");
}

TEST_CASE("extract_json_payload strips surrounding prose") {
    CHECK(extract_json_payload("Here is the answer: [1, 2] Hope this helps") == "[1, 2]");
}

TEST_CASE("extract_json_payload fails without a balanced array") {
    CHECK_THROWS_AS(extract_json_payload("no brackets here"), parse_error);
    CHECK_THROWS_AS(extract_json_payload("[1, 2"), parse_error);
    CHECK_THROWS_AS(extract_json_payload(""), parse_error);
}

TEST_CASE("extract_json_payload ignores brackets inside strings") {
    CHECK(extract_json_payload(R"(x ["a [weird] value"] y)") == R"(["a [weird] value"])");
}

TEST_CASE("parse_alignment_response handles the canonical schema") {
    auto facts = KeyFactSet::build({"f1"}, 16, FactSource::concatenated_pair);
    auto parsed = parse_alignment_response(
        R"([{"key fact":"f1","response":"Yes","line number":[1]}])", facts, 3);
    REQUIRE(parsed.alignment.entries.size() == 1);
    CHECK(parsed.alignment.entries[0].supported);
    CHECK(parsed.alignment.entries[0].line_numbers == std::set<std::uint32_t>{1});
    CHECK(parsed.warnings.empty());
}

TEST_CASE("response is normalized case-insensitively") {
    auto facts = KeyFactSet::build({"f1"}, 16, FactSource::concatenated_pair);
    auto parsed = parse_alignment_response(
        R"([{"key fact":"f1","response":"no","line number":[]}])", facts, 3);
    CHECK_FALSE(parsed.alignment.entries[0].supported);
    CHECK(parsed.alignment.entries[0].line_numbers.empty());
}

TEST_CASE("out-of-range line numbers are dropped with a warning") {
    auto facts = KeyFactSet::build({"f1"}, 16, FactSource::concatenated_pair);
    auto parsed = parse_alignment_response(
        R"([{"key fact":"f1","response":"Yes","line number":[9]}])", facts, 3);
    CHECK(parsed.alignment.entries[0].supported);  // Yes still counts as aligned
    CHECK(parsed.alignment.entries[0].line_numbers.empty());
    REQUIRE(parsed.warnings.size() == 1);
    CHECK(parsed.warnings[0].code == "dropped_line");
}

TEST_CASE("missing facts are filled unsupported with a warning") {
    auto parsed = parse_alignment_response(
        R"([{"key fact":"f1","response":"Yes","line number":[1]}])", two_facts(), 3);
    REQUIRE(parsed.alignment.entries.size() == 2);
    CHECK(parsed.alignment.entries[0].supported);
    CHECK_FALSE(parsed.alignment.entries[1].supported);
    REQUIRE(parsed.warnings.size() == 1);
    CHECK(parsed.warnings[0].code == "filled_missing");
}

TEST_CASE("extra elements are dropped with a warning") {
    auto facts = KeyFactSet::build({"f1"}, 16, FactSource::concatenated_pair);
    auto parsed = parse_alignment_response(
        R"([{"key fact":"f1","response":"Yes","line number":[1]},
            {"key fact":"bonus","response":"Yes","line number":[2]},
            {"key fact":"more","response":"No","line number":[]}])",
        facts, 3);
    CHECK(parsed.alignment.entries.size() == 1);
    // "bonus" falls through text matching to the position fallback slots,
    // but all facts are taken, so both extras are dropped.
    std::size_t extra = 0;
    for (const auto& w : parsed.warnings) {
        if (w.code == "dropped_extra") ++extra;
    }
    CHECK(extra == 2);
}

TEST_CASE("paraphrased facts fall back to positional matching") {
    auto parsed = parse_alignment_response(
        R"([{"key fact":"first fact reworded","response":"No","line number":[]},
            {"key fact":"f2","response":"Yes","line number":[2]}])",
        two_facts(), 3);
    REQUIRE(parsed.alignment.entries.size() == 2);
    CHECK_FALSE(parsed.alignment.entries[0].supported);  // positional match
    CHECK(parsed.alignment.entries[1].supported);        // text match
    CHECK(parsed.alignment.entries[1].line_numbers == std::set<std::uint32_t>{2});
}

TEST_CASE("structural problems are validation errors") {
    auto facts = KeyFactSet::build({"f1"}, 16, FactSource::concatenated_pair);
    CHECK_THROWS_AS(parse_alignment_response(R"({"not":"an array"})", facts, 3),
                    validation_error);
    CHECK_THROWS_AS(
        parse_alignment_response(R"([{"response":"Yes","line number":[1]}])", facts, 3),
        validation_error);
    CHECK_THROWS_AS(
        parse_alignment_response(
            R"([{"key fact":"f1","response":"maybe","line number":[]}])", facts, 3),
        validation_error);
    CHECK_THROWS_AS(
        parse_alignment_response(
            R"([{"key fact":"f1","response":"Yes","line number":"one"}])", facts, 3),
        validation_error);
}

TEST_CASE("round trip: parse(serialize(parse(x))) == parse(x)") {
    std::vector<std::string> payloads = {
        R"([{"key fact":"f1","response":"Yes","line number":[1,3]},
            {"key fact":"f2","response":"no","line number":[]}])",
        R"([{"key fact":"f2","response":"YES","line number":[2,2,9]},
            {"key fact":"f1","response":"No","line number":[]}])",
    };
    for (const auto& payload : payloads) {
        auto facts = two_facts();
        auto first = parse_alignment_response(payload, facts, 3);
        auto serialized = serialize_alignment(first.alignment, facts);
        auto second = parse_alignment_response(serialized, facts, 3);
        REQUIRE(first.alignment.entries.size() == second.alignment.entries.size());
        for (std::size_t i = 0; i < first.alignment.entries.size(); ++i) {
            CHECK(first.alignment.entries[i].supported ==
                  second.alignment.entries[i].supported);
            CHECK(first.alignment.entries[i].line_numbers ==
                  second.alignment.entries[i].line_numbers);
        }
        CHECK(second.warnings.empty());
    }
}

TEST_CASE("parse_extraction_response accepts strings and fact objects") {
    auto facts = parse_extraction_response(R"(["a", "b"])");
    CHECK(facts == std::vector<std::string>{"a", "b"});
    auto objs = parse_extraction_response(R"([{"key fact": "a"}, {"key fact": "b"}])");
    CHECK(objs == std::vector<std::string>{"a", "b"});
    CHECK_THROWS_AS(parse_extraction_response(R"([1, 2])"), validation_error);
    CHECK_THROWS_AS(parse_extraction_response(R"("string")"), validation_error);
}

TEST_CASE("parse_faithfulness_response maps verdicts onto lines") {
    auto parsed = parse_faithfulness_response(
        R"([{"line number":1,"faithful":"Yes"},{"line number":2,"faithful":"No"},
            {"line number":3,"faithful":"yes"}])",
        3);
    CHECK(parsed.labels == FaithfulnessLabels{true, false, true});
    CHECK(parsed.warnings.empty());

    auto sparse = parse_faithfulness_response(R"([{"line number":1,"faithful":"Yes"}])", 2);
    CHECK(sparse.labels == FaithfulnessLabels{true, false});
    REQUIRE(sparse.warnings.size() == 1);
    CHECK(sparse.warnings[0].code == "filled_missing");

    CHECK_THROWS_AS(parse_faithfulness_response(R"([{"line number":1}])", 1),
                    validation_error);
}
