#include <doctest.h>

#include "cream/promptkit.hpp"

using namespace cream;

namespace {

SummaryDoc sample_summary() {
    SummaryDoc doc;
    doc.summary_id = "m1/model";
    doc.meeting_id = "m1";
    doc.model_id = "model";
    doc.sentences = {"The board met on Monday.", "The budget was approved.",
                     "Next review is in May."};
    return doc;
}

}  // namespace

TEST_CASE("combined prompt substitutes the max-fact count") {
    auto text = render_combined_prompt("Some paragraph.", sample_summary(), 30);
    CHECK(text.find("decompose the paragraph into (at most 30) key facts") !=
          std::string::npos);
    auto text16 = render_combined_prompt("Some paragraph.", sample_summary(), 16);
    CHECK(text16.find("(at most 16)") != std::string::npos);
}

TEST_CASE("combined prompt embeds the nine example facts with the caution") {
    auto text = render_combined_prompt("P.", sample_summary(), 16);
    CHECK(text.find("these are examples, and do NOT use them as actual key facts") !=
          std::string::npos);
    for (const char* fact : {"Kevin Carr set off on his journey from Haytor.",
                             "Kevin Carr ran with his tent.",
                             "The previous record was held by an Australian."}) {
        CHECK(text.find(fact) != std::string::npos);
    }
}

TEST_CASE("combined prompt carries the JSON schema line") {
    auto text = render_combined_prompt("P.", sample_summary(), 16);
    CHECK(text.find("whose keys are \"key fact\", \"response\", and \"line number\"") !=
          std::string::npos);
}

TEST_CASE("combined prompt renders the summary as numbered lines") {
    auto text = render_combined_prompt("P.", sample_summary(), 16);
    CHECK(text.find("1. The board met on Monday.\n2. The budget was approved.\n"
                    "3. Next review is in May.") != std::string::npos);
}

TEST_CASE("rendering is deterministic") {
    auto a = render_combined_prompt("P.", sample_summary(), 16);
    auto b = render_combined_prompt("P.", sample_summary(), 16);
    CHECK(a == b);
}

TEST_CASE("literal typo flag reproduces the source spelling") {
    PromptOptions opts;
    opts.literal_typo = true;
    auto text = render_combined_prompt("P.", sample_summary(), 30, opts);
    CHECK(text.find("(at most 30) ket facts") != std::string::npos);
    CHECK(render_combined_prompt("P.", sample_summary(), 30)
              .find("(at most 30) key facts") != std::string::npos);
}

TEST_CASE("extraction prompt substitutes paragraph and count") {
    auto text = render_extraction_prompt("P", 16);
    CHECK(text.find("\nP\n") != std::string::npos);
    CHECK(text.find("(at most 16)") != std::string::npos);
    CHECK(render_extraction_prompt("P", 16) == text);
}

TEST_CASE("extraction prompt rejects an empty paragraph") {
    CHECK_THROWS_AS(render_extraction_prompt("", 16), render_error);
}

TEST_CASE("alignment prompt lists facts and numbered lines") {
    auto facts = KeyFactSet::build({"The budget was approved", "A review happens in May"},
                                   16, FactSource::concatenated_pair);
    auto text = render_alignment_prompt(facts, sample_summary());
    CHECK(text.find("1. The budget was approved\n2. A review happens in May") !=
          std::string::npos);
    CHECK(text.find("3. Next review is in May.") != std::string::npos);
    CHECK(text.find("\"key fact\", \"response\", and \"line number\"") != std::string::npos);
}

TEST_CASE("alignment prompt preserves quotes in fact text") {
    auto facts = KeyFactSet::build({"He said \"approve it\" twice"}, 16,
                                   FactSource::concatenated_pair);
    auto text = render_alignment_prompt(facts, sample_summary());
    CHECK(text.find("He said \"approve it\" twice") != std::string::npos);
}

TEST_CASE("alignment prompt rejects an empty fact set") {
    CHECK_THROWS_AS(render_alignment_prompt(KeyFactSet{}, sample_summary()), render_error);
}

TEST_CASE("faithfulness prompt asks one verdict per sentence") {
    Transcript transcript{"m1", {{"alice", "We approved the budget."}}};
    SummaryDoc one;
    one.summary_id = "s";
    one.sentences = {"The budget was approved."};
    auto text = render_faithfulness_prompt(transcript, one);
    CHECK(text.find("1. The budget was approved.") != std::string::npos);
    CHECK(text.find("2. ") == std::string::npos);
    CHECK(text.find("\"line number\" and \"faithful\"") != std::string::npos);
    CHECK(render_faithfulness_prompt(transcript, one) == text);
}

TEST_CASE("faithfulness prompt enforces the transcript character budget") {
    Transcript transcript{"m1", {{"alice", std::string(200, 'x')}}};
    PromptOptions opts;
    opts.transcript_char_budget = 100;
    CHECK_THROWS_AS(render_faithfulness_prompt(transcript, sample_summary(), opts),
                    input_error);
}

TEST_CASE("shipped template files render identically to the built-ins") {
    PromptOptions assets;
    assets.template_dir = CREAM_ASSET_PROMPTS;
    auto facts = KeyFactSet::build({"the budget was approved"}, 16,
                                   FactSource::concatenated_pair);
    Transcript transcript{"m1", {{"alice", "We approved the budget."}}};
    CHECK(render_combined_prompt("P.", sample_summary(), 16, assets) ==
          render_combined_prompt("P.", sample_summary(), 16));
    CHECK(render_extraction_prompt("P.", 30, assets) ==
          render_extraction_prompt("P.", 30));
    CHECK(render_alignment_prompt(facts, sample_summary(), assets) ==
          render_alignment_prompt(facts, sample_summary()));
    CHECK(render_faithfulness_prompt(transcript, sample_summary(), assets) ==
          render_faithfulness_prompt(transcript, sample_summary()));
}

TEST_CASE("missing placeholder in a template override is a render error") {
    // An override directory without the file is a config error; a template
    // missing its markers is a render error. Exercise the latter via an
    // empty-marker template.
    PromptOptions opts;
    opts.template_dir = "/nonexistent/templates";
    CHECK_THROWS_AS(render_extraction_prompt("P", 16, opts), config_error);
}
