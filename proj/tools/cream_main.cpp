// cream: comparison-based, reference-free evaluation of meeting summaries
// with Elo-ranked leaderboards.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cream/baseline.hpp"
#include "cream/config.hpp"
#include "cream/elo.hpp"
#include "cream/io.hpp"
#include "cream/judge.hpp"
#include "cream/tournament.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEmpty = 3;

using cream::RunConfig;
using nlohmann::json;

std::shared_ptr<cream::JudgeBackend> make_judge(const RunConfig& config) {
    std::shared_ptr<cream::JudgeBackend> backend;
    if (config.backend == "mock") {
        backend = std::make_shared<cream::MockJudge>(config.mock_align_threshold);
    } else {
        cream::RemoteConfig remote;
        remote.endpoint = config.endpoint;
        remote.api_key_env = config.api_key_env;
        remote.retry.max_retries = config.retries;
        remote.rate_limit.requests_per_second = config.requests_per_second;
        remote.rate_limit.max_in_flight = config.concurrency;
        backend = std::make_shared<cream::RemoteJudge>(remote);
    }
    return std::make_shared<cream::CachingJudge>(backend, config.cache_dir);
}

cream::TournamentConfig tournament_config(const RunConfig& config) {
    cream::TournamentConfig t;
    t.mode = cream::comparison_mode_from_string(config.mode);
    t.order_policy = cream::order_policy_from_string(config.order_policy);
    t.max_key_facts = config.max_key_facts;
    t.epsilon = config.epsilon;
    t.seed = config.seed;
    t.judge_model_id = config.judge_model;
    t.temperature = config.temperature;
    t.max_output_tokens = config.max_output_tokens;
    t.concurrency = config.concurrency;
    t.prompt.literal_typo = config.literal_typo;
    t.prompt.template_dir = config.template_dir;
    t.prompt.transcript_char_budget = config.transcript_char_budget;
    return t;
}

struct ConfigCli {
    std::string config_path;
    std::vector<std::string> overrides;  // key=value

    RunConfig resolve() const {
        RunConfig config;
        if (!config_path.empty()) config = cream::load_config(config_path);
        for (const auto& kv : overrides) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) {
                throw cream::config_error("--set expects key=value, got " + kv);
            }
            cream::apply_config_entry(config, kv.substr(0, eq), kv.substr(eq + 1));
        }
        config.validate();
        return config;
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "key=value config file");
        cmd->add_option("--set", overrides, "override a config key (key=value)")
            ->take_all();
    }
};

int cmd_compare(const ConfigCli& cli, const std::string& meetings_path,
                const std::string& summaries_path, const std::string& out_path) {
    auto config = cli.resolve();
    auto meetings = cream::read_meetings(meetings_path);
    auto summaries = cream::read_summaries(summaries_path, config.max_summary_lines);

    std::vector<std::string> meeting_ids;
    for (const auto& m : meetings) meeting_ids.push_back(m.meeting_id);
    std::set<std::string> model_set;
    for (const auto& [key, doc] : summaries) model_set.insert(key.second);
    std::vector<std::string> models(model_set.begin(), model_set.end());

    auto tconfig = tournament_config(config);
    auto plan = cream::schedule_matches(models, meeting_ids, summaries, tconfig.mode,
                                        tconfig.order_policy);
    for (const auto& w : plan.warnings) {
        std::cerr << "warning: " << w.message << '\n';
    }

    auto judge = make_judge(config);
    auto results = cream::run_plan(plan, summaries, *judge, tconfig);
    cream::write_results_file(out_path, config.to_json(), results);

    std::size_t invalid = 0;
    for (const auto& r : results) invalid += r.valid ? 0 : 1;
    if (invalid) {
        std::cerr << "warning: " << invalid << " of " << results.size()
                  << " matches invalid and excluded from ratings\n";
    }
    std::cout << "wrote " << results.size() << " comparison results to " << out_path
              << '\n';
    return kExitOk;
}

int cmd_rank(const ConfigCli& cli, const std::string& results_path,
             const std::string& out_dir) {
    auto config = cli.resolve();
    auto file = cream::read_results_file(results_path);
    if (file.results.empty()) {
        std::cerr << "error: no comparison results in " << results_path << '\n';
        return kExitEmpty;
    }
    auto rated = cream::derive_rated_matches(file.results, config.epsilon);
    if (rated.empty()) {
        std::cerr << "error: no valid matches in " << results_path << '\n';
        return kExitEmpty;
    }
    cream::EloConfig elo{config.k_factor, config.initial_rating, config.permutations,
                         config.seed};
    auto table = cream::rate_all(rated, elo);
    auto matrix = cream::pairwise_matrix(file.results);

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    auto meta = config.to_json();
    cream::atomic_write_file((fs::path(out_dir) / "leaderboard.json").string(),
                             cream::leaderboard_to_json(table, matrix, meta).dump(2) + "\n");
    cream::atomic_write_file((fs::path(out_dir) / "leaderboard.csv").string(),
                             cream::leaderboard_to_csv(table));
    cream::atomic_write_file((fs::path(out_dir) / "leaderboard.md").string(),
                             cream::leaderboard_to_markdown(table, matrix));
    std::cout << "wrote leaderboard.{json,csv,md} to " << out_dir << '\n';
    return kExitOk;
}

int cmd_baseline(const ConfigCli& cli, const std::string& meetings_path,
                 const std::string& summaries_path, const std::string& reference,
                 const std::string& gold_path, bool with_faithfulness,
                 const std::string& out_path) {
    auto config = cli.resolve();
    auto meetings = cream::read_meetings(meetings_path);
    auto summaries = cream::read_summaries(summaries_path, config.max_summary_lines);
    auto kind = cream::fact_source_from_string(reference);

    std::map<std::string, cream::SummaryDoc> gold;
    if (kind == cream::FactSource::human_summary) {
        if (gold_path.empty()) {
            throw cream::input_error(
                "--reference human_summary requires --gold <gold summaries file>");
        }
        gold = cream::read_gold_summaries(gold_path, config.max_summary_lines);
    }
    std::map<std::string, cream::Transcript> transcripts;
    for (const auto& m : meetings) transcripts.emplace(m.meeting_id, m);

    cream::BaselineConfig bconfig;
    bconfig.max_key_facts = config.max_key_facts;
    bconfig.transcript_char_budget = config.transcript_char_budget;
    bconfig.judge_model_id = config.judge_model;
    bconfig.temperature = config.temperature;
    bconfig.max_output_tokens = config.max_output_tokens;
    bconfig.prompt.literal_typo = config.literal_typo;
    bconfig.prompt.template_dir = config.template_dir;

    auto judge = make_judge(config);

    // rows[model][metric] accumulators
    std::map<std::string, std::map<std::string, std::pair<double, std::size_t>>> rows;
    for (const auto& [key, summary] : summaries) {
        const auto& [meeting_id, model_id] = key;
        cream::ReferenceSource source = [&] {
            switch (kind) {
                case cream::FactSource::human_summary:
                    if (!gold.count(meeting_id)) {
                        throw cream::input_error("no gold summary for meeting " + meeting_id);
                    }
                    return cream::ReferenceSource::from_summary(gold.at(meeting_id), kind);
                case cream::FactSource::machine_summary:
                    return cream::ReferenceSource::from_summary(summary, kind);
                case cream::FactSource::transcript:
                    return cream::ReferenceSource::from_transcript(transcripts.at(meeting_id));
                default:
                    throw cream::input_error("unsupported reference kind " + reference);
            }
        }();
        auto facts = cream::extract_reference_key_facts(source, *judge, bconfig);
        auto scores = cream::score_summary_absolute(summary, facts, *judge, bconfig);
        auto& row = rows[model_id];
        row["completeness"].first += scores.completeness;
        row["completeness"].second += 1;
        row["conciseness"].first += scores.conciseness;
        row["conciseness"].second += 1;
        if (with_faithfulness) {
            auto [labels, score] = cream::evaluate_faithfulness(
                transcripts.at(meeting_id), summary, *judge, bconfig);
            row["faithfulness"].first += score;
            row["faithfulness"].second += 1;
        }
    }

    json out_rows = json::array();
    for (const auto& [model, metrics] : rows) {
        json row = {{"model", model}, {"reference", reference}};
        for (const auto& [metric, acc] : metrics) {
            row[metric] = acc.first / static_cast<double>(acc.second);
        }
        out_rows.push_back(row);
    }
    json out = {{"config", config.to_json()},
                {"reference", reference},
                {"rows", out_rows}};
    cream::atomic_write_file(out_path, out.dump(2) + "\n");

    std::ostringstream csv;
    csv << "model,reference,completeness,conciseness";
    if (with_faithfulness) csv << ",faithfulness";
    csv << '\n';
    for (const auto& row : out_rows) {
        csv << row["model"].get<std::string>() << ',' << reference << ','
            << row["completeness"].get<double>() << ',' << row["conciseness"].get<double>();
        if (with_faithfulness) csv << ',' << row["faithfulness"].get<double>();
        csv << '\n';
    }
    auto csv_path = out_path + ".csv";
    cream::atomic_write_file(csv_path, csv.str());
    std::cout << "wrote baseline scores to " << out_path << " and " << csv_path << '\n';
    return kExitOk;
}

int cmd_ingest_qmsum(const std::vector<std::string>& inputs,
                     const std::string& out_path) {
    std::ostringstream out;
    for (const auto& path : inputs) {
        std::ifstream in(path);
        if (!in) throw cream::input_error("cannot read " + path);
        json record = json::parse(in, nullptr, false);
        if (record.is_discarded()) throw cream::input_error(path + ": invalid JSON");
        auto meeting_id = std::filesystem::path(path).stem().string();
        auto transcript = cream::qmsum_to_transcript(record, meeting_id);
        json turns = json::array();
        for (const auto& t : transcript.turns) {
            turns.push_back({{"speaker", t.speaker}, {"text", t.text}});
        }
        out << json{{"meeting_id", transcript.meeting_id}, {"turns", turns}}.dump()
            << '\n';
    }
    cream::atomic_write_file(out_path, out.str());
    std::cout << "wrote " << inputs.size() << " meetings to " << out_path << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"comparison-based reference-free summary evaluation"};
    app.require_subcommand(1);

    ConfigCli compare_cfg, rank_cfg, baseline_cfg;
    std::string meetings_path, summaries_path, out_path, results_path, out_dir;
    std::string reference = "machine_summary", gold_path;
    bool with_faithfulness = false;
    std::vector<std::string> ingest_inputs;

    auto* compare = app.add_subcommand("compare", "run pairwise comparisons");
    compare_cfg.attach(compare);
    compare->add_option("--meetings", meetings_path, "meetings JSONL")->required();
    compare->add_option("--summaries", summaries_path, "summaries JSONL")->required();
    compare->add_option("--out", out_path, "results file (JSONL)")->required();

    auto* rank = app.add_subcommand("rank", "rank comparison results");
    rank_cfg.attach(rank);
    rank->add_option("--results", results_path, "results file from compare")->required();
    rank->add_option("--out", out_dir, "output directory")->required();

    auto* baseline = app.add_subcommand("baseline", "reference-based absolute scores");
    baseline_cfg.attach(baseline);
    baseline->add_option("--meetings", meetings_path, "meetings JSONL")->required();
    baseline->add_option("--summaries", summaries_path, "summaries JSONL")->required();
    baseline->add_option("--reference", reference,
                         "human_summary | machine_summary | transcript");
    baseline->add_option("--gold", gold_path, "gold summaries JSONL");
    baseline->add_flag("--faithfulness", with_faithfulness,
                       "also score per-sentence faithfulness");
    baseline->add_option("--out", out_path, "output file (JSON)")->required();

    auto* ingest = app.add_subcommand("ingest-qmsum", "convert QMSum records");
    ingest->add_option("inputs", ingest_inputs, "QMSum JSON files")->required();
    ingest->add_option("--out", out_path, "meetings JSONL output")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (compare->parsed()) {
            return cmd_compare(compare_cfg, meetings_path, summaries_path, out_path);
        }
        if (rank->parsed()) return cmd_rank(rank_cfg, results_path, out_dir);
        if (baseline->parsed()) {
            return cmd_baseline(baseline_cfg, meetings_path, summaries_path, reference,
                                gold_path, with_faithfulness, out_path);
        }
        if (ingest->parsed()) return cmd_ingest_qmsum(ingest_inputs, out_path);
    } catch (const cream::rating_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitEmpty;
    } catch (const cream::error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitOk;
}
