#pragma once
// Run configuration: one key-value file, overridable per key by CLI flags.

#include <cstdint>
#include <string>

#include <json.hpp>

namespace cream {

struct RunConfig {
    std::string backend = "mock";  // mock | remote
    std::string endpoint;
    std::string judge_model = "mock";
    std::string api_key_env = "CREAM_API_KEY";
    std::size_t max_key_facts = 16;
    std::string mode = "shared_extraction";
    std::string order_policy = "both_orders";
    double epsilon = 0.02;
    double k_factor = 32.0;
    double initial_rating = 1000.0;
    std::uint32_t permutations = 100;
    std::uint64_t seed = 0;
    std::uint32_t concurrency = 4;
    std::string cache_dir;
    double temperature = 0.0;
    std::uint32_t max_output_tokens = 4096;
    std::uint32_t retries = 3;
    double requests_per_second = 5.0;
    std::size_t transcript_char_budget = 60000;
    std::size_t max_summary_lines = 200;
    bool literal_typo = false;
    std::string template_dir;
    double mock_align_threshold = 0.6;

    void validate() const;
    nlohmann::json to_json() const;
};

// Parses "key = value" lines; '#' starts a comment. Unknown keys are a
// config error.
RunConfig load_config(const std::string& path);
void apply_config_entry(RunConfig& config, const std::string& key,
                        const std::string& value);

}  // namespace cream
