#include "cream/config.hpp"

#include <fstream>

#include "cream/types.hpp"

namespace cream {

void RunConfig::validate() const {
    if (backend != "mock" && backend != "remote") {
        throw config_error("config: backend must be mock or remote");
    }
    if (backend == "remote" && endpoint.empty()) {
        throw config_error("config: remote backend requires an endpoint");
    }
    if (max_key_facts < 1 || max_key_facts > 100) {
        throw config_error("config: max_key_facts must be in 1..100");
    }
    if (mode != "shared_extraction" && mode != "combined_prompt") {
        throw config_error("config: unknown mode " + mode);
    }
    if (order_policy != "both_orders" && order_policy != "seeded_random") {
        throw config_error("config: unknown order_policy " + order_policy);
    }
    if (epsilon < 0) throw config_error("config: epsilon must be >= 0");
    if (k_factor <= 0) throw config_error("config: k_factor must be positive");
    if (permutations < 1) throw config_error("config: permutations must be >= 1");
    if (max_summary_lines < 1) throw config_error("config: max_summary_lines must be >= 1");
}

nlohmann::json RunConfig::to_json() const {
    return {{"backend", backend},
            {"endpoint", endpoint},
            {"judge_model", judge_model},
            {"api_key_env", api_key_env},
            {"max_key_facts", max_key_facts},
            {"mode", mode},
            {"order_policy", order_policy},
            {"epsilon", epsilon},
            {"k_factor", k_factor},
            {"initial_rating", initial_rating},
            {"permutations", permutations},
            {"seed", seed},
            {"concurrency", concurrency},
            {"cache_dir", cache_dir},
            {"temperature", temperature},
            {"max_output_tokens", max_output_tokens},
            {"retries", retries},
            {"requests_per_second", requests_per_second},
            {"transcript_char_budget", transcript_char_budget},
            {"max_summary_lines", max_summary_lines},
            {"literal_typo", literal_typo},
            {"template_dir", template_dir},
            {"mock_align_threshold", mock_align_threshold}};
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw config_error("config: invalid boolean value " + v);
}

}  // namespace

void apply_config_entry(RunConfig& c, const std::string& key, const std::string& value) {
    try {
        if (key == "backend") c.backend = value;
        else if (key == "endpoint") c.endpoint = value;
        else if (key == "judge_model") c.judge_model = value;
        else if (key == "api_key_env") c.api_key_env = value;
        else if (key == "max_key_facts") c.max_key_facts = std::stoul(value);
        else if (key == "mode") c.mode = value;
        else if (key == "order_policy") c.order_policy = value;
        else if (key == "epsilon") c.epsilon = std::stod(value);
        else if (key == "k_factor") c.k_factor = std::stod(value);
        else if (key == "initial_rating") c.initial_rating = std::stod(value);
        else if (key == "permutations") c.permutations = static_cast<std::uint32_t>(std::stoul(value));
        else if (key == "seed") c.seed = std::stoull(value);
        else if (key == "concurrency") c.concurrency = static_cast<std::uint32_t>(std::stoul(value));
        else if (key == "cache_dir") c.cache_dir = value;
        else if (key == "temperature") c.temperature = std::stod(value);
        else if (key == "max_output_tokens") c.max_output_tokens = static_cast<std::uint32_t>(std::stoul(value));
        else if (key == "retries") c.retries = static_cast<std::uint32_t>(std::stoul(value));
        else if (key == "requests_per_second") c.requests_per_second = std::stod(value);
        else if (key == "transcript_char_budget") c.transcript_char_budget = std::stoul(value);
        else if (key == "max_summary_lines") c.max_summary_lines = std::stoul(value);
        else if (key == "literal_typo") c.literal_typo = parse_bool(value);
        else if (key == "template_dir") c.template_dir = value;
        else if (key == "mock_align_threshold") c.mock_align_threshold = std::stod(value);
        else throw config_error("config: unknown key " + key);
    } catch (const std::invalid_argument&) {
        throw config_error("config: invalid value for " + key + ": " + value);
    } catch (const std::out_of_range&) {
        throw config_error("config: value out of range for " + key + ": " + value);
    }
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config: cannot read " + path);
    RunConfig config;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config: malformed line " + std::to_string(lineno) +
                               " in " + path);
        }
        apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    config.validate();
    return config;
}

}  // namespace cream
