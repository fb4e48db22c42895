#pragma once
// Judge backends: a remote chat-completion client and a deterministic
// lexical mock, both behind a disk cache with retry and rate limiting.

#include <chrono>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "cream/types.hpp"

namespace cream {

struct JudgeRequest {
    std::string prompt;
    std::string judge_model_id;
    double temperature = 0.0;
    std::uint32_t max_output_tokens = 4096;
    std::optional<std::int64_t> seed_hint;
    // Skips cache lookup (the cached entry is still refreshed). Used for
    // the single re-ask after a validation failure.
    bool bypass_cache = false;
};

struct JudgeResponse {
    std::string raw_text;
    std::string judge_model_id;
    bool cached = false;
    std::uint64_t latency_ms = 0;
};

class JudgeBackend {
public:
    virtual ~JudgeBackend() = default;
    virtual JudgeResponse complete(const JudgeRequest& request) = 0;
};

// Deterministic offline judge. Recognizes the prompt layouts produced by
// promptkit and answers from lexical overlap. Pure: same prompt, same
// bytes out.
class MockJudge : public JudgeBackend {
public:
    explicit MockJudge(double align_threshold = 0.6)
        : align_threshold_(align_threshold) {}
    JudgeResponse complete(const JudgeRequest& request) override;

private:
    double align_threshold_;
};

// The mock's structured primitives, exposed as pure functions so they can
// double as offline oracles in tests.
KeyFactSet mock_extract(const std::string& paragraph, std::size_t max_facts);
AlignmentSet mock_align(const KeyFactSet& facts, const SummaryDoc& summary,
                        double threshold = 0.6);
FaithfulnessLabels mock_faithfulness(const std::string& transcript_text,
                                     const SummaryDoc& summary);

struct RetryPolicy {
    std::uint32_t max_retries = 3;
    std::chrono::milliseconds initial_delay{500};
    double backoff_factor = 2.0;
};

struct RateLimit {
    double requests_per_second = 5.0;
    std::uint32_t burst = 4;
    std::uint32_t max_in_flight = 4;
};

struct RemoteConfig {
    std::string endpoint;        // e.g. https://api.example.com
    std::string path = "/v1/chat/completions";
    std::string api_key_env;     // env var holding the credential; empty = none
    RetryPolicy retry;
    RateLimit rate_limit;
    std::chrono::milliseconds timeout{60000};
};

// Chat-completion HTTP client. Stateless per request; retries transport
// failures and HTTP 429 with exponential backoff.
class RemoteJudge : public JudgeBackend {
public:
    explicit RemoteJudge(RemoteConfig config);
    ~RemoteJudge() override;
    JudgeResponse complete(const JudgeRequest& request) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Content-addressed disk cache wrapped around any backend. One file per
// key; a cached response is byte-identical to the stored original.
class CachingJudge : public JudgeBackend {
public:
    CachingJudge(std::shared_ptr<JudgeBackend> inner, std::string cache_dir);
    JudgeResponse complete(const JudgeRequest& request) override;

    static std::string cache_key(const JudgeRequest& request);

private:
    std::shared_ptr<JudgeBackend> inner_;
    std::string cache_dir_;
    std::mutex mutex_;
};

}  // namespace cream
