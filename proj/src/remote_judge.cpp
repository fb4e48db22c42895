#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

#include "cream/judge.hpp"

#include <httplib.h>
#include <json.hpp>

namespace cream {

using nlohmann::json;

namespace {

// Counting limiter for concurrent in-flight requests.
class InFlightLimiter {
public:
    explicit InFlightLimiter(std::uint32_t limit) : available_(limit) {}

    void acquire() {
        std::unique_lock lock(mutex_);
        cv_.wait(lock, [this] { return available_ > 0; });
        --available_;
    }
    void release() {
        {
            std::lock_guard lock(mutex_);
            ++available_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mutex_;
    std::condition_variable cv_;
    std::uint32_t available_;
};

// Token bucket over a monotonic clock.
class TokenBucket {
public:
    TokenBucket(double rate, double burst)
        : rate_(rate), capacity_(burst), tokens_(burst),
          last_(std::chrono::steady_clock::now()) {}

    void take() {
        std::unique_lock lock(mutex_);
        for (;;) {
            refill();
            if (tokens_ >= 1.0) {
                tokens_ -= 1.0;
                return;
            }
            auto wait = std::chrono::duration<double>((1.0 - tokens_) / rate_);
            lock.unlock();
            std::this_thread::sleep_for(wait);
            lock.lock();
        }
    }

private:
    void refill() {
        auto now = std::chrono::steady_clock::now();
        tokens_ = std::min(capacity_,
                           tokens_ + rate_ * std::chrono::duration<double>(now - last_).count());
        last_ = now;
    }

    std::mutex mutex_;
    double rate_;
    double capacity_;
    double tokens_;
    std::chrono::steady_clock::time_point last_;
};

}  // namespace

struct RemoteJudge::Impl {
    RemoteConfig config;
    std::string api_key;
    InFlightLimiter in_flight;
    TokenBucket bucket;

    explicit Impl(RemoteConfig cfg)
        : config(std::move(cfg)),
          in_flight(config.rate_limit.max_in_flight),
          bucket(config.rate_limit.requests_per_second, config.rate_limit.burst) {
        if (config.endpoint.empty()) {
            throw config_error("remote judge: endpoint not configured");
        }
        if (!config.api_key_env.empty()) {
            const char* key = std::getenv(config.api_key_env.c_str());
            if (!key || !*key) {
                throw config_error("remote judge: environment variable " +
                                   config.api_key_env + " is not set");
            }
            api_key = key;
        }
    }
};

RemoteJudge::RemoteJudge(RemoteConfig config)
    : impl_(std::make_unique<Impl>(std::move(config))) {}

RemoteJudge::~RemoteJudge() = default;

JudgeResponse RemoteJudge::complete(const JudgeRequest& request) {
    if (request.prompt.empty()) throw input_error("remote judge: empty prompt");
    const auto& cfg = impl_->config;

    json body = {{"model", request.judge_model_id},
                 {"messages", json::array({{{"role", "user"}, {"content", request.prompt}}})},
                 {"temperature", request.temperature},
                 {"max_tokens", request.max_output_tokens}};
    if (request.seed_hint) body["seed"] = *request.seed_hint;
    const auto payload = body.dump();

    httplib::Headers headers;
    if (!impl_->api_key.empty()) {
        headers.emplace("Authorization", "Bearer " + impl_->api_key);
    }

    std::string last_failure = "no attempt made";
    auto delay = cfg.retry.initial_delay;
    const auto start = std::chrono::steady_clock::now();
    for (std::uint32_t attempt = 0; attempt <= cfg.retry.max_retries; ++attempt) {
        if (attempt > 0) {
            std::this_thread::sleep_for(delay);
            delay = std::chrono::milliseconds(static_cast<std::int64_t>(
                static_cast<double>(delay.count()) * cfg.retry.backoff_factor));
        }
        impl_->bucket.take();
        impl_->in_flight.acquire();
        httplib::Client client(cfg.endpoint);
        client.set_connection_timeout(std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout));
        client.set_read_timeout(std::chrono::duration_cast<std::chrono::seconds>(cfg.timeout));
        auto result = client.Post(cfg.path, headers, payload, "application/json");
        impl_->in_flight.release();

        if (!result) {
            last_failure = "transport failure: " + httplib::to_string(result.error());
            continue;
        }
        if (result->status == 429) {
            last_failure = "rate limited (HTTP 429)";
            continue;
        }
        if (result->status >= 500) {
            last_failure = "server error (HTTP " + std::to_string(result->status) + ")";
            continue;
        }
        if (result->status != 200) {
            throw transport_error("remote judge: HTTP " + std::to_string(result->status) +
                                  ": " + result->body);
        }
        json reply = json::parse(result->body, nullptr, false);
        if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty()) {
            throw transport_error("remote judge: malformed completion payload");
        }
        JudgeResponse response;
        response.raw_text =
            reply["choices"][0].at("message").at("content").get<std::string>();
        response.judge_model_id = reply.value("model", request.judge_model_id);
        response.latency_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - start)
                .count());
        return response;
    }
    throw transport_error("remote judge: retries exhausted; last failure: " + last_failure);
}

}  // namespace cream
