#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cream/judge.hpp"

#include <json.hpp>

namespace cream {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a(const std::string& data, std::uint64_t seed) {
    std::uint64_t h = seed;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[v & 0xf];
        v >>= 4;
    }
    return out;
}

void atomic_write(const fs::path& target, const std::string& content) {
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << content;
    }
    fs::rename(tmp, target);
}

}  // namespace

std::string CachingJudge::cache_key(const JudgeRequest& request) {
    std::ostringstream material;
    material << request.judge_model_id << '\x1f' << request.temperature << '\x1f'
             << request.max_output_tokens << '\x1f' << request.prompt;
    auto s = material.str();
    return hex64(fnv1a(s, 1469598103934665603ull)) + hex64(fnv1a(s, 0x811c9dc5a3c5b357ull));
}

CachingJudge::CachingJudge(std::shared_ptr<JudgeBackend> inner, std::string cache_dir)
    : inner_(std::move(inner)), cache_dir_(std::move(cache_dir)) {
    if (!cache_dir_.empty()) fs::create_directories(cache_dir_);
}

JudgeResponse CachingJudge::complete(const JudgeRequest& request) {
    if (cache_dir_.empty()) return inner_->complete(request);

    const auto path = fs::path(cache_dir_) / (cache_key(request) + ".json");
    if (!request.bypass_cache) {
        std::lock_guard lock(mutex_);
        std::ifstream in(path, std::ios::binary);
        if (in) {
            json entry = json::parse(in, nullptr, false);
            // Full-prompt check guards against hash collisions and stale files.
            if (!entry.is_discarded() && entry.value("prompt", "") == request.prompt) {
                JudgeResponse response;
                response.raw_text = entry.at("response").get<std::string>();
                response.judge_model_id = entry.value("model", request.judge_model_id);
                response.cached = true;
                return response;
            }
        }
    }

    auto response = inner_->complete(request);
    json entry = {{"prompt", request.prompt},
                  {"model", response.judge_model_id},
                  {"temperature", request.temperature},
                  {"max_output_tokens", request.max_output_tokens},
                  {"response", response.raw_text}};
    std::lock_guard lock(mutex_);
    atomic_write(path, entry.dump());
    return response;
}

}  // namespace cream
