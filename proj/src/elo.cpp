#include "cream/elo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <unordered_map>

namespace cream {

std::string to_string(Metric m) {
    return m == Metric::completeness ? "completeness" : "conciseness";
}

Metric metric_from_string(const std::string& s) {
    if (s == "completeness") return Metric::completeness;
    if (s == "conciseness") return Metric::conciseness;
    throw input_error("unknown metric: " + s);
}

double expected_score(double r_self, double r_opp) {
    return 1.0 / (1.0 + std::pow(10.0, (r_opp - r_self) / 400.0));
}

double apply_update(double r_old, double r_opp, double actual, double k) {
    return r_old + k * (actual - expected_score(r_old, r_opp));
}

namespace {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t metric, std::uint64_t perm) {
    // splitmix64 over the combined inputs.
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (metric * 1000003ull + perm + 1ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

RatingTable rate_all(const std::vector<RatedMatch>& outcomes, const EloConfig& config) {
    if (config.k_factor <= 0) throw config_error("elo: k_factor must be positive");
    if (config.permutations < 1) throw config_error("elo: permutations must be >= 1");

    RatingTable table;
    for (Metric metric : {Metric::completeness, Metric::conciseness}) {
        std::vector<std::size_t> indices;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            if (outcomes[i].metric == metric) indices.push_back(i);
        }
        if (indices.empty()) continue;

        std::unordered_map<std::string, std::uint32_t> played;
        for (auto i : indices) {
            ++played[outcomes[i].model_a];
            ++played[outcomes[i].model_b];
        }

        // sum / sum of squares of final ratings across permutations
        std::unordered_map<std::string, double> sum, sumsq;
        for (std::uint32_t p = 0; p < config.permutations; ++p) {
            auto order = indices;
            std::mt19937_64 rng(mix_seed(config.rng_seed, static_cast<std::uint64_t>(metric), p));
            std::shuffle(order.begin(), order.end(), rng);

            std::unordered_map<std::string, double> rating;
            for (auto& [model, _] : played) rating[model] = config.initial_rating;
            for (auto i : order) {
                const auto& m = outcomes[i];
                double ra = rating[m.model_a];
                double rb = rating[m.model_b];
                rating[m.model_a] = apply_update(ra, rb, m.score_for_a, config.k_factor);
                rating[m.model_b] = apply_update(rb, ra, 1.0 - m.score_for_a, config.k_factor);
            }
            for (auto& [model, r] : rating) {
                sum[model] += r;
                sumsq[model] += r * r;
            }
        }

        auto& out = table.by_metric[metric];
        const double n = config.permutations;
        for (auto& [model, s] : sum) {
            double mean = s / n;
            double var = std::max(0.0, sumsq[model] / n - mean * mean);
            out[model] = {mean, std::sqrt(var), played[model]};
        }
    }
    if (table.by_metric.empty()) throw rating_error("elo: no valid outcomes to rate");
    return table;
}

std::vector<LeaderboardRow> leaderboard(const RatingTable& table, Metric metric) {
    auto it = table.by_metric.find(metric);
    if (it == table.by_metric.end() || it->second.empty()) {
        throw rating_error("leaderboard: no ratings for metric " + to_string(metric));
    }
    std::vector<LeaderboardRow> rows;
    for (const auto& [model, rating] : it->second) rows.push_back({0, model, rating});
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.rating.mean != b.rating.mean) return a.rating.mean > b.rating.mean;
        return a.model_id < b.model_id;
    });

    // Competition ranking; a row ties with the head of the current group
    // when the mean +/- spread intervals overlap.
    std::size_t group_head = 0;
    rows[0].rank = 1;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& head = rows[group_head].rating;
        const auto& cur = rows[i].rating;
        bool overlap = cur.mean + cur.spread >= head.mean - head.spread;
        if (cur.mean == head.mean || overlap) {
            rows[i].rank = rows[group_head].rank;
        } else {
            rows[i].rank = static_cast<std::uint32_t>(i + 1);
            group_head = i;
        }
    }
    return rows;
}

}  // namespace cream
