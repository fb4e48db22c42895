#pragma once
// Elo rating engine over pairwise match outcomes. Sequential Elo is
// order-dependent, so reported ratings are averaged over seeded
// permutations of the match list.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cream/types.hpp"

namespace cream {

enum class Metric { completeness, conciseness };

std::string to_string(Metric m);
Metric metric_from_string(const std::string& s);

struct EloConfig {
    double k_factor = 32.0;
    double initial_rating = 1000.0;
    std::uint32_t permutations = 100;
    std::uint64_t rng_seed = 0;
};

// One rated match: score_for_a is 1 (win), 0.5 (draw) or 0 (loss).
struct RatedMatch {
    Metric metric = Metric::completeness;
    std::string model_a;
    std::string model_b;
    double score_for_a = 0.5;
};

struct ModelRating {
    double mean = 0.0;
    double spread = 0.0;  // stddev across permutations
    std::uint32_t matches_played = 0;
};

struct RatingTable {
    std::map<Metric, std::map<std::string, ModelRating>> by_metric;
};

struct LeaderboardRow {
    std::uint32_t rank = 0;  // ties share a rank
    std::string model_id;
    ModelRating rating;
};

double expected_score(double r_self, double r_opp);

// r_old + k * (actual - expected_score(r_old, r_opp)).
double apply_update(double r_old, double r_opp, double actual, double k);

RatingTable rate_all(const std::vector<RatedMatch>& outcomes, const EloConfig& config);

// Descending by mean rating; exact ties and spread-overlapping neighbours
// share a rank.
std::vector<LeaderboardRow> leaderboard(const RatingTable& table, Metric metric);

}  // namespace cream
