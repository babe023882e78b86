#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "steerchess/core/board.hpp"
#include "steerchess/enc/distribution.hpp"

namespace steerchess::eval {

// A scored position: normalized distribution plus the target's policy index.
struct ScoredRecord {
    enc::MoveDistribution distribution;
    int target_index = 0;
    std::optional<int> white_elo;
    std::optional<int> black_elo;
};

// Fraction of records whose argmax (ties to the lowest policy index)
// matches the target. Throws std::invalid_argument on empty input.
double acc_at_1(const std::vector<ScoredRecord>& records);

// Mean probability assigned to the target move. Throws on empty input and
// on a target outside the legal set (a data bug upstream).
double expected_acc(const std::vector<ScoredRecord>& records);

// Parsed move when `move_text` names a legal move (SAN or UCI); otherwise a
// uniform draw over the legal moves. Throws on terminal positions.
core::Move legal_fallback(const std::string& move_text, const core::BoardState& state,
                          std::mt19937_64& rng);

// Support-weighted mean of per-class F1; classes without true or predicted
// positives contribute F1 = 0. Throws on empty or mismatched inputs.
double weighted_f1(const std::vector<std::string>& preds,
                   const std::vector<std::string>& truths);

double mae(const std::vector<double>& preds, const std::vector<double>& truths);

// Arithmetic mean of the three benchmark accuracies.
double dev_score(double acc_lob_p, double acc_lif_d, double acc_m1s);

struct HeatmapCell {
    int white_bucket = 0;
    int black_bucket = 0;
    double value = 0.0;
    std::int64_t count = 0;
};

struct HeatmapSample {
    int white_elo = 0;
    int black_elo = 0;
    double value = 0.0;
};

// Per-bucket mean keyed on both players' Elo rounded to the nearest
// hundred (half up); empty buckets are absent. Rows ordered by
// (white_bucket, black_bucket).
std::vector<HeatmapCell> elo_heatmap(const std::vector<HeatmapSample>& samples);

int round_to_hundred(int elo);

std::string heatmap_csv(const std::vector<HeatmapCell>& cells,
                        const std::string& metric_name);

}  // namespace steerchess::eval
