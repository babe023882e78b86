#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "steerchess/bench/position.hpp"
#include "steerchess/eval/metrics.hpp"

namespace steerchess::eval {

// One row of a prediction file: either a sparse distribution over UCI
// moves or a raw move string; aux predictions optional.
struct PredictionRecord {
    std::string id;
    std::optional<std::map<std::string, double>> distribution;
    std::optional<std::string> move_text;
    std::optional<int> aux_result;
    std::optional<std::string> aux_termination;
    std::optional<double> aux_moves_left;
    std::optional<double> aux_value;
    std::optional<double> aux_move_delay;
};

PredictionRecord prediction_from_json(const std::string& line);
std::string to_json_line(const PredictionRecord& rec);

// Throws on duplicate ids.
std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path);

struct EvalOptions {
    int skip_first_plies = 0;
    std::optional<double> min_clock_seconds;
    std::uint64_t seed = 0;  // drives the illegal-move fallback
};

struct MetricReport {
    double acc_at_1 = 0.0;
    double expected_acc = 0.0;
    std::int64_t total_positions = 0;
    std::int64_t evaluated = 0;
    std::int64_t skipped_by_filters = 0;
    std::int64_t fallback_moves = 0;  // raw-text rows that needed a uniform draw
    std::vector<std::string> missing_prediction_ids;
    std::optional<double> f1_result;
    std::optional<double> f1_termination;
    std::optional<double> f1_resigned;
    std::optional<double> mae_moves_left;
    std::optional<double> mae_value;
    std::optional<double> mae_move_delay;
    int skip_first_plies = 0;
    std::optional<double> min_clock_seconds;

    std::string to_json() const;
};

struct EvalResult {
    MetricReport report;
    std::vector<HeatmapSample> acc_samples;       // 0/1 per record
    std::vector<HeatmapSample> expected_samples;  // P(target) per record
};

// Joins benchmark positions with predictions, applies the filters, scores
// everything. Throws on duplicate prediction ids or malformed rows.
EvalResult evaluate(const std::vector<bench::BenchmarkPosition>& positions,
                    const std::vector<PredictionRecord>& predictions,
                    const EvalOptions& options);

}  // namespace steerchess::eval
