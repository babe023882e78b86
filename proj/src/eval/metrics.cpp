#include "steerchess/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "steerchess/core/movegen.hpp"
#include "steerchess/core/notation.hpp"
#include "steerchess/util/rng.hpp"

namespace steerchess::eval {

double acc_at_1(const std::vector<ScoredRecord>& records) {
    if (records.empty()) throw std::invalid_argument("acc_at_1: empty input");
    std::int64_t hits = 0;
    for (const ScoredRecord& rec : records) {
        if (rec.distribution.argmax() == rec.target_index) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(records.size());
}

double expected_acc(const std::vector<ScoredRecord>& records) {
    if (records.empty()) throw std::invalid_argument("expected_acc: empty input");
    double total = 0.0;
    for (const ScoredRecord& rec : records) {
        const auto& legal = rec.distribution.legal_indices;
        if (std::find(legal.begin(), legal.end(), rec.target_index) == legal.end()) {
            throw std::invalid_argument("expected_acc: target move is not legal");
        }
        total += rec.distribution.prob_at(rec.target_index);
    }
    return total / static_cast<double>(records.size());
}

core::Move legal_fallback(const std::string& move_text, const core::BoardState& state,
                          std::mt19937_64& rng) {
    const auto moves = core::legal_moves(state);
    if (moves.empty()) throw std::invalid_argument("legal_fallback: terminal position");
    try {
        return core::parse_move(state, move_text);
    } catch (const std::invalid_argument&) {
        return moves[util::uniform_below(rng, moves.size())];
    }
}

double weighted_f1(const std::vector<std::string>& preds,
                   const std::vector<std::string>& truths) {
    if (preds.size() != truths.size()) {
        throw std::invalid_argument("weighted_f1: length mismatch");
    }
    if (truths.empty()) throw std::invalid_argument("weighted_f1: empty input");

    std::set<std::string> labels(truths.begin(), truths.end());
    labels.insert(preds.begin(), preds.end());

    double weighted = 0.0;
    for (const std::string& label : labels) {
        std::int64_t tp = 0, fp = 0, fn = 0, support = 0;
        for (std::size_t i = 0; i < truths.size(); ++i) {
            const bool is_true = truths[i] == label;
            const bool is_pred = preds[i] == label;
            support += is_true ? 1 : 0;
            if (is_true && is_pred) ++tp;
            if (!is_true && is_pred) ++fp;
            if (is_true && !is_pred) ++fn;
        }
        if (support == 0) continue;  // zero weight
        const double denom = static_cast<double>(2 * tp + fp + fn);
        const double f1 = denom == 0.0 ? 0.0 : 2.0 * static_cast<double>(tp) / denom;
        weighted += f1 * static_cast<double>(support);
    }
    return weighted / static_cast<double>(truths.size());
}

double mae(const std::vector<double>& preds, const std::vector<double>& truths) {
    if (preds.size() != truths.size()) throw std::invalid_argument("mae: length mismatch");
    if (truths.empty()) throw std::invalid_argument("mae: empty input");
    double total = 0.0;
    for (std::size_t i = 0; i < truths.size(); ++i) {
        total += std::abs(preds[i] - truths[i]);
    }
    return total / static_cast<double>(truths.size());
}

double dev_score(double acc_lob_p, double acc_lif_d, double acc_m1s) {
    return (acc_lob_p + acc_lif_d + acc_m1s) / 3.0;
}

int round_to_hundred(int elo) { return ((elo + 50) / 100) * 100; }

std::vector<HeatmapCell> elo_heatmap(const std::vector<HeatmapSample>& samples) {
    std::map<std::pair<int, int>, std::pair<double, std::int64_t>> buckets;
    for (const HeatmapSample& s : samples) {
        auto& cell = buckets[{round_to_hundred(s.white_elo), round_to_hundred(s.black_elo)}];
        cell.first += s.value;
        cell.second += 1;
    }
    std::vector<HeatmapCell> out;
    out.reserve(buckets.size());
    for (const auto& [key, agg] : buckets) {
        out.push_back(HeatmapCell{key.first, key.second,
                                  agg.first / static_cast<double>(agg.second), agg.second});
    }
    return out;
}

std::string heatmap_csv(const std::vector<HeatmapCell>& cells,
                        const std::string& metric_name) {
    std::ostringstream out;
    out << "white_bucket,black_bucket," << metric_name << ",count\n";
    for (const HeatmapCell& cell : cells) {
        out << cell.white_bucket << ',' << cell.black_bucket << ',' << cell.value << ','
            << cell.count << '\n';
    }
    return out.str();
}

}  // namespace steerchess::eval
