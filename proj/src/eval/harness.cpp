#include "steerchess/eval/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "steerchess/core/movegen.hpp"
#include "steerchess/core/notation.hpp"
#include "steerchess/enc/move_table.hpp"
#include "steerchess/util/rng.hpp"

namespace steerchess::eval {

namespace {

using nlohmann::json;

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

// Distribution from explicit move:probability pairs; every key must be a
// legal move and the mass must already be normalized (1e-6 slack, then
// renormalized in double precision).
enc::MoveDistribution distribution_from_pairs(const std::map<std::string, double>& pairs,
                                              const core::BoardState& state) {
    enc::MoveDistribution dist;
    dist.probs.assign(enc::MoveTable::kSize, 0.0);
    double total = 0.0;
    for (const auto& [uci, prob] : pairs) {
        if (prob < 0.0 || !std::isfinite(prob)) {
            throw std::invalid_argument("prediction probability out of range for " + uci);
        }
        const core::Move move = core::uci_to_move(state, uci);  // throws if illegal
        const int idx = enc::move_to_policy_index(move, state);
        dist.probs[static_cast<std::size_t>(idx)] += prob;
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw std::invalid_argument("prediction distribution does not sum to 1");
    }
    for (const core::Move& m : core::legal_moves(state)) {
        dist.legal_indices.push_back(enc::move_to_policy_index(m, state));
    }
    std::sort(dist.legal_indices.begin(), dist.legal_indices.end());
    for (int idx : dist.legal_indices) {
        dist.probs[static_cast<std::size_t>(idx)] /= total;
    }
    return dist;
}

enc::MoveDistribution point_mass(const core::Move& move, const core::BoardState& state) {
    enc::MoveDistribution dist;
    dist.probs.assign(enc::MoveTable::kSize, 0.0);
    for (const core::Move& m : core::legal_moves(state)) {
        dist.legal_indices.push_back(enc::move_to_policy_index(m, state));
    }
    std::sort(dist.legal_indices.begin(), dist.legal_indices.end());
    dist.probs[static_cast<std::size_t>(enc::move_to_policy_index(move, state))] = 1.0;
    return dist;
}

}  // namespace

PredictionRecord prediction_from_json(const std::string& line) {
    const json j = json::parse(line);
    PredictionRecord rec;
    rec.id = j.at("id").get<std::string>();
    if (j.contains("dist")) {
        rec.distribution = j.at("dist").get<std::map<std::string, double>>();
    }
    if (j.contains("move")) {
        rec.move_text = j.at("move").get<std::string>();
    }
    if (rec.distribution.has_value() == rec.move_text.has_value()) {
        throw std::invalid_argument("prediction row " + rec.id +
                                    ": exactly one of dist/move required");
    }
    if (j.contains("aux")) {
        const json& aux = j.at("aux");
        rec.aux_result = get_opt<int>(aux, "result");
        rec.aux_termination = get_opt<std::string>(aux, "termination");
        rec.aux_moves_left = get_opt<double>(aux, "moves_left");
        rec.aux_value = get_opt<double>(aux, "value");
        rec.aux_move_delay = get_opt<double>(aux, "move_delay");
    }
    return rec;
}

std::string to_json_line(const PredictionRecord& rec) {
    json j;
    j["id"] = rec.id;
    if (rec.distribution) j["dist"] = *rec.distribution;
    if (rec.move_text) j["move"] = *rec.move_text;
    json aux = json::object();
    if (rec.aux_result) aux["result"] = *rec.aux_result;
    if (rec.aux_termination) aux["termination"] = *rec.aux_termination;
    if (rec.aux_moves_left) aux["moves_left"] = *rec.aux_moves_left;
    if (rec.aux_value) aux["value"] = *rec.aux_value;
    if (rec.aux_move_delay) aux["move_delay"] = *rec.aux_move_delay;
    if (!aux.empty()) j["aux"] = aux;
    return j.dump();
}

std::vector<PredictionRecord> load_predictions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open prediction file " + path.string());
    std::vector<PredictionRecord> out;
    std::set<std::string> seen;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        PredictionRecord rec = prediction_from_json(line);
        if (!seen.insert(rec.id).second) {
            throw std::invalid_argument("duplicate prediction id " + rec.id);
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::string MetricReport::to_json() const {
    json j;
    j["acc_at_1"] = acc_at_1;
    j["expected_acc"] = expected_acc;
    j["counts"] = {{"total_positions", total_positions},
                   {"evaluated", evaluated},
                   {"skipped_by_filters", skipped_by_filters},
                   {"fallback_moves", fallback_moves},
                   {"missing_predictions",
                    static_cast<std::int64_t>(missing_prediction_ids.size())}};
    j["missing_prediction_ids"] = missing_prediction_ids;
    json aux = json::object();
    if (f1_result) aux["f1_result"] = *f1_result;
    if (f1_termination) aux["f1_termination"] = *f1_termination;
    if (f1_resigned) aux["f1_resigned"] = *f1_resigned;
    if (mae_moves_left) aux["mae_moves_left"] = *mae_moves_left;
    if (mae_value) aux["mae_value"] = *mae_value;
    if (mae_move_delay) aux["mae_move_delay"] = *mae_move_delay;
    j["aux"] = aux;
    json filters = json::object();
    filters["skip_first_plies"] = skip_first_plies;
    if (min_clock_seconds) filters["min_clock_seconds"] = *min_clock_seconds;
    j["filters"] = filters;
    return j.dump(2);
}

EvalResult evaluate(const std::vector<bench::BenchmarkPosition>& positions,
                    const std::vector<PredictionRecord>& predictions,
                    const EvalOptions& options) {
    std::map<std::string, const PredictionRecord*> by_id;
    for (const PredictionRecord& rec : predictions) {
        if (!by_id.emplace(rec.id, &rec).second) {
            throw std::invalid_argument("duplicate prediction id " + rec.id);
        }
    }

    EvalResult result;
    MetricReport& report = result.report;
    report.total_positions = static_cast<std::int64_t>(positions.size());
    report.skip_first_plies = options.skip_first_plies;
    report.min_clock_seconds = options.min_clock_seconds;

    std::vector<ScoredRecord> scored;
    std::vector<std::string> result_preds, result_truths;
    std::vector<std::string> term_preds, term_truths;
    std::vector<double> ml_preds, ml_truths;
    std::vector<double> value_preds, value_truths;
    std::vector<double> delay_preds, delay_truths;

    auto rng = util::make_rng(options.seed);

    for (const bench::BenchmarkPosition& pos : positions) {
        if (pos.ply_index < options.skip_first_plies) {
            ++report.skipped_by_filters;
            continue;
        }
        if (options.min_clock_seconds && pos.active_clock_s &&
            static_cast<double>(*pos.active_clock_s) < *options.min_clock_seconds) {
            ++report.skipped_by_filters;
            continue;
        }
        const auto it = by_id.find(pos.id);
        if (it == by_id.end()) {
            report.missing_prediction_ids.push_back(pos.id);
            continue;
        }
        const PredictionRecord& pred = *it->second;
        const core::BoardState state = core::parse_fen(pos.fen);

        ScoredRecord rec;
        rec.target_index =
            enc::move_to_policy_index(core::uci_to_move(state, pos.target_uci), state);
        rec.white_elo = pos.white_elo;
        rec.black_elo = pos.black_elo;
        if (pred.distribution) {
            rec.distribution = distribution_from_pairs(*pred.distribution, state);
        } else {
            core::Move parsed;
            try {
                parsed = core::parse_move(state, *pred.move_text);
            } catch (const std::invalid_argument&) {
                parsed = legal_fallback(*pred.move_text, state, rng);
                ++report.fallback_moves;
            }
            rec.distribution = point_mass(parsed, state);
        }
        scored.push_back(std::move(rec));

        if (pos.white_elo && pos.black_elo) {
            const ScoredRecord& back = scored.back();
            const double hit = back.distribution.argmax() == back.target_index ? 1.0 : 0.0;
            result.acc_samples.push_back(HeatmapSample{*pos.white_elo, *pos.black_elo, hit});
            result.expected_samples.push_back(HeatmapSample{
                *pos.white_elo, *pos.black_elo, back.distribution.prob_at(back.target_index)});
        }

        if (pos.aux.result && pred.aux_result) {
            result_truths.push_back(std::to_string(*pos.aux.result));
            result_preds.push_back(std::to_string(*pred.aux_result));
        }
        if (pos.aux.termination && pred.aux_termination) {
            term_truths.push_back(*pos.aux.termination);
            term_preds.push_back(*pred.aux_termination);
        }
        if (pos.aux.plies_remaining && pred.aux_moves_left) {
            ml_truths.push_back(static_cast<double>(*pos.aux.plies_remaining));
            ml_preds.push_back(*pred.aux_moves_left);
        }
        if (pos.aux.result && pred.aux_value) {
            value_truths.push_back(static_cast<double>(*pos.aux.result));
            value_preds.push_back(*pred.aux_value);
        }
        if (pos.aux.move_delay_s && pred.aux_move_delay) {
            delay_truths.push_back(*pos.aux.move_delay_s);
            delay_preds.push_back(*pred.aux_move_delay);
        }
    }

    report.evaluated = static_cast<std::int64_t>(scored.size());
    if (!scored.empty()) {
        report.acc_at_1 = acc_at_1(scored);
        report.expected_acc = expected_acc(scored);
    }
    if (!result_truths.empty()) {
        report.f1_result = weighted_f1(result_preds, result_truths);
    }
    if (!term_truths.empty()) {
        report.f1_termination = weighted_f1(term_preds, term_truths);
        std::vector<std::string> resigned_preds, resigned_truths;
        for (std::size_t i = 0; i < term_truths.size(); ++i) {
            resigned_truths.push_back(term_truths[i] == "Resigned" ? "resigned" : "other");
            resigned_preds.push_back(term_preds[i] == "Resigned" ? "resigned" : "other");
        }
        report.f1_resigned = weighted_f1(resigned_preds, resigned_truths);
    }
    if (!ml_truths.empty()) report.mae_moves_left = mae(ml_preds, ml_truths);
    if (!value_truths.empty()) report.mae_value = mae(value_preds, value_truths);
    if (!delay_truths.empty()) report.mae_move_delay = mae(delay_preds, delay_truths);
    return result;
}

}  // namespace steerchess::eval
