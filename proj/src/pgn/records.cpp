#include "steerchess/pgn/records.hpp"

#include <json.hpp>

namespace steerchess::pgn {

namespace {

using nlohmann::json;

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& value) {
    if (value) {
        j[key] = *value;
    } else {
        j[key] = nullptr;
    }
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

json stage1_to_json(const Stage1Record& r) {
    json j;
    j["Event"] = r.event;
    j["TimeControlName"] = r.time_control_name;
    j["UTCDate"] = r.utc_date;
    put_opt(j, "Year", r.year);
    put_opt(j, "Month", r.month);
    put_opt(j, "Day", r.day);
    put_opt(j, "TcDelay", r.tc_delay);
    put_opt(j, "TcIncrement", r.tc_increment);
    put_opt(j, "WhiteElo", r.white_elo);
    put_opt(j, "BlackElo", r.black_elo);
    put_opt(j, "WhiteRatingDiff", r.white_rating_diff);
    put_opt(j, "BlackRatingDiff", r.black_rating_diff);
    j["Round"] = r.round;
    j["Result"] = r.result;
    j["Variant"] = r.variant;
    j["ECO"] = r.eco;
    j["Opening"] = r.opening;
    j["Termination"] = r.termination;
    j["Annotator"] = r.annotator;
    j["IsFischerRandom"] = r.is_fischer_random;
    put_opt(j, "EvalDepth", r.eval_depth);
    j["OriginalPGN"] = r.original_pgn;
    j["ByteOffsetStart"] = r.byte_offset_start;
    j["ByteOffsetEnd"] = r.byte_offset_end;
    j["Utf8Diff"] = r.utf8_diff;
    j["White"] = r.white;
    j["Black"] = r.black;
    j["WhiteTitle"] = r.white_title;
    j["BlackTitle"] = r.black_title;
    return j;
}

Stage1Record stage1_from(const json& j) {
    Stage1Record r;
    r.event = j.value("Event", "");
    r.time_control_name = j.value("TimeControlName", "");
    r.utc_date = j.value("UTCDate", "");
    r.year = get_opt<int>(j, "Year");
    r.month = get_opt<int>(j, "Month");
    r.day = get_opt<int>(j, "Day");
    r.tc_delay = get_opt<int>(j, "TcDelay");
    r.tc_increment = get_opt<int>(j, "TcIncrement");
    r.white_elo = get_opt<int>(j, "WhiteElo");
    r.black_elo = get_opt<int>(j, "BlackElo");
    r.white_rating_diff = get_opt<int>(j, "WhiteRatingDiff");
    r.black_rating_diff = get_opt<int>(j, "BlackRatingDiff");
    r.round = j.value("Round", "");
    r.result = j.value("Result", "");
    r.variant = j.value("Variant", "");
    r.eco = j.value("ECO", "");
    r.opening = j.value("Opening", "");
    r.termination = j.value("Termination", "");
    r.annotator = j.value("Annotator", "");
    r.is_fischer_random = j.value("IsFischerRandom", false);
    r.eval_depth = get_opt<int>(j, "EvalDepth");
    r.original_pgn = j.value("OriginalPGN", "");
    r.byte_offset_start = j.value("ByteOffsetStart", std::uint64_t{0});
    r.byte_offset_end = j.value("ByteOffsetEnd", std::uint64_t{0});
    r.utf8_diff = j.value("Utf8Diff", std::uint64_t{0});
    r.white = j.value("White", "");
    r.black = j.value("Black", "");
    r.white_title = j.value("WhiteTitle", "");
    r.black_title = j.value("BlackTitle", "");
    return r;
}

}  // namespace

std::string to_json_line(const Stage1Record& rec) { return stage1_to_json(rec).dump(); }

std::string to_json_line(const Stage2Record& rec) {
    json j = stage1_to_json(rec.stage1);
    j["Length"] = rec.length;
    if (rec.termination_outcome) {
        j["TerminationOutcome"] = std::string(core::termination_label(*rec.termination_outcome));
    } else {
        j["TerminationOutcome"] = nullptr;
    }
    if (rec.termination_winner) {
        j["TerminationWinner"] = *rec.termination_winner == core::Color::White ? "White" : "Black";
    } else {
        j["TerminationWinner"] = nullptr;
    }
    j["LastComment"] = rec.last_comment;
    j["TerminationReason"] = std::string(core::termination_label(rec.termination_reason));
    put_opt(j, "MeanElo", rec.mean_elo);
    put_opt(j, "DiffElo", rec.diff_elo);
    return j.dump();
}

Stage1Record stage1_from_json(const std::string& line) {
    return stage1_from(json::parse(line));
}

Stage2Record stage2_from_json(const std::string& line) {
    const json j = json::parse(line);
    Stage2Record r;
    r.stage1 = stage1_from(j);
    r.length = j.value("Length", 0);
    if (j.contains("TerminationOutcome") && !j.at("TerminationOutcome").is_null()) {
        r.termination_outcome =
            core::termination_from_label(j.at("TerminationOutcome").get<std::string>());
    }
    if (j.contains("TerminationWinner") && !j.at("TerminationWinner").is_null()) {
        r.termination_winner = j.at("TerminationWinner").get<std::string>() == "White"
                                   ? core::Color::White
                                   : core::Color::Black;
    }
    r.last_comment = j.value("LastComment", "");
    if (const auto kind = core::termination_from_label(j.value("TerminationReason", "Other"))) {
        r.termination_reason = *kind;
    }
    r.mean_elo = get_opt<int>(j, "MeanElo");
    r.diff_elo = get_opt<int>(j, "DiffElo");
    return r;
}

}  // namespace steerchess::pgn
