#include "steerchess/pgn/filters.hpp"

#include <stdexcept>

#include "steerchess/util/text.hpp"

namespace steerchess::pgn {

std::string_view drop_reason_label(DropReason reason) {
    switch (reason) {
        case DropReason::Bot: return "bot";
        case DropReason::Correspondence: return "correspondence";
        case DropReason::MissingElo: return "missing_elo";
        case DropReason::MissingTimeControl: return "missing_time_control";
        case DropReason::MinPlies: return "min_plies";
        case DropReason::LichessMaster: return "lichess_master";
    }
    return "unknown";
}

std::optional<DropReason> apply_filters(const Stage2Record& rec,
                                        const FilterPolicy& policy) {
    const Stage1Record& s1 = rec.stage1;
    if (policy.exclude_bots && (s1.white_title == "BOT" || s1.black_title == "BOT")) {
        return DropReason::Bot;
    }
    if (policy.exclude_titled_lichess_master &&
        (s1.white_title == "LM" || s1.black_title == "LM")) {
        return DropReason::LichessMaster;
    }
    if (policy.exclude_correspondence &&
        (s1.time_control_name == "-" ||
         util::contains_insensitive(s1.event, "correspondence"))) {
        return DropReason::Correspondence;
    }
    if (policy.require_elo && (!s1.white_elo || !s1.black_elo)) {
        return DropReason::MissingElo;
    }
    if (policy.require_time_control && (!s1.tc_delay || !s1.tc_increment)) {
        return DropReason::MissingTimeControl;
    }
    if (rec.length < policy.min_plies) {
        const bool exempt =
            rec.termination_reason == core::TerminationKind::Checkmate ||
            core::is_forced_draw(rec.termination_reason);
        if (!exempt) return DropReason::MinPlies;
    }
    return std::nullopt;
}

std::pair<int, int> partition_key(const Stage2Record& rec) {
    if (!rec.mean_elo || !rec.diff_elo) {
        throw std::invalid_argument("partition_key: missing Elo fields");
    }
    const auto bin = [](int v) { return (v / 100) * 100; };
    return {bin(*rec.mean_elo), bin(*rec.diff_elo)};
}

}  // namespace steerchess::pgn
