#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "steerchess/pgn/records.hpp"

namespace steerchess::pgn {

struct FilterPolicy {
    bool exclude_bots = true;
    bool exclude_correspondence = true;
    bool require_elo = true;
    bool require_time_control = true;
    // Short games drop unless they end in checkmate or a forced draw.
    int min_plies = 32;
    bool exclude_titled_lichess_master = true;
};

enum class DropReason {
    Bot,
    Correspondence,
    MissingElo,
    MissingTimeControl,
    MinPlies,
    LichessMaster,
};

std::string_view drop_reason_label(DropReason reason);

// nullopt = keep.
std::optional<DropReason> apply_filters(const Stage2Record& rec,
                                        const FilterPolicy& policy);

// 100-point bins keyed on (floor(mean/100)*100, floor(diff/100)*100).
// Throws std::invalid_argument when Elo fields are missing.
std::pair<int, int> partition_key(const Stage2Record& rec);

}  // namespace steerchess::pgn
