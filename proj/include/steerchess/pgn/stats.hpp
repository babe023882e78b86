#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "steerchess/pgn/records.hpp"

namespace steerchess::pgn {

struct TerminationRow {
    std::string reason;
    std::int64_t count = 0;
    double percent = 0.0;  // half-up rounded to 3 decimals
};

// Frequency table over TerminationReason, ordered by descending count then
// name, with percentages summing to 100.000 up to rounding.
std::vector<TerminationRow> termination_stats(const std::vector<Stage2Record>& records);

// Rendered like the frequency tables: reason, count, percent columns and a
// Total row.
std::string format_termination_table(const std::vector<TerminationRow>& rows);

}  // namespace steerchess::pgn
