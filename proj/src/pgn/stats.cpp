#include "steerchess/pgn/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace steerchess::pgn {

namespace {

double round_half_up(double value, int decimals) {
    const double scale = std::pow(10.0, decimals);
    return std::floor(value * scale + 0.5) / scale;
}

}  // namespace

std::vector<TerminationRow> termination_stats(const std::vector<Stage2Record>& records) {
    std::map<std::string, std::int64_t> counts;
    for (const Stage2Record& rec : records) {
        ++counts[std::string(core::termination_label(rec.termination_reason))];
    }
    std::vector<TerminationRow> rows;
    const auto total = static_cast<std::int64_t>(records.size());
    for (const auto& [reason, count] : counts) {
        TerminationRow row;
        row.reason = reason;
        row.count = count;
        row.percent = round_half_up(100.0 * static_cast<double>(count) /
                                        static_cast<double>(total),
                                    3);
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const TerminationRow& a, const TerminationRow& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.reason < b.reason;
    });
    return rows;
}

std::string format_termination_table(const std::vector<TerminationRow>& rows) {
    std::ostringstream out;
    out << "Termination Reason\tCounts\tPercentage (%)\n";
    std::int64_t total = 0;
    char buf[32];
    for (const TerminationRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%.3f", row.percent);
        out << row.reason << '\t' << row.count << '\t' << buf << '\n';
        total += row.count;
    }
    out << "Total\t" << total << "\t100.000\n";
    return out.str();
}

}  // namespace steerchess::pgn
