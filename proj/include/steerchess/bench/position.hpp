#pragma once

#include <optional>
#include <string>
#include <vector>

namespace steerchess::bench {

struct AuxTargets {
    std::optional<int> result;           // -1 black win, 0 draw, 1 white win
    std::optional<int> plies_remaining;  // N - i - 1
    std::optional<std::string> termination;
    std::optional<double> move_delay_s;  // active player's previous-move delay
};

// One evaluation position: board, prompt, the played move, and metadata.
struct BenchmarkPosition {
    std::string id;
    std::string fen;
    std::vector<std::string> history_uci;  // moves from the start position
    std::string prompt;
    std::string target_uci;
    std::optional<int> white_elo;
    std::optional<int> black_elo;
    std::optional<std::string> time_control;
    int ply_index = 0;  // 0-based ply of the target move
    std::optional<int> active_clock_s;
    AuxTargets aux;
};

std::string to_json_line(const BenchmarkPosition& pos);
BenchmarkPosition position_from_json(const std::string& line);

std::vector<BenchmarkPosition> load_benchmark(const std::string& path);
void save_benchmark(const std::string& path, const std::vector<BenchmarkPosition>& positions);

}  // namespace steerchess::bench
