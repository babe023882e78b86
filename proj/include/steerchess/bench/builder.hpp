#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "steerchess/bench/position.hpp"
#include "steerchess/openings/normalizer.hpp"
#include "steerchess/pgn/stage2.hpp"
#include "steerchess/prompt/templates.hpp"

namespace steerchess::bench {

enum class BenchmarkKind { LobP, LobC, Lif, LifD, LifT10, Lgb, LifAux, LgbAux, M1S };

std::optional<BenchmarkKind> benchmark_kind_from_name(const std::string& name);
std::string benchmark_kind_name(BenchmarkKind kind);

// Replayed game ready for position extraction.
struct GameSource {
    pgn::Stage2Record record;
    std::vector<std::string> uci_moves;
    std::vector<std::string> san_moves;
    std::vector<std::optional<int>> clocks;  // remaining seconds after each ply
};

// Re-parses the stored PGN; throws on corrupt games.
GameSource source_from_stage2(const pgn::Stage2Record& rec);

struct BuildOptions {
    std::uint64_t seed = 0;
    int positions_per_game = 1;
    std::optional<int> min_mean_elo;              // LIF-D window
    std::optional<int> max_mean_elo;
    std::optional<std::pair<int, int>> source_month;  // (year, month)
    std::vector<std::string> player_names;        // LIF-T10 account list
    int elo_shift = 0;                            // +500 for LGB kinds
    bool require_elo = true;
    std::optional<std::int64_t> size_cap;
    int opening_match_threshold = 85;
    int stratum_cap = 1;                          // M1-S per-stratum size
};

struct BuildCounters {
    std::int64_t games_in = 0;
    std::int64_t games_used = 0;
    std::int64_t skipped_unmatched_opening = 0;
    std::int64_t skipped_constraints = 0;
    std::int64_t template_retries = 0;
    std::int64_t positions = 0;
};

enum class LobMode { Partial, Canonical };

// Opening-phase positions: one per prefix ply, target = the played move.
// Partial prompts mention the opening and the moves up to the current ply;
// canonical prompts carry the full canonical continuation.
std::vector<BenchmarkPosition> build_lob(const std::vector<GameSource>& games,
                                         const openings::OpeningDatabase& db,
                                         LobMode mode,
                                         const prompt::TemplateCatalog& templates,
                                         const BuildOptions& options,
                                         BuildCounters* counters = nullptr);

// One position per sampled ply, template sampled per game with a derived
// seed; LIF-D adds the Elo window and source-month restriction, LIF-T10
// the player-name list.
std::vector<BenchmarkPosition> build_lif(const std::vector<GameSource>& games,
                                         const prompt::TemplateCatalog& templates,
                                         const BuildOptions& options,
                                         BuildCounters* counters = nullptr);

// build_lif with every prompt Elo shifted by options.elo_shift; games
// without both ratings are excluded.
std::vector<BenchmarkPosition> build_lgb(const std::vector<GameSource>& games,
                                         const prompt::TemplateCatalog& templates,
                                         BuildOptions options,
                                         BuildCounters* counters = nullptr);

// Appends the temporal-metadata suffix and fills the auxiliary targets for
// positions built from `games` (matched by position id prefix order).
void build_aux_variant(std::vector<BenchmarkPosition>& positions,
                       const std::vector<GameSource>& games);

// Per-(rounded active Elo, time control) stratum, keep up to `stratum_cap`
// positions chosen with the seeded rng.
std::vector<BenchmarkPosition> stratify_m1s(const std::vector<BenchmarkPosition>& positions,
                                            int stratum_cap, std::uint64_t seed);

// Keep positions with 0-based ply index >= n.
std::vector<BenchmarkPosition> skip_first_plies(std::vector<BenchmarkPosition> positions,
                                                int n = 10);

// Move delay of the ply-`i` mover derived from [%clk] annotations;
// nullopt when the needed clock values are missing.
std::optional<double> move_delay_seconds(const GameSource& game, std::size_t ply);

}  // namespace steerchess::bench
