#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>

#include "steerchess/bench/builder.hpp"
#include "steerchess/core/movegen.hpp"
#include "steerchess/core/notation.hpp"
#include "steerchess/pgn/scanner.hpp"

using namespace steerchess;
using namespace steerchess::bench;

namespace {

const std::filesystem::path kData = std::filesystem::path(STEERCHESS_TEST_DATA_DIR);

std::vector<GameSource> fixture_sources() {
    std::ifstream in(kData / "games_small.pgn", std::ios::binary);
    REQUIRE(in.good());
    std::vector<GameSource> sources;
    pgn::scan_headers(in, [&](pgn::Stage1Record&& rec) {
        if (rec.is_fischer_random) return;
        pgn::Stage2Record stage2 = pgn::parse_game(rec).record;
        sources.push_back(source_from_stage2(stage2));
    });
    return sources;
}

openings::OpeningDatabase fixture_db() {
    std::vector<openings::OpeningEntry> entries;
    entries.push_back({"C20", "King's Pawn Game", {{"e2e4", "e7e5"}}});
    entries.push_back({"D35",
                       "Queen's Gambit Declined",
                       {{"d2d4", "d7d5", "c2c4", "e7e6", "b1c3", "g8f6"}}});
    entries.push_back({"A04", "Zukertort Opening", {{"g1f3"}}});
    entries.push_back({"B01", "Scandinavian Defense", {{"e2e4", "d7d5"}}});
    return openings::OpeningDatabase::from_entries(std::move(entries));
}

}  // namespace

TEST_CASE("source_from_stage2 replays and aligns clocks") {
    const auto sources = fixture_sources();
    REQUIRE(sources.size() == 8);  // variant game skipped
    const GameSource& mate = sources[0];
    CHECK(mate.uci_moves.size() == 7);
    CHECK(mate.san_moves.front() == "e4");
    CHECK(mate.san_moves.back() == "Qxf7#");

    const GameSource& forfeited = sources[5];
    CHECK(forfeited.clocks.size() == forfeited.uci_moves.size());
    CHECK(forfeited.clocks[0] == 180);
}

TEST_CASE("build_lob partial and canonical modes") {
    const auto sources = fixture_sources();
    const auto db = fixture_db();
    const auto catalog = prompt::builtin_catalog();
    BuildOptions options;
    options.seed = 11;

    BuildCounters partial_counters;
    const auto partial =
        build_lob(sources, db, LobMode::Partial, catalog, options, &partial_counters);
    CHECK(!partial.empty());
    CHECK(partial_counters.games_used > 0);

    for (const BenchmarkPosition& pos : partial) {
        // Every target is legal at its fen and matches the next played move.
        const core::BoardState state = core::parse_fen(pos.fen);
        CHECK_NOTHROW(core::uci_to_move(state, pos.target_uci));
        CHECK(pos.ply_index == static_cast<int>(pos.history_uci.size()));
        // Partial prompts never mention moves beyond the current ply: the
        // ply-0 prompt of a game has no SAN move list.
        if (pos.ply_index == 0) {
            CHECK(pos.prompt.find("1.") == std::string::npos);
        }
    }

    BuildCounters canonical_counters;
    const auto canonical =
        build_lob(sources, db, LobMode::Canonical, catalog, options, &canonical_counters);
    CHECK(!canonical.empty());

    // The Scandinavian game: canonical prompts carry the full continuation
    // even at ply 0.
    bool scandi_checked = false;
    for (const BenchmarkPosition& pos : canonical) {
        if (pos.id == "g5-p0") {
            CHECK(pos.prompt.find("1. e4 d5") != std::string::npos);
            scandi_checked = true;
        }
    }
    CHECK(scandi_checked);

    // Determinism.
    const auto again =
        build_lob(sources, db, LobMode::Partial, catalog, options, nullptr);
    REQUIRE(again.size() == partial.size());
    for (std::size_t i = 0; i < again.size(); ++i) {
        CHECK(again[i].prompt == partial[i].prompt);
        CHECK(again[i].fen == partial[i].fen);
    }
}

TEST_CASE("games without a matched opening are excluded") {
    auto sources = fixture_sources();
    // Rewrite one game's opening headers to something unmatched.
    sources[1].record.stage1.eco = "Z99";
    sources[1].record.stage1.opening = "Totally Unknown System";
    BuildCounters counters;
    const auto db = fixture_db();
    build_lob(sources, db, LobMode::Partial, prompt::builtin_catalog(), BuildOptions{},
              &counters);
    CHECK(counters.skipped_unmatched_opening >= 1);
}

TEST_CASE("build_lif samples plies and applies constraints") {
    const auto sources = fixture_sources();
    const auto catalog = prompt::builtin_catalog();
    BuildOptions options;
    options.seed = 3;
    options.positions_per_game = 2;

    BuildCounters counters;
    const auto positions = build_lif(sources, catalog, options, &counters);
    CHECK(!positions.empty());
    for (const BenchmarkPosition& pos : positions) {
        const core::BoardState state = core::parse_fen(pos.fen);
        CHECK_NOTHROW(core::uci_to_move(state, pos.target_uci));
        CHECK(pos.prompt.find('{') == std::string::npos);
    }

    // Deterministic under the same seed.
    const auto again = build_lif(sources, catalog, options, nullptr);
    REQUIRE(again.size() == positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        CHECK(again[i].id == positions[i].id);
        CHECK(again[i].prompt == positions[i].prompt);
    }

    // Elo window: fixture mean elos span 1430..2353; the 900-1100 window
    // excludes everything.
    BuildOptions window = options;
    window.min_mean_elo = 900;
    window.max_mean_elo = 1100;
    CHECK(build_lif(sources, catalog, window, nullptr).empty());

    // A window that admits only the 1500-ish games.
    window.min_mean_elo = 1500;
    window.max_mean_elo = 1650;
    for (const auto& pos : build_lif(sources, catalog, window, nullptr)) {
        CHECK(pos.white_elo.has_value());
    }

    // Player-name list restriction.
    BuildOptions named = options;
    named.player_names = {"Réti"};
    const auto by_name = build_lif(sources, catalog, named, nullptr);
    for (const auto& pos : by_name) {
        CHECK(pos.id.substr(0, 2) == "g0");
    }
    CHECK(!by_name.empty());
}

TEST_CASE("build_lgb shifts prompt elos by 500") {
    const auto sources = fixture_sources();
    const auto catalog = prompt::builtin_catalog();
    BuildOptions options;
    options.seed = 5;

    const auto positions = build_lgb(sources, catalog, options, nullptr);
    REQUIRE(!positions.empty());
    for (const BenchmarkPosition& pos : positions) {
        REQUIRE(pos.white_elo.has_value());
        CHECK(*pos.white_elo >= 1900);  // fixture min 1430 + 500
    }
    // The first fixture game is 1654/1500 -> 2154/2000 in position metadata
    // and in any prompt that mentions an Elo.
    bool found_first = false;
    for (const BenchmarkPosition& pos : positions) {
        if (pos.id.substr(0, 3) == "g0-") {
            CHECK(pos.white_elo == 2154);
            CHECK(pos.black_elo == 2000);
            found_first = true;
        }
    }
    CHECK(found_first);
}

TEST_CASE("aux variant fills targets and appends the suffix") {
    const auto sources = fixture_sources();
    const auto catalog = prompt::builtin_catalog();
    BuildOptions options;
    options.seed = 7;
    options.positions_per_game = 3;

    auto positions = build_lif(sources, catalog, options, nullptr);
    REQUIRE(!positions.empty());
    build_aux_variant(positions, sources);

    for (const BenchmarkPosition& pos : positions) {
        REQUIRE(pos.aux.plies_remaining.has_value());
        CHECK(*pos.aux.plies_remaining >= 0);
        if (pos.time_control.has_value()) {
            CHECK(pos.prompt.find("The time control for this") != std::string::npos);
        }
        REQUIRE(pos.aux.termination.has_value());
        CHECK(core::termination_from_label(*pos.aux.termination).has_value());

        const std::size_t ordinal = std::stoul(pos.id.substr(1, pos.id.find("-p") - 1));
        const GameSource& game = sources[ordinal];
        CHECK(*pos.aux.plies_remaining ==
              static_cast<int>(game.uci_moves.size()) - pos.ply_index - 1);
        // Z matches the result header.
        if (game.record.stage1.result == "1-0") CHECK(pos.aux.result == 1);
        if (game.record.stage1.result == "0-1") CHECK(pos.aux.result == -1);
        if (game.record.stage1.result == "1/2-1/2") CHECK(pos.aux.result == 0);
    }

    // The clock-annotated game yields move delays; games without clocks
    // keep positions but omit the target.
    bool delay_seen = false, delay_absent = false;
    for (const BenchmarkPosition& pos : positions) {
        const std::size_t ordinal = std::stoul(pos.id.substr(1, pos.id.find("-p") - 1));
        if (ordinal == 5 && pos.aux.move_delay_s) delay_seen = true;
        if (ordinal == 0 && !pos.aux.move_delay_s) delay_absent = true;
    }
    CHECK(delay_seen);
    CHECK(delay_absent);
}

TEST_CASE("move delay derivation from clocks") {
    const auto sources = fixture_sources();
    const GameSource& game = sources[5];  // the %clk game, 180+0
    // Ply 0: white used 180 - 180 = 0 seconds.
    CHECK(move_delay_seconds(game, 0) == 0.0);
    // Ply 4 (white's third move, Nc3 at 2:57): previous white clock 2:58.
    CHECK(move_delay_seconds(game, 4) == 1.0);
    // Out of range.
    CHECK_FALSE(move_delay_seconds(game, 99).has_value());
    // A game without clock comments has no delays.
    CHECK_FALSE(move_delay_seconds(sources[0], 0).has_value());
}

TEST_CASE("m1s stratification") {
    std::vector<BenchmarkPosition> positions;
    for (int i = 0; i < 10; ++i) {
        BenchmarkPosition p;
        p.id = "p" + std::to_string(i);
        p.fen = std::string(core::kStartFen);
        p.target_uci = "e2e4";
        p.white_elo = 1543;  // all in the 1500 stratum
        p.black_elo = 1500;
        p.time_control = "300+0";
        positions.push_back(p);
    }
    positions[9].white_elo = 1550;  // rounds half-up to 1600: its own stratum

    const auto strat = stratify_m1s(positions, 1, 42);
    CHECK(strat.size() == 2);

    // Deterministic under the same seed; k=2 keeps two of the ten.
    const auto again = stratify_m1s(positions, 1, 42);
    REQUIRE(again.size() == strat.size());
    for (std::size_t i = 0; i < strat.size(); ++i) CHECK(again[i].id == strat[i].id);

    const auto two = stratify_m1s(positions, 2, 42);
    CHECK(two.size() == 3);  // 2 from the big stratum + 1 from the singleton
}

TEST_CASE("skip_first_plies boundary") {
    std::vector<BenchmarkPosition> positions;
    for (int i = 0; i < 12; ++i) {
        BenchmarkPosition p;
        p.id = "p" + std::to_string(i);
        p.ply_index = i;
        positions.push_back(p);
    }
    const auto kept = skip_first_plies(positions, 10);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].ply_index == 10);
    CHECK(kept[1].ply_index == 11);
    CHECK(skip_first_plies(positions, 0).size() == 12);
}

TEST_CASE("benchmark kind names round trip") {
    for (const char* name :
         {"LOB-P", "LOB-C", "LIF", "LIF-D", "LIF-T10", "LGB", "LIF-Aux", "LGB-Aux", "M1-S"}) {
        const auto kind = benchmark_kind_from_name(name);
        REQUIRE(kind.has_value());
        CHECK(benchmark_kind_name(*kind) == name);
    }
    CHECK_FALSE(benchmark_kind_from_name("nope").has_value());
}

TEST_CASE("benchmark file round trip") {
    const auto sources = fixture_sources();
    BuildOptions options;
    options.seed = 1;
    auto positions = build_lif(sources, prompt::builtin_catalog(), options, nullptr);
    build_aux_variant(positions, sources);
    const auto path = std::filesystem::temp_directory_path() / "steerchess_bench.jsonl";
    save_benchmark(path.string(), positions);
    const auto loaded = load_benchmark(path.string());
    REQUIRE(loaded.size() == positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        CHECK(loaded[i].id == positions[i].id);
        CHECK(loaded[i].fen == positions[i].fen);
        CHECK(loaded[i].prompt == positions[i].prompt);
        CHECK(loaded[i].aux.result == positions[i].aux.result);
        CHECK(loaded[i].aux.move_delay_s == positions[i].aux.move_delay_s);
    }
    std::filesystem::remove(path);
}
