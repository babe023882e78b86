#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "steerchess/pgn/filters.hpp"
#include "steerchess/pgn/scanner.hpp"
#include "steerchess/pgn/shards.hpp"
#include "steerchess/pgn/stage2.hpp"
#include "steerchess/pgn/stats.hpp"

using namespace steerchess;
using namespace steerchess::pgn;

namespace {

const std::filesystem::path kData = std::filesystem::path(STEERCHESS_TEST_DATA_DIR);

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<Stage1Record> scan_fixture(const std::filesystem::path& path,
                                       ScanStats* stats_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::vector<Stage1Record> records;
    const ScanStats stats =
        scan_headers(in, [&](Stage1Record&& rec) { records.push_back(std::move(rec)); });
    if (stats_out) *stats_out = stats;
    return records;
}

}  // namespace

TEST_CASE("parse_time_control") {
    CHECK(parse_time_control("300+0") == std::make_pair(300, 0));
    CHECK(parse_time_control("600+5") == std::make_pair(600, 5));
    CHECK_FALSE(parse_time_control("-").has_value());
    CHECK_FALSE(parse_time_control("").has_value());
    CHECK_FALSE(parse_time_control("300").has_value());
    CHECK_FALSE(parse_time_control("abc+def").has_value());
}

TEST_CASE("stage 1 scan recovers games byte-exactly") {
    ScanStats stats;
    const auto records = scan_fixture(kData / "games_small.pgn", &stats);
    CHECK(records.size() == 9);
    CHECK(stats.games == 9);
    CHECK(stats.garbage_lines == 0);
    CHECK(stats.truncated_games == 0);

    const std::string file = read_file(kData / "games_small.pgn");
    std::string rebuilt;
    for (const Stage1Record& rec : records) {
        rebuilt += rec.original_pgn;
        CHECK(file.substr(rec.byte_offset_start, rec.byte_offset_end - rec.byte_offset_start) ==
              rec.original_pgn);
    }
    CHECK(rebuilt == file);
}

TEST_CASE("multi-byte player names produce the documented byte diff") {
    const auto records = scan_fixture(kData / "games_small.pgn");
    CHECK(records[0].white == "Réti");
    CHECK(records[0].utf8_diff == 1);
    CHECK(records[1].utf8_diff == 0);
}

TEST_CASE("stage 1 header extraction") {
    const auto records = scan_fixture(kData / "games_small.pgn");
    const Stage1Record& r = records[0];
    CHECK(r.event == "Rated Blitz game");
    CHECK(r.time_control_name == "300+0");
    CHECK(r.tc_delay == 300);
    CHECK(r.tc_increment == 0);
    CHECK(r.year == 2013);
    CHECK(r.month == 1);
    CHECK(r.day == 5);
    CHECK(r.white_elo == 1654);
    CHECK(r.black_elo == 1500);
    CHECK(r.white_rating_diff == 11);
    CHECK(r.black_rating_diff == -12);
    CHECK(r.eco == "C20");
    CHECK(r.result == "1-0");
    CHECK_FALSE(r.is_fischer_random);
    CHECK(records[6].is_fischer_random);
    CHECK(records[3].white_elo == std::nullopt);
    CHECK(records[4].time_control_name == "-");
    CHECK(records[4].tc_delay == std::nullopt);
}

TEST_CASE("scanner skips garbage and flags truncation") {
    std::istringstream in(
        "random junk line\n"
        "\n"
        "[Event \"Test\"]\n"
        "[Result \"*\"]\n"
        "\n"
        "1. e4 e5 *\n"
        "\n"
        "more junk\n"
        "[Event \"Tail\"]\n"
        "[Result \"*\"]\n");
    std::vector<Stage1Record> records;
    const ScanStats stats =
        scan_headers(in, [&](Stage1Record&& rec) { records.push_back(std::move(rec)); });
    CHECK(records.size() == 2);
    CHECK(stats.garbage_lines == 2);
    CHECK(stats.truncated_games == 1);  // the tail game has no movetext
}

TEST_CASE("movetext tokenizer strips annotations and collects clocks") {
    const Movetext m = tokenize_movetext(
        "1. e4 { [%clk 0:03:00] } e5!? $14 { [%clk 0:02:58] } 2. Nf3 (2. d4 exd4) "
        "2... Nc6 { Black develops. } 1/2-1/2");
    CHECK(m.san_moves == std::vector<std::string>{"e4", "e5!?", "Nf3", "Nc6"});
    CHECK(m.result_token == "1/2-1/2");
    CHECK(m.last_comment == "Black develops.");
    REQUIRE(m.clocks.size() == 4);
    CHECK(m.clocks[0] == 180);
    CHECK(m.clocks[1] == 178);
    CHECK_FALSE(m.clocks[2].has_value());
}

TEST_CASE("parse_game derives the stage 2 fields") {
    const auto records = scan_fixture(kData / "games_small.pgn");

    const ParsedGame mate = parse_game(records[0]);
    CHECK(mate.record.length == 7);
    CHECK(mate.record.termination_outcome == core::TerminationKind::Checkmate);
    CHECK(mate.record.termination_reason == core::TerminationKind::Checkmate);
    CHECK(mate.record.termination_winner == core::Color::White);
    CHECK(mate.record.mean_elo == 1577);
    CHECK(mate.record.diff_elo == 154);
    CHECK(mate.uci_moves.front() == "e2e4");

    const ParsedGame resigned = parse_game(records[1]);
    CHECK(resigned.record.length == 20);
    CHECK_FALSE(resigned.record.termination_outcome.has_value());
    CHECK(resigned.record.termination_reason == core::TerminationKind::Resignation);

    const ParsedGame forfeited = parse_game(records[5]);
    CHECK(forfeited.record.termination_reason == core::TerminationKind::TimeForfeit);
    CHECK(forfeited.record.termination_winner == core::Color::Black);
    CHECK(forfeited.clocks.back() == 140);
    CHECK(forfeited.record.last_comment == "White ran out of time.");

    const ParsedGame repeated = parse_game(records[8]);
    CHECK(repeated.record.termination_reason == core::TerminationKind::ThreefoldRepetition);

    CHECK_THROWS_AS(parse_game(records[6]), std::invalid_argument);  // variant
}

TEST_CASE("parse_game rejects corrupt movetext") {
    Stage1Record rec;
    rec.original_pgn = "[Event \"x\"]\n\n1. e4 e5 2. Ke2 Ke7 3. Qh5 1-0\n";
    rec.result = "1-0";
    CHECK_THROWS_AS(parse_game(rec), std::invalid_argument);  // illegal king moves
}

TEST_CASE("apply_filters covers every drop reason") {
    const auto records = scan_fixture(kData / "games_small.pgn");
    const FilterPolicy policy;

    const auto keep_or_drop = [&](std::size_t i) {
        return apply_filters(parse_game(records[i]).record, policy);
    };

    // Short mate game: exempt from min_plies.
    CHECK_FALSE(keep_or_drop(0).has_value());
    // 20-ply resignation: dropped.
    CHECK(keep_or_drop(1) == DropReason::MinPlies);
    CHECK(keep_or_drop(2) == DropReason::Bot);
    CHECK(keep_or_drop(3) == DropReason::MissingElo);
    CHECK(keep_or_drop(4) == DropReason::Correspondence);
    CHECK_FALSE(keep_or_drop(5).has_value());
    CHECK(keep_or_drop(7) == DropReason::LichessMaster);
    // Short repetition draw: forced-draw check does not cover threefold, so
    // the 8-ply game drops on min_plies... unless it is exempt.
    const auto rep = keep_or_drop(8);
    CHECK(rep == DropReason::MinPlies);
}

TEST_CASE("filtering is idempotent per record") {
    const auto records = scan_fixture(kData / "games_small.pgn");
    const FilterPolicy policy;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].is_fischer_random) continue;
        const Stage2Record rec = parse_game(records[i]).record;
        CHECK(apply_filters(rec, policy) == apply_filters(rec, policy));
    }
}

TEST_CASE("partition keys floor to 100-point bins") {
    Stage2Record rec;
    rec.mean_elo = 1649;
    rec.diff_elo = 51;
    CHECK(partition_key(rec) == std::make_pair(1600, 0));
    rec.mean_elo = 1700;
    rec.diff_elo = 100;
    CHECK(partition_key(rec) == std::make_pair(1700, 100));
    rec.mean_elo = 599;
    CHECK(partition_key(rec).first == 500);
    rec.mean_elo.reset();
    CHECK_THROWS_AS(partition_key(rec), std::invalid_argument);
}

TEST_CASE("record json round trip") {
    const auto records = scan_fixture(kData / "games_small.pgn");
    const Stage2Record rec = parse_game(records[0]).record;
    const Stage2Record back = stage2_from_json(to_json_line(rec));
    CHECK(back.stage1.event == rec.stage1.event);
    CHECK(back.stage1.white_elo == rec.stage1.white_elo);
    CHECK(back.stage1.original_pgn == rec.stage1.original_pgn);
    CHECK(back.length == rec.length);
    CHECK(back.termination_reason == rec.termination_reason);
    CHECK(back.mean_elo == rec.mean_elo);

    const Stage1Record s1 = stage1_from_json(to_json_line(records[3]));
    CHECK(s1.white_elo == std::nullopt);
    CHECK(s1.black_elo == 1430);
}

TEST_CASE("shard writer chunks and reruns byte-identically") {
    const auto dir = std::filesystem::temp_directory_path() / "steerchess_shards";
    std::filesystem::remove_all(dir);

    const auto run = [&](const std::filesystem::path& where) {
        ShardWriter writer(where, 4);
        for (int i = 0; i < 10; ++i) {
            writer.write_line("{\"row\":" + std::to_string(i) + "}");
        }
        writer.finish({{"bot", 3}});
    };
    run(dir);

    CHECK(std::filesystem::exists(dir / "shard-000000.jsonl"));
    CHECK(std::filesystem::exists(dir / "shard-000001.jsonl"));
    CHECK(std::filesystem::exists(dir / "shard-000002.jsonl"));
    const auto lines = read_shard_lines(dir);
    CHECK(lines.size() == 10);
    CHECK(lines.front() == "{\"row\":0}");
    CHECK(lines.back() == "{\"row\":9}");

    const std::string manifest = read_file(dir / "manifest.json");
    CHECK(manifest.find("\"total_games\": 10") != std::string::npos);
    CHECK(manifest.find("\"bot\": 3") != std::string::npos);

    const auto dir2 = std::filesystem::temp_directory_path() / "steerchess_shards2";
    std::filesystem::remove_all(dir2);
    run(dir2);
    CHECK(read_file(dir / "shard-000001.jsonl") == read_file(dir2 / "shard-000001.jsonl"));
    CHECK(read_file(dir / "manifest.json") == read_file(dir2 / "manifest.json"));

    std::filesystem::remove_all(dir);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("empty shard run writes an empty manifest") {
    const auto dir = std::filesystem::temp_directory_path() / "steerchess_shards_empty";
    std::filesystem::remove_all(dir);
    ShardWriter writer(dir);
    writer.finish();
    CHECK(read_shard_lines(dir).empty());
    const std::string manifest = read_file(dir / "manifest.json");
    CHECK(manifest.find("\"total_games\": 0") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("termination stats table") {
    std::vector<Stage2Record> records(10);
    for (int i = 0; i < 6; ++i) records[i].termination_reason = core::TerminationKind::Resignation;
    for (int i = 6; i < 9; ++i) records[i].termination_reason = core::TerminationKind::Checkmate;
    records[9].termination_reason = core::TerminationKind::Stalemate;

    const auto rows = termination_stats(records);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].reason == "Resigned");
    CHECK(rows[0].percent == doctest::Approx(60.0));
    CHECK(rows[1].reason == "Checkmate");
    CHECK(rows[1].percent == doctest::Approx(30.0));
    CHECK(rows[2].reason == "Stalemate");
    CHECK(rows[2].percent == doctest::Approx(10.0));

    const std::string table = format_termination_table(rows);
    CHECK(table.find("Resigned\t6\t60.000") != std::string::npos);
    CHECK(table.find("Total\t10\t100.000") != std::string::npos);

    CHECK(termination_stats({}).empty());

    // Percent column sums to 100 within rounding on a skewed input.
    std::vector<Stage2Record> skewed(7);
    for (int i = 0; i < 3; ++i) skewed[i].termination_reason = core::TerminationKind::Resignation;
    for (int i = 3; i < 5; ++i) skewed[i].termination_reason = core::TerminationKind::Checkmate;
    skewed[5].termination_reason = core::TerminationKind::TimeForfeit;
    skewed[6].termination_reason = core::TerminationKind::Stalemate;
    double total = 0.0;
    for (const auto& row : termination_stats(skewed)) total += row.percent;
    CHECK(std::abs(total - 100.0) < 0.01);
}
