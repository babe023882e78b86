#include "steerchess/pgn/scanner.hpp"

#include <charconv>

#include "steerchess/util/text.hpp"

namespace steerchess::pgn {

namespace {

// Reads one line including its terminator bookkeeping. Returns false at EOF
// with nothing read.
bool read_line(std::istream& in, std::string& line, bool& had_newline) {
    line.clear();
    had_newline = false;
    char c;
    bool any = false;
    while (in.get(c)) {
        any = true;
        if (c == '\n') {
            had_newline = true;
            break;
        }
        line.push_back(c);
    }
    return any;
}

std::optional<int> parse_int(std::string_view text) {
    int value = 0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (begin != end && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

struct HeaderLine {
    std::string tag;
    std::string value;
};

std::optional<HeaderLine> parse_header(std::string_view line) {
    if (line.empty() || line.front() != '[' || line.back() != ']') return std::nullopt;
    const auto space = line.find(' ');
    if (space == std::string_view::npos) return std::nullopt;
    const auto open_quote = line.find('"', space);
    if (open_quote == std::string_view::npos) return std::nullopt;
    const auto close_quote = line.rfind('"');
    if (close_quote <= open_quote) return std::nullopt;
    HeaderLine out;
    out.tag = std::string(line.substr(1, space - 1));
    std::string_view raw = line.substr(open_quote + 1, close_quote - open_quote - 1);
    out.value.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '\\' && i + 1 < raw.size() &&
            (raw[i + 1] == '"' || raw[i + 1] == '\\')) {
            ++i;
        }
        out.value.push_back(raw[i]);
    }
    return out;
}

void apply_header(Stage1Record& rec, const HeaderLine& h) {
    if (h.tag == "Event") {
        rec.event = h.value;
    } else if (h.tag == "TimeControl") {
        rec.time_control_name = h.value;
        if (const auto tc = parse_time_control(h.value)) {
            rec.tc_delay = tc->first;
            rec.tc_increment = tc->second;
        }
    } else if (h.tag == "UTCDate" || (h.tag == "Date" && rec.utc_date.empty())) {
        rec.utc_date = h.value;
        const auto parts = util::split(h.value, '.');
        if (parts.size() == 3) {
            rec.year = parse_int(parts[0]);
            rec.month = parse_int(parts[1]);
            rec.day = parse_int(parts[2]);
        }
    } else if (h.tag == "WhiteElo") {
        if (const auto v = parse_int(h.value); v && *v > 0) rec.white_elo = v;
    } else if (h.tag == "BlackElo") {
        if (const auto v = parse_int(h.value); v && *v > 0) rec.black_elo = v;
    } else if (h.tag == "WhiteRatingDiff") {
        rec.white_rating_diff = parse_int(h.value);
    } else if (h.tag == "BlackRatingDiff") {
        rec.black_rating_diff = parse_int(h.value);
    } else if (h.tag == "Round") {
        rec.round = h.value;
    } else if (h.tag == "Result") {
        rec.result = h.value;
    } else if (h.tag == "Variant") {
        rec.variant = h.value;
        rec.is_fischer_random = util::contains_insensitive(h.value, "chess960") ||
                                util::contains_insensitive(h.value, "fischer");
    } else if (h.tag == "ECO") {
        rec.eco = h.value;
    } else if (h.tag == "Opening") {
        rec.opening = h.value;
    } else if (h.tag == "Termination") {
        rec.termination = h.value;
    } else if (h.tag == "Annotator") {
        rec.annotator = h.value;
    } else if (h.tag == "EvalDepth") {
        rec.eval_depth = parse_int(h.value);
    } else if (h.tag == "White") {
        rec.white = h.value;
    } else if (h.tag == "Black") {
        rec.black = h.value;
    } else if (h.tag == "WhiteTitle") {
        rec.white_title = h.value;
    } else if (h.tag == "BlackTitle") {
        rec.black_title = h.value;
    }
}

}  // namespace

ScanStats scan_headers(std::istream& in,
                       const std::function<void(Stage1Record&&)>& sink) {
    ScanStats stats;
    enum class State { Outside, Headers, Movetext, TrailingBlank };
    State state = State::Outside;

    Stage1Record rec;
    std::string game_text;
    std::uint64_t offset = 0;
    std::uint64_t game_start = 0;
    bool saw_movetext = false;

    const auto finish_game = [&](std::uint64_t end_offset) {
        rec.byte_offset_start = game_start;
        rec.byte_offset_end = end_offset;
        rec.original_pgn = game_text;
        rec.utf8_diff = game_text.size() - util::utf8_length(game_text);
        if (!saw_movetext) ++stats.truncated_games;
        ++stats.games;
        sink(std::move(rec));
        rec = Stage1Record{};
        game_text.clear();
        saw_movetext = false;
    };

    std::string line;
    bool had_newline = false;
    while (read_line(in, line, had_newline)) {
        const std::uint64_t line_start = offset;
        const std::uint64_t line_bytes = line.size() + (had_newline ? 1 : 0);
        offset += line_bytes;

        std::string_view logical = line;
        if (!logical.empty() && logical.back() == '\r') logical.remove_suffix(1);

        const bool blank = util::trim(logical).empty();
        const auto header = blank ? std::nullopt : parse_header(logical);

        if (header) {
            if (state == State::Movetext || state == State::TrailingBlank) {
                finish_game(line_start);
                state = State::Outside;
            }
            if (state == State::Outside) {
                game_start = line_start;
                state = State::Headers;
            }
            apply_header(rec, *header);
        } else if (blank) {
            if (state == State::Headers) {
                // Separator between the header section and movetext.
            } else if (state == State::Movetext) {
                state = State::TrailingBlank;
            }
            // Outside/TrailingBlank: blank lines attach to the previous
            // game (or leading whitespace before the first).
        } else {
            // Non-blank, non-header.
            if (state == State::Headers || state == State::Movetext) {
                state = State::Movetext;
                saw_movetext = true;
            } else {
                // Outside any game, or stray text after a finished game.
                if (state == State::TrailingBlank) {
                    finish_game(line_start);
                    state = State::Outside;
                }
                ++stats.garbage_lines;
                continue;
            }
        }

        if (state != State::Outside) {
            game_text.append(line);
            if (had_newline) game_text.push_back('\n');
        }
    }

    if (state != State::Outside) finish_game(offset);
    return stats;
}

std::optional<std::pair<int, int>> parse_time_control(std::string_view text) {
    const auto plus = text.find('+');
    if (plus == std::string_view::npos) return std::nullopt;
    const auto base = parse_int(text.substr(0, plus));
    const auto inc = parse_int(text.substr(plus + 1));
    if (!base || !inc || *base < 0 || *inc < 0) return std::nullopt;
    return std::make_pair(*base, *inc);
}

}  // namespace steerchess::pgn
