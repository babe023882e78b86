#include "steerchess/pgn/stage2.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

#include "steerchess/core/movegen.hpp"
#include "steerchess/core/notation.hpp"
#include "steerchess/util/text.hpp"

namespace steerchess::pgn {

namespace {

bool is_result_token(std::string_view token) {
    return token == "1-0" || token == "0-1" || token == "1/2-1/2" || token == "*";
}

bool is_move_number(std::string_view token) {
    bool digits = false;
    std::size_t i = 0;
    while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) {
        digits = true;
        ++i;
    }
    if (!digits) return false;
    while (i < token.size() && token[i] == '.') ++i;
    return i == token.size();
}

// [%clk 0:04:58] or [%clk 1:02:03.5] -> whole seconds.
std::optional<int> clock_from_comment(std::string_view comment) {
    const auto pos = comment.find("[%clk");
    if (pos == std::string_view::npos) return std::nullopt;
    std::size_t i = pos + 5;
    while (i < comment.size() && comment[i] == ' ') ++i;
    long total = 0;
    long part = 0;
    bool any = false;
    for (; i < comment.size(); ++i) {
        const char c = comment[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            part = part * 10 + (c - '0');
            any = true;
        } else if (c == ':') {
            total = (total + part) * 60;
            part = 0;
        } else {
            break;
        }
    }
    if (!any) return std::nullopt;
    return static_cast<int>(total + part);
}

}  // namespace

std::string movetext_of(const std::string& original_pgn) {
    std::string out;
    bool in_headers = true;
    for (const std::string& raw : util::split(original_pgn, '\n')) {
        std::string line = raw;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string trimmed = util::trim(line);
        if (in_headers) {
            if (!trimmed.empty() && trimmed.front() == '[') continue;
            if (trimmed.empty()) continue;
            in_headers = false;
        }
        if (!out.empty()) out.push_back(' ');
        out += line;
    }
    return out;
}

Movetext tokenize_movetext(const std::string& movetext) {
    Movetext out;
    std::size_t i = 0;
    const std::size_t n = movetext.size();
    int variation_depth = 0;

    while (i < n) {
        const char c = movetext[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '{') {
            const std::size_t close = movetext.find('}', i);
            const std::string comment =
                movetext.substr(i + 1, close == std::string::npos ? n - i - 1 : close - i - 1);
            if (variation_depth == 0) {
                out.last_comment = util::trim(comment);
                if (!out.san_moves.empty() && out.clocks.size() == out.san_moves.size() &&
                    !out.clocks.empty() && !out.clocks.back()) {
                    out.clocks.back() = clock_from_comment(comment);
                }
            }
            i = close == std::string::npos ? n : close + 1;
            continue;
        }
        if (c == ';') {  // rest-of-line comment
            const std::size_t eol = movetext.find('\n', i);
            i = eol == std::string::npos ? n : eol + 1;
            continue;
        }
        if (c == '(') {
            ++variation_depth;
            ++i;
            continue;
        }
        if (c == ')') {
            if (variation_depth > 0) --variation_depth;
            ++i;
            continue;
        }
        if (c == '$') {  // NAG
            ++i;
            while (i < n && std::isdigit(static_cast<unsigned char>(movetext[i]))) ++i;
            continue;
        }
        // Plain token.
        std::size_t j = i;
        while (j < n && !std::isspace(static_cast<unsigned char>(movetext[j])) &&
               movetext[j] != '{' && movetext[j] != '(' && movetext[j] != ')' &&
               movetext[j] != ';') {
            ++j;
        }
        const std::string token = movetext.substr(i, j - i);
        i = j;
        if (variation_depth > 0) continue;
        if (is_result_token(token)) {
            out.result_token = token;
            continue;
        }
        if (is_move_number(token)) continue;
        out.san_moves.push_back(token);
        out.clocks.push_back(std::nullopt);
    }
    return out;
}

std::vector<core::BoardState> replay_mainline(const std::vector<std::string>& san_moves) {
    std::vector<core::BoardState> positions;
    positions.reserve(san_moves.size() + 1);
    positions.push_back(core::start_position());
    for (const std::string& san : san_moves) {
        const core::Move move = core::san_to_move(positions.back(), san);
        positions.push_back(core::apply_move_unchecked(positions.back(), move));
    }
    return positions;
}

ParsedGame parse_game(const Stage1Record& rec) {
    if (rec.is_fischer_random) {
        throw std::invalid_argument("parse_game: variant games are not replayable");
    }
    const Movetext movetext = tokenize_movetext(movetext_of(rec.original_pgn));

    ParsedGame out;
    out.clocks = movetext.clocks;
    out.record.stage1 = rec;
    out.record.length = static_cast<int>(movetext.san_moves.size());
    out.record.last_comment = movetext.last_comment;

    std::vector<core::BoardState> positions;
    positions.reserve(movetext.san_moves.size() + 1);
    positions.push_back(core::start_position());
    for (const std::string& san : movetext.san_moves) {
        const core::Move move = core::san_to_move(positions.back(), san);
        out.uci_moves.push_back(core::move_to_uci(move));
        positions.push_back(core::apply_move_unchecked(positions.back(), move));
    }

    const std::string result =
        !rec.result.empty() ? rec.result : movetext.result_token;
    const auto report = core::detect_termination(positions.back(), positions,
                                                 movetext.last_comment, result,
                                                 rec.termination);
    out.record.termination_outcome = report.rule_outcome;
    out.record.termination_winner = report.outcome.winner;
    out.record.termination_reason = report.outcome.kind;

    if (rec.white_elo && rec.black_elo) {
        out.record.mean_elo = (*rec.white_elo + *rec.black_elo) / 2;
        out.record.diff_elo = std::abs(*rec.white_elo - *rec.black_elo);
    }
    return out;
}

}  // namespace steerchess::pgn
