#include "steerchess/core/notation.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <vector>

#include "steerchess/core/movegen.hpp"

namespace steerchess::core {

namespace {

char promo_letter_lower(PieceType t) {
    return static_cast<char>(std::tolower(static_cast<unsigned char>(piece_letter(t))));
}

std::string check_suffix(const BoardState& state, const Move& move) {
    const BoardState next = apply_move_unchecked(state, move);
    if (!in_check(next)) return "";
    return legal_moves(next).empty() ? "#" : "+";
}

// Strips check/mate/annotation suffixes and "e.p." markers.
std::string clean_san(std::string_view text) {
    std::string s(text);
    const auto pos = s.find("e.p.");
    if (pos != std::string::npos) s.erase(pos, 4);
    while (!s.empty()) {
        const char c = s.back();
        if (c == '+' || c == '#' || c == '!' || c == '?') {
            s.pop_back();
        } else {
            break;
        }
    }
    // Trailing whitespace left by the e.p. removal.
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    return s;
}

}  // namespace

std::string move_to_uci(const Move& move) {
    std::string out = square_name(move.from) + square_name(move.to);
    if (move.promotion) out.push_back(promo_letter_lower(*move.promotion));
    return out;
}

Move uci_to_move(const BoardState& state, std::string_view text) {
    if (text.size() < 4 || text.size() > 5) {
        throw std::invalid_argument("bad UCI move: " + std::string(text));
    }
    const auto from = parse_square(text.substr(0, 2));
    const auto to = parse_square(text.substr(2, 2));
    if (!from || !to) throw std::invalid_argument("bad UCI move: " + std::string(text));
    Move move{*from, *to, std::nullopt};
    if (text.size() == 5) {
        const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(text[4])));
        const auto p = piece_from_letter(up);
        if (!p || *p == PieceType::Pawn || *p == PieceType::King) {
            throw std::invalid_argument("bad UCI promotion: " + std::string(text));
        }
        move.promotion = *p;
    }
    if (!is_legal(state, move)) {
        throw std::invalid_argument("no legal move matches UCI " + std::string(text));
    }
    return move;
}

std::string move_to_san(const BoardState& state, const Move& move) {
    const auto moving = state.piece_at(move.from);
    if (!moving) throw std::invalid_argument("move_to_san: empty from-square");

    // Castling.
    if (moving->type == PieceType::King &&
        std::abs(file_of(move.to) - file_of(move.from)) == 2) {
        const std::string base = file_of(move.to) == 6 ? "O-O" : "O-O-O";
        return base + check_suffix(state, move);
    }

    const bool is_capture = !state.empty_at(move.to) ||
                            (moving->type == PieceType::Pawn && state.en_passant &&
                             move.to == *state.en_passant);

    std::string out;
    if (moving->type == PieceType::Pawn) {
        if (is_capture) {
            out.push_back(static_cast<char>('a' + file_of(move.from)));
            out.push_back('x');
        }
        out += square_name(move.to);
        if (move.promotion) {
            out.push_back('=');
            out.push_back(piece_letter(*move.promotion));
        }
    } else {
        out.push_back(piece_letter(moving->type));
        // Disambiguate against other same-type pieces that can reach `to`.
        bool need_file = false, need_rank = false, ambiguous = false;
        for (const Move& other : legal_moves(state)) {
            if (other.from == move.from || other.to != move.to) continue;
            const auto p = state.piece_at(other.from);
            if (!p || p->type != moving->type) continue;
            ambiguous = true;
            if (file_of(other.from) == file_of(move.from)) need_rank = true;
            if (rank_of(other.from) == rank_of(move.from)) need_file = true;
        }
        if (ambiguous && !need_file && !need_rank) need_file = true;
        if (need_file) out.push_back(static_cast<char>('a' + file_of(move.from)));
        if (need_rank) out.push_back(static_cast<char>('1' + rank_of(move.from)));
        if (is_capture) out.push_back('x');
        out += square_name(move.to);
    }
    return out + check_suffix(state, move);
}

Move san_to_move(const BoardState& state, std::string_view text) {
    const std::string san = clean_san(text);
    if (san.empty()) throw std::invalid_argument("empty SAN");

    const auto moves = legal_moves(state);

    // Castling, tolerating zero digits.
    if (san == "O-O" || san == "0-0" || san == "O-O-O" || san == "0-0-0") {
        const int to_file = san.size() == 3 ? 6 : 2;
        for (const Move& m : moves) {
            const auto p = state.piece_at(m.from);
            if (p && p->type == PieceType::King && file_of(m.to) == to_file &&
                std::abs(file_of(m.to) - file_of(m.from)) == 2) {
                return m;
            }
        }
        throw std::invalid_argument("no legal castling move for " + san);
    }

    std::string body = san;
    std::optional<PieceType> promotion;
    // Promotion suffix: "e8=Q" or bare "e8Q".
    if (body.size() >= 4 && body[body.size() - 2] == '=') {
        const auto p = piece_from_letter(body.back());
        if (!p || *p == PieceType::Pawn || *p == PieceType::King) {
            throw std::invalid_argument("bad promotion in SAN: " + san);
        }
        promotion = *p;
        body.erase(body.size() - 2);
    } else if (body.size() >= 3 && std::isupper(static_cast<unsigned char>(body.back())) &&
               std::islower(static_cast<unsigned char>(body[0]))) {
        // Bare suffix form "e8Q".
        const auto p = piece_from_letter(body.back());
        if (p && *p != PieceType::Pawn && *p != PieceType::King) {
            promotion = *p;
            body.pop_back();
        }
    }

    PieceType piece = PieceType::Pawn;
    std::size_t i = 0;
    if (!body.empty() && std::isupper(static_cast<unsigned char>(body[0]))) {
        const auto p = piece_from_letter(body[0]);
        if (!p) throw std::invalid_argument("bad piece letter in SAN: " + san);
        piece = *p;
        i = 1;
    }

    // Remainder: [file][rank]['x']file rank.
    std::optional<int> from_file, from_rank;
    std::string rest = body.substr(i);
    rest.erase(std::remove(rest.begin(), rest.end(), 'x'), rest.end());
    if (rest.size() < 2 || rest.size() > 4) {
        throw std::invalid_argument("unparseable SAN: " + san);
    }
    const std::string dest = rest.substr(rest.size() - 2);
    const auto to = parse_square(dest);
    if (!to) throw std::invalid_argument("bad destination in SAN: " + san);
    for (char c : rest.substr(0, rest.size() - 2)) {
        if (c >= 'a' && c <= 'h') {
            from_file = c - 'a';
        } else if (c >= '1' && c <= '8') {
            from_rank = c - '1';
        } else {
            throw std::invalid_argument("bad disambiguation in SAN: " + san);
        }
    }

    std::vector<Move> matches;
    for (const Move& m : moves) {
        if (m.to != *to) continue;
        const auto p = state.piece_at(m.from);
        if (!p || p->type != piece) continue;
        if (from_file && file_of(m.from) != *from_file) continue;
        if (from_rank && rank_of(m.from) != *from_rank) continue;
        if (promotion != m.promotion) continue;
        matches.push_back(m);
    }
    if (matches.empty()) {
        throw std::invalid_argument("no legal move matches SAN " + std::string(text));
    }
    if (matches.size() > 1) {
        throw std::invalid_argument("ambiguous SAN " + std::string(text));
    }
    return matches.front();
}

Move parse_move(const BoardState& state, std::string_view text) {
    // UCI first: it has a rigid shape, so false positives are impossible.
    if (text.size() >= 4 && text.size() <= 5 && text[0] >= 'a' && text[0] <= 'h' &&
        text[1] >= '1' && text[1] <= '8' && text[2] >= 'a' && text[2] <= 'h' &&
        text[3] >= '1' && text[3] <= '8') {
        try {
            return uci_to_move(state, text);
        } catch (const std::invalid_argument&) {
            // May still be pawn SAN such as "e4"; fall through.
        }
    }
    return san_to_move(state, text);
}

}  // namespace steerchess::core
