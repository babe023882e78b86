#include "steerchess/core/board.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "steerchess/util/text.hpp"

namespace steerchess::core {

std::string square_name(Square s) {
    std::string out(2, ' ');
    out[0] = static_cast<char>('a' + file_of(s));
    out[1] = static_cast<char>('1' + rank_of(s));
    return out;
}

std::optional<Square> parse_square(std::string_view text) {
    if (text.size() != 2) return std::nullopt;
    const int file = text[0] - 'a';
    const int rank = text[1] - '1';
    if (!square_ok(file, rank)) return std::nullopt;
    return make_square(file, rank);
}

std::optional<Piece> BoardState::piece_at(Square s) const {
    const std::int8_t v = squares[s];
    if (v == 0) return std::nullopt;
    const Color c = v > 0 ? Color::White : Color::Black;
    const int t = (v > 0 ? v : -v) - 1;
    return Piece{static_cast<PieceType>(t), c};
}

void BoardState::set_piece(Square s, std::optional<Piece> p) {
    if (!p) {
        squares[s] = 0;
        return;
    }
    const std::int8_t v = static_cast<std::int8_t>(static_cast<int>(p->type) + 1);
    squares[s] = p->color == Color::White ? v : static_cast<std::int8_t>(-v);
}

Square BoardState::king_square(Color c) const {
    const std::int8_t target = c == Color::White ? 6 : -6;
    for (Square s = 0; s < 64; ++s) {
        if (squares[s] == target) return s;
    }
    throw std::logic_error("board has no king for side");
}

char piece_letter(PieceType t) {
    static constexpr char letters[6] = {'P', 'N', 'B', 'R', 'Q', 'K'};
    return letters[static_cast<int>(t)];
}

std::optional<PieceType> piece_from_letter(char c) {
    switch (c) {
        case 'P': return PieceType::Pawn;
        case 'N': return PieceType::Knight;
        case 'B': return PieceType::Bishop;
        case 'R': return PieceType::Rook;
        case 'Q': return PieceType::Queen;
        case 'K': return PieceType::King;
        default: return std::nullopt;
    }
}

namespace {

[[noreturn]] void bad_fen(const std::string& why) {
    throw std::invalid_argument("bad FEN: " + why);
}

void validate(const BoardState& state) {
    int white_kings = 0, black_kings = 0;
    for (Square s = 0; s < 64; ++s) {
        if (state.squares[s] == 6) ++white_kings;
        if (state.squares[s] == -6) ++black_kings;
    }
    if (white_kings != 1 || black_kings != 1) bad_fen("need exactly one king per color");
    if (state.halfmove_clock < 0) bad_fen("negative halfmove clock");
    if (state.en_passant) {
        const int r = rank_of(*state.en_passant);
        if (r != 2 && r != 5) bad_fen("en passant square must be on rank 3 or 6");
    }
    // Castling flags must be consistent with king/rook home squares.
    const auto piece_is = [&](Square s, std::int8_t v) { return state.squares[s] == v; };
    if (state.castling[kWhiteQueenside] && !(piece_is(4, 6) && piece_is(0, 4)))
        bad_fen("white queenside castling right without king e1 / rook a1");
    if (state.castling[kWhiteKingside] && !(piece_is(4, 6) && piece_is(7, 4)))
        bad_fen("white kingside castling right without king e1 / rook h1");
    if (state.castling[kBlackQueenside] && !(piece_is(60, -6) && piece_is(56, -4)))
        bad_fen("black queenside castling right without king e8 / rook a8");
    if (state.castling[kBlackKingside] && !(piece_is(60, -6) && piece_is(63, -4)))
        bad_fen("black kingside castling right without king e8 / rook h8");
}

}  // namespace

BoardState parse_fen(std::string_view fen) {
    const auto fields = util::split_whitespace(fen);
    if (fields.size() != 6) bad_fen("expected 6 fields, got " + std::to_string(fields.size()));

    BoardState state;
    // Field 1: placement, ranks 8..1 separated by '/'.
    const auto ranks = util::split(fields[0], '/');
    if (ranks.size() != 8) bad_fen("expected 8 ranks, got " + std::to_string(ranks.size()));
    for (int r = 0; r < 8; ++r) {
        const std::string& row = ranks[static_cast<std::size_t>(7 - r)];
        int file = 0;
        for (char c : row) {
            if (c >= '1' && c <= '8') {
                file += c - '0';
            } else {
                if (file >= 8) bad_fen("rank overflow");
                const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
                const auto type = piece_from_letter(upper);
                if (!type) bad_fen(std::string("illegal piece character '") + c + "'");
                const Color color = std::isupper(static_cast<unsigned char>(c)) ? Color::White : Color::Black;
                state.set_piece(make_square(file, r), Piece{*type, color});
                ++file;
            }
        }
        if (file != 8) bad_fen("rank does not cover 8 files");
    }

    // Field 2: side to move.
    if (fields[1] == "w") {
        state.side_to_move = Color::White;
    } else if (fields[1] == "b") {
        state.side_to_move = Color::Black;
    } else {
        bad_fen("side to move must be 'w' or 'b'");
    }

    // Field 3: castling.
    if (fields[2] != "-") {
        for (char c : fields[2]) {
            switch (c) {
                case 'Q': state.castling[kWhiteQueenside] = true; break;
                case 'K': state.castling[kWhiteKingside] = true; break;
                case 'q': state.castling[kBlackQueenside] = true; break;
                case 'k': state.castling[kBlackKingside] = true; break;
                default: bad_fen(std::string("bad castling flag '") + c + "'");
            }
        }
    }

    // Field 4: en passant.
    if (fields[3] != "-") {
        const auto sq = parse_square(fields[3]);
        if (!sq) bad_fen("bad en-passant square");
        state.en_passant = *sq;
    }

    // Fields 5/6: clocks.
    try {
        state.halfmove_clock = std::stoi(fields[4]);
        state.fullmove_number = std::stoi(fields[5]);
    } catch (const std::exception&) {
        bad_fen("non-numeric clock fields");
    }
    if (state.fullmove_number < 1) bad_fen("fullmove number must be >= 1");

    validate(state);
    return state;
}

std::string to_fen(const BoardState& state) {
    std::ostringstream out;
    for (int r = 7; r >= 0; --r) {
        int empty = 0;
        for (int f = 0; f < 8; ++f) {
            const auto p = state.piece_at(make_square(f, r));
            if (!p) {
                ++empty;
                continue;
            }
            if (empty > 0) {
                out << empty;
                empty = 0;
            }
            char c = piece_letter(p->type);
            if (p->color == Color::Black) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            out << c;
        }
        if (empty > 0) out << empty;
        if (r > 0) out << '/';
    }
    out << ' ' << (state.side_to_move == Color::White ? 'w' : 'b') << ' ';
    std::string rights;
    if (state.castling[kWhiteKingside]) rights += 'K';
    if (state.castling[kWhiteQueenside]) rights += 'Q';
    if (state.castling[kBlackKingside]) rights += 'k';
    if (state.castling[kBlackQueenside]) rights += 'q';
    out << (rights.empty() ? "-" : rights) << ' ';
    out << (state.en_passant ? square_name(*state.en_passant) : "-") << ' ';
    out << state.halfmove_clock << ' ' << state.fullmove_number;
    return out.str();
}

BoardState start_position() { return parse_fen(kStartFen); }

std::string position_key(const BoardState& state) {
    const std::string fen = to_fen(state);
    // First four FEN fields: placement, side, castling, en passant.
    std::size_t spaces = 0, i = 0;
    for (; i < fen.size(); ++i) {
        if (fen[i] == ' ' && ++spaces == 4) break;
    }
    return fen.substr(0, i);
}

}  // namespace steerchess::core
