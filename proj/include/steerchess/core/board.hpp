#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace steerchess::core {

enum class Color : std::uint8_t { White = 0, Black = 1 };

constexpr Color opposite(Color c) {
    return c == Color::White ? Color::Black : Color::White;
}

enum class PieceType : std::uint8_t { Pawn = 0, Knight, Bishop, Rook, Queen, King };

struct Piece {
    PieceType type;
    Color color;
    bool operator==(const Piece&) const = default;
};

// Squares are 0..63, rank-major: a1=0, h1=7, a8=56, h8=63.
using Square = int;

constexpr int file_of(Square s) { return s & 7; }
constexpr int rank_of(Square s) { return s >> 3; }
constexpr Square make_square(int file, int rank) { return rank * 8 + file; }
constexpr bool square_ok(int file, int rank) {
    return file >= 0 && file < 8 && rank >= 0 && rank < 8;
}

std::string square_name(Square s);
std::optional<Square> parse_square(std::string_view text);

struct Move {
    Square from = 0;
    Square to = 0;
    std::optional<PieceType> promotion;
    bool operator==(const Move&) const = default;
};

// Castling-rights order: white queenside, white kingside, black queenside,
// black kingside.
enum CastlingRight : int {
    kWhiteQueenside = 0,
    kWhiteKingside = 1,
    kBlackQueenside = 2,
    kBlackKingside = 3,
};

struct BoardState {
    // 0 = empty, +1..+6 white P,N,B,R,Q,K, -1..-6 black.
    std::array<std::int8_t, 64> squares{};
    Color side_to_move = Color::White;
    std::array<bool, 4> castling{};
    std::optional<Square> en_passant;
    int halfmove_clock = 0;
    int fullmove_number = 1;

    bool operator==(const BoardState&) const = default;

    bool empty_at(Square s) const { return squares[s] == 0; }
    std::optional<Piece> piece_at(Square s) const;
    void set_piece(Square s, std::optional<Piece> p);
    Square king_square(Color c) const;
};

// Piece letters as used by FEN/SAN: P N B R Q K.
char piece_letter(PieceType t);
std::optional<PieceType> piece_from_letter(char c);

inline constexpr std::string_view kStartFen =
    "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1";

// Throws std::invalid_argument on malformed input or invariant violations
// (field count, piece characters, castling flags inconsistent with king/rook
// home squares, bad en-passant rank, missing kings).
BoardState parse_fen(std::string_view fen);
std::string to_fen(const BoardState& state);

BoardState start_position();

// Canonical repetition key: placement + side + castling + en passant.
std::string position_key(const BoardState& state);

}  // namespace steerchess::core
