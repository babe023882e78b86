#include "movegen_oracle.hpp"

#include <array>
#include <cmath>

#include "steerchess/core/movegen.hpp"

namespace steerchess::oracle {

using core::BoardState;
using core::Color;
using core::Move;
using core::Piece;
using core::PieceType;
using core::Square;

namespace {

int file_of(Square s) { return s % 8; }
int rank_of(Square s) { return s / 8; }

// Raw signed-piece board copy the oracle simulates on.
using Grid = std::array<std::int8_t, 64>;

bool path_clear(const Grid& g, Square from, Square to) {
    const int df = file_of(to) - file_of(from);
    const int dr = rank_of(to) - rank_of(from);
    const int steps = std::max(std::abs(df), std::abs(dr));
    const int sf = df == 0 ? 0 : df / std::abs(df);
    const int sr = dr == 0 ? 0 : dr / std::abs(dr);
    for (int k = 1; k < steps; ++k) {
        const Square s = (rank_of(from) + k * sr) * 8 + (file_of(from) + k * sf);
        if (g[static_cast<std::size_t>(s)] != 0) return false;
    }
    return true;
}

bool geometry_ok(PieceType type, Color color, Square from, Square to, const Grid& g,
                 bool is_capture) {
    const int df = file_of(to) - file_of(from);
    const int dr = rank_of(to) - rank_of(from);
    const int adf = std::abs(df), adr = std::abs(dr);
    switch (type) {
        case PieceType::Knight:
            return (adf == 1 && adr == 2) || (adf == 2 && adr == 1);
        case PieceType::Bishop:
            return adf == adr && adf > 0 && path_clear(g, from, to);
        case PieceType::Rook:
            return ((adf == 0 && adr > 0) || (adr == 0 && adf > 0)) && path_clear(g, from, to);
        case PieceType::Queen:
            return ((adf == adr && adf > 0) || (adf == 0 && adr > 0) ||
                    (adr == 0 && adf > 0)) &&
                   path_clear(g, from, to);
        case PieceType::King:
            return adf <= 1 && adr <= 1 && (adf + adr) > 0;
        case PieceType::Pawn: {
            const int fwd = color == Color::White ? 1 : -1;
            const int home = color == Color::White ? 1 : 6;
            if (is_capture) return adf == 1 && dr == fwd;
            if (df != 0) return false;
            if (dr == fwd) return true;
            return dr == 2 * fwd && rank_of(from) == home &&
                   g[static_cast<std::size_t>((rank_of(from) + fwd) * 8 + file_of(from))] == 0;
        }
    }
    return false;
}

bool grid_square_attacked(const Grid& g, Square target, Color by) {
    for (Square s = 0; s < 64; ++s) {
        const std::int8_t v = g[static_cast<std::size_t>(s)];
        if (v == 0) continue;
        const Color c = v > 0 ? Color::White : Color::Black;
        if (c != by) continue;
        const auto type = static_cast<PieceType>((v > 0 ? v : -v) - 1);
        if (type == PieceType::Pawn) {
            const int fwd = by == Color::White ? 1 : -1;
            if (rank_of(target) - rank_of(s) == fwd &&
                std::abs(file_of(target) - file_of(s)) == 1) {
                return true;
            }
            continue;
        }
        if (geometry_ok(type, c, s, target, g, /*is_capture=*/true) &&
            (type == PieceType::Knight || type == PieceType::King || path_clear(g, s, target))) {
            return true;
        }
    }
    return false;
}

Square find_king(const Grid& g, Color c) {
    const std::int8_t target = c == Color::White ? 6 : -6;
    for (Square s = 0; s < 64; ++s) {
        if (g[static_cast<std::size_t>(s)] == target) return s;
    }
    return -1;
}

// Simulates `m` on a grid copy, returns false if the mover's king is left
// attacked afterwards.
bool simulate_and_check(const BoardState& state, const Move& m) {
    Grid g = state.squares;
    const std::int8_t v = g[static_cast<std::size_t>(m.from)];
    const Color us = v > 0 ? Color::White : Color::Black;
    const auto type = static_cast<PieceType>((v > 0 ? v : -v) - 1);

    if (type == PieceType::Pawn && state.en_passant && m.to == *state.en_passant &&
        g[static_cast<std::size_t>(m.to)] == 0 && file_of(m.from) != file_of(m.to)) {
        g[static_cast<std::size_t>(rank_of(m.from) * 8 + file_of(m.to))] = 0;
    }
    g[static_cast<std::size_t>(m.from)] = 0;
    std::int8_t placed = v;
    if (m.promotion) {
        placed = static_cast<std::int8_t>(static_cast<int>(*m.promotion) + 1);
        if (us == Color::Black) placed = static_cast<std::int8_t>(-placed);
    }
    g[static_cast<std::size_t>(m.to)] = placed;

    if (type == PieceType::King && std::abs(file_of(m.to) - file_of(m.from)) == 2) {
        const int base = us == Color::White ? 0 : 56;
        const std::int8_t rook = us == Color::White ? 4 : -4;
        if (file_of(m.to) == 6) {
            g[static_cast<std::size_t>(base + 7)] = 0;
            g[static_cast<std::size_t>(base + 5)] = rook;
        } else {
            g[static_cast<std::size_t>(base)] = 0;
            g[static_cast<std::size_t>(base + 3)] = rook;
        }
    }
    const Square king = find_king(g, us);
    return king >= 0 && !grid_square_attacked(g, king, us == Color::White ? Color::Black : Color::White);
}

bool castling_candidate_ok(const BoardState& state, Square from, Square to) {
    const Color us = state.side_to_move;
    const int base = us == Color::White ? 0 : 56;
    if (from != base + 4) return false;
    const Color them = us == Color::White ? Color::Black : Color::White;
    const Grid& g = state.squares;
    if (grid_square_attacked(g, from, them)) return false;
    if (to == base + 6) {
        const int right = us == Color::White ? core::kWhiteKingside : core::kBlackKingside;
        return state.castling[static_cast<std::size_t>(right)] &&
               g[static_cast<std::size_t>(base + 5)] == 0 &&
               g[static_cast<std::size_t>(base + 6)] == 0 &&
               !grid_square_attacked(g, base + 5, them) &&
               !grid_square_attacked(g, base + 6, them);
    }
    if (to == base + 2) {
        const int right = us == Color::White ? core::kWhiteQueenside : core::kBlackQueenside;
        return state.castling[static_cast<std::size_t>(right)] &&
               g[static_cast<std::size_t>(base + 3)] == 0 &&
               g[static_cast<std::size_t>(base + 2)] == 0 &&
               g[static_cast<std::size_t>(base + 1)] == 0 &&
               !grid_square_attacked(g, base + 3, them) &&
               !grid_square_attacked(g, base + 2, them);
    }
    return false;
}

}  // namespace

std::vector<Move> oracle_legal_moves(const BoardState& state) {
    std::vector<Move> out;
    const Color us = state.side_to_move;
    const std::optional<PieceType> promos[4] = {PieceType::Queen, PieceType::Rook,
                                                PieceType::Bishop, PieceType::Knight};
    for (Square from = 0; from < 64; ++from) {
        const std::int8_t v = state.squares[static_cast<std::size_t>(from)];
        if (v == 0) continue;
        const Color c = v > 0 ? Color::White : Color::Black;
        if (c != us) continue;
        const auto type = static_cast<PieceType>((v > 0 ? v : -v) - 1);
        for (Square to = 0; to < 64; ++to) {
            if (to == from) continue;
            const std::int8_t tv = state.squares[static_cast<std::size_t>(to)];
            const bool occupied_by_us = tv != 0 && ((tv > 0) == (us == Color::White));

            // Castling is the one king move not covered by step geometry.
            if (type == PieceType::King && std::abs(file_of(to) - file_of(from)) == 2 &&
                rank_of(to) == rank_of(from)) {
                if (castling_candidate_ok(state, from, to)) {
                    const Move m{from, to, std::nullopt};
                    if (simulate_and_check(state, m)) out.push_back(m);
                }
                continue;
            }
            if (occupied_by_us) continue;

            bool is_capture = tv != 0;
            if (type == PieceType::Pawn && state.en_passant && to == *state.en_passant &&
                std::abs(file_of(to) - file_of(from)) == 1) {
                is_capture = true;
            }
            if (!geometry_ok(type, us, from, to, state.squares, is_capture)) continue;
            if (type == PieceType::Pawn && is_capture && tv == 0 &&
                !(state.en_passant && to == *state.en_passant)) {
                continue;  // diagonal move to an empty non-ep square
            }

            const int last = us == Color::White ? 7 : 0;
            if (type == PieceType::Pawn && rank_of(to) == last) {
                for (const auto& p : promos) {
                    const Move m{from, to, p};
                    if (simulate_and_check(state, m)) out.push_back(m);
                }
            } else {
                const Move m{from, to, std::nullopt};
                if (simulate_and_check(state, m)) out.push_back(m);
            }
        }
    }
    return out;
}

std::uint64_t oracle_perft(const BoardState& state, int depth) {
    if (depth == 0) return 1;
    std::uint64_t nodes = 0;
    for (const Move& m : oracle_legal_moves(state)) {
        if (depth == 1) {
            ++nodes;
        } else {
            nodes += oracle_perft(core::apply_move_unchecked(state, m), depth - 1);
        }
    }
    return nodes;
}

}  // namespace steerchess::oracle
