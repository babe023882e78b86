#include "steerchess/core/movegen.hpp"

#include <cstdlib>
#include <stdexcept>

namespace steerchess::core {

namespace {

struct Delta {
    int df;
    int dr;
};

constexpr Delta kRookDirs[4] = {{0, 1}, {1, 0}, {0, -1}, {-1, 0}};
constexpr Delta kBishopDirs[4] = {{1, 1}, {1, -1}, {-1, -1}, {-1, 1}};
constexpr Delta kKnightDeltas[8] = {{1, 2},   {2, 1},   {2, -1}, {1, -2},
                                    {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
constexpr Delta kKingDeltas[8] = {{0, 1},  {1, 1},   {1, 0},  {1, -1},
                                  {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};

int sign_of(Color c) { return c == Color::White ? 1 : -1; }

void push_pawn_moves(const BoardState& state, Square from, Color us,
                     std::vector<Move>& out) {
    const int dir = sign_of(us);
    const int promo_rank = us == Color::White ? 7 : 0;
    const int start_rank = us == Color::White ? 1 : 6;
    const int f = file_of(from), r = rank_of(from);

    const auto add = [&](Square to) {
        if (rank_of(to) == promo_rank) {
            for (PieceType p : {PieceType::Queen, PieceType::Rook, PieceType::Bishop,
                                PieceType::Knight}) {
                out.push_back(Move{from, to, p});
            }
        } else {
            out.push_back(Move{from, to, std::nullopt});
        }
    };

    // Pushes.
    if (square_ok(f, r + dir)) {
        const Square one = make_square(f, r + dir);
        if (state.empty_at(one)) {
            add(one);
            if (r == start_rank) {
                const Square two = make_square(f, r + 2 * dir);
                if (state.empty_at(two)) out.push_back(Move{from, two, std::nullopt});
            }
        }
    }
    // Captures, including en passant.
    for (int df : {-1, 1}) {
        if (!square_ok(f + df, r + dir)) continue;
        const Square to = make_square(f + df, r + dir);
        const auto victim = state.piece_at(to);
        if (victim && victim->color != us) {
            add(to);
        } else if (state.en_passant && to == *state.en_passant && state.empty_at(to)) {
            out.push_back(Move{from, to, std::nullopt});
        }
    }
}

void push_slider_moves(const BoardState& state, Square from, Color us,
                       const Delta* dirs, int ndirs, std::vector<Move>& out) {
    for (int d = 0; d < ndirs; ++d) {
        int f = file_of(from), r = rank_of(from);
        while (true) {
            f += dirs[d].df;
            r += dirs[d].dr;
            if (!square_ok(f, r)) break;
            const Square to = make_square(f, r);
            const auto p = state.piece_at(to);
            if (!p) {
                out.push_back(Move{from, to, std::nullopt});
                continue;
            }
            if (p->color != us) out.push_back(Move{from, to, std::nullopt});
            break;
        }
    }
}

void push_step_moves(const BoardState& state, Square from, Color us,
                     const Delta* deltas, int n, std::vector<Move>& out) {
    for (int d = 0; d < n; ++d) {
        const int f = file_of(from) + deltas[d].df;
        const int r = rank_of(from) + deltas[d].dr;
        if (!square_ok(f, r)) continue;
        const Square to = make_square(f, r);
        const auto p = state.piece_at(to);
        if (!p || p->color != us) out.push_back(Move{from, to, std::nullopt});
    }
}

void push_castling_moves(const BoardState& state, Color us, std::vector<Move>& out) {
    const Color them = opposite(us);
    const int base = us == Color::White ? 0 : 56;
    const Square king = base + 4;
    const int ks_right = us == Color::White ? kWhiteKingside : kBlackKingside;
    const int qs_right = us == Color::White ? kWhiteQueenside : kBlackQueenside;

    if (is_square_attacked(state, king, them)) return;
    if (state.castling[static_cast<std::size_t>(ks_right)]) {
        if (state.empty_at(base + 5) && state.empty_at(base + 6) &&
            !is_square_attacked(state, base + 5, them) &&
            !is_square_attacked(state, base + 6, them)) {
            out.push_back(Move{king, base + 6, std::nullopt});
        }
    }
    if (state.castling[static_cast<std::size_t>(qs_right)]) {
        if (state.empty_at(base + 3) && state.empty_at(base + 2) && state.empty_at(base + 1) &&
            !is_square_attacked(state, base + 3, them) &&
            !is_square_attacked(state, base + 2, them)) {
            out.push_back(Move{king, base + 2, std::nullopt});
        }
    }
}

std::vector<Move> pseudo_legal_moves(const BoardState& state) {
    std::vector<Move> out;
    out.reserve(48);
    const Color us = state.side_to_move;
    for (Square from = 0; from < 64; ++from) {
        const auto p = state.piece_at(from);
        if (!p || p->color != us) continue;
        switch (p->type) {
            case PieceType::Pawn: push_pawn_moves(state, from, us, out); break;
            case PieceType::Knight: push_step_moves(state, from, us, kKnightDeltas, 8, out); break;
            case PieceType::Bishop: push_slider_moves(state, from, us, kBishopDirs, 4, out); break;
            case PieceType::Rook: push_slider_moves(state, from, us, kRookDirs, 4, out); break;
            case PieceType::Queen:
                push_slider_moves(state, from, us, kRookDirs, 4, out);
                push_slider_moves(state, from, us, kBishopDirs, 4, out);
                break;
            case PieceType::King: push_step_moves(state, from, us, kKingDeltas, 8, out); break;
        }
    }
    push_castling_moves(state, us, out);
    return out;
}

void clear_castling_for_square(BoardState& state, Square s) {
    switch (s) {
        case 0: state.castling[kWhiteQueenside] = false; break;
        case 7: state.castling[kWhiteKingside] = false; break;
        case 4:
            state.castling[kWhiteQueenside] = false;
            state.castling[kWhiteKingside] = false;
            break;
        case 56: state.castling[kBlackQueenside] = false; break;
        case 63: state.castling[kBlackKingside] = false; break;
        case 60:
            state.castling[kBlackQueenside] = false;
            state.castling[kBlackKingside] = false;
            break;
        default: break;
    }
}

}  // namespace

bool is_square_attacked(const BoardState& state, Square sq, Color by) {
    const int f = file_of(sq), r = rank_of(sq);
    // Pawns attack toward the defender, so look one rank back from `sq`.
    const int pawn_dr = by == Color::White ? -1 : 1;
    for (int df : {-1, 1}) {
        if (!square_ok(f + df, r + pawn_dr)) continue;
        const auto p = state.piece_at(make_square(f + df, r + pawn_dr));
        if (p && p->color == by && p->type == PieceType::Pawn) return true;
    }
    for (const auto& d : kKnightDeltas) {
        if (!square_ok(f + d.df, r + d.dr)) continue;
        const auto p = state.piece_at(make_square(f + d.df, r + d.dr));
        if (p && p->color == by && p->type == PieceType::Knight) return true;
    }
    for (const auto& d : kKingDeltas) {
        if (!square_ok(f + d.df, r + d.dr)) continue;
        const auto p = state.piece_at(make_square(f + d.df, r + d.dr));
        if (p && p->color == by && p->type == PieceType::King) return true;
    }
    for (const auto& dir : kRookDirs) {
        int ff = f, rr = r;
        while (true) {
            ff += dir.df;
            rr += dir.dr;
            if (!square_ok(ff, rr)) break;
            const auto p = state.piece_at(make_square(ff, rr));
            if (!p) continue;
            if (p->color == by && (p->type == PieceType::Rook || p->type == PieceType::Queen))
                return true;
            break;
        }
    }
    for (const auto& dir : kBishopDirs) {
        int ff = f, rr = r;
        while (true) {
            ff += dir.df;
            rr += dir.dr;
            if (!square_ok(ff, rr)) break;
            const auto p = state.piece_at(make_square(ff, rr));
            if (!p) continue;
            if (p->color == by && (p->type == PieceType::Bishop || p->type == PieceType::Queen))
                return true;
            break;
        }
    }
    return false;
}

bool in_check(const BoardState& state) {
    return is_square_attacked(state, state.king_square(state.side_to_move),
                              opposite(state.side_to_move));
}

BoardState apply_move_unchecked(const BoardState& state, const Move& move) {
    BoardState next = state;
    const Color us = state.side_to_move;
    const auto moving = state.piece_at(move.from);
    if (!moving) throw std::invalid_argument("apply_move: empty from-square");

    const bool is_pawn = moving->type == PieceType::Pawn;
    const bool is_capture = !state.empty_at(move.to) ||
                            (is_pawn && state.en_passant && move.to == *state.en_passant);

    next.en_passant.reset();

    if (is_pawn && state.en_passant && move.to == *state.en_passant &&
        state.empty_at(move.to)) {
        // Remove the pawn captured en passant.
        const Square victim = make_square(file_of(move.to), rank_of(move.from));
        next.set_piece(victim, std::nullopt);
    }

    next.set_piece(move.from, std::nullopt);
    if (move.promotion) {
        next.set_piece(move.to, Piece{*move.promotion, us});
    } else {
        next.set_piece(move.to, *moving);
    }

    if (moving->type == PieceType::King && std::abs(file_of(move.to) - file_of(move.from)) == 2) {
        const int base = us == Color::White ? 0 : 56;
        if (file_of(move.to) == 6) {
            next.set_piece(base + 7, std::nullopt);
            next.set_piece(base + 5, Piece{PieceType::Rook, us});
        } else {
            next.set_piece(base + 0, std::nullopt);
            next.set_piece(base + 3, Piece{PieceType::Rook, us});
        }
    }

    if (is_pawn && std::abs(rank_of(move.to) - rank_of(move.from)) == 2) {
        next.en_passant = make_square(file_of(move.from),
                                      (rank_of(move.from) + rank_of(move.to)) / 2);
    }

    clear_castling_for_square(next, move.from);
    clear_castling_for_square(next, move.to);

    next.halfmove_clock = (is_pawn || is_capture) ? 0 : state.halfmove_clock + 1;
    if (us == Color::Black) next.fullmove_number = state.fullmove_number + 1;
    next.side_to_move = opposite(us);
    return next;
}

std::vector<Move> legal_moves(const BoardState& state) {
    std::vector<Move> out;
    const Color us = state.side_to_move;
    for (const Move& m : pseudo_legal_moves(state)) {
        const BoardState next = apply_move_unchecked(state, m);
        if (!is_square_attacked(next, next.king_square(us), opposite(us))) {
            out.push_back(m);
        }
    }
    return out;
}

bool is_legal(const BoardState& state, const Move& move) {
    for (const Move& m : legal_moves(state)) {
        if (m == move) return true;
    }
    return false;
}

BoardState apply_move(const BoardState& state, const Move& move) {
    if (!is_legal(state, move)) {
        throw std::invalid_argument("apply_move: illegal move " + square_name(move.from) +
                                    square_name(move.to));
    }
    return apply_move_unchecked(state, move);
}

std::uint64_t perft(const BoardState& state, int depth) {
    if (depth < 0) throw std::invalid_argument("perft: negative depth");
    if (depth == 0) return 1;
    std::uint64_t nodes = 0;
    for (const Move& m : legal_moves(state)) {
        if (depth == 1) {
            ++nodes;
        } else {
            nodes += perft(apply_move_unchecked(state, m), depth - 1);
        }
    }
    return nodes;
}

}  // namespace steerchess::core
