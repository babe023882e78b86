#include "steerchess/enc/move_table.hpp"

#include <stdexcept>

namespace steerchess::enc {

using core::Move;
using core::PieceType;
using core::Square;

namespace {

// Promotion class packed into the lookup key. Plain moves and knight
// promotions share class 0.
int promo_class(const std::optional<PieceType>& p) {
    if (!p || *p == PieceType::Knight) return 0;
    switch (*p) {
        case PieceType::Queen: return 1;
        case PieceType::Rook: return 2;
        case PieceType::Bishop: return 3;
        default: throw std::invalid_argument("unrepresentable promotion piece");
    }
}

}  // namespace

std::uint32_t MoveTable::key(const Move& move) {
    return static_cast<std::uint32_t>(((move.from * 64) + move.to) * 4 +
                                      promo_class(move.promotion));
}

MoveTable::MoveTable() {
    constexpr int queen_dirs[8][2] = {{0, 1},  {1, 1},   {1, 0},  {1, -1},
                                      {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
    constexpr int knight_deltas[8][2] = {{1, 2},   {2, 1},   {2, -1}, {1, -2},
                                         {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
    const PieceType promos[3] = {PieceType::Queen, PieceType::Rook, PieceType::Bishop};

    const auto add = [&](const Move& m) {
        index_.emplace(key(m), static_cast<int>(entries_.size()));
        entries_.push_back(m);
    };

    for (Square from = 0; from < 64; ++from) {
        const int f = core::file_of(from), r = core::rank_of(from);
        for (const auto& d : queen_dirs) {
            for (int dist = 1; dist < 8; ++dist) {
                const int tf = f + d[0] * dist, tr = r + d[1] * dist;
                if (!core::square_ok(tf, tr)) break;
                add(Move{from, core::make_square(tf, tr), std::nullopt});
            }
        }
        for (const auto& d : knight_deltas) {
            const int tf = f + d[0], tr = r + d[1];
            if (!core::square_ok(tf, tr)) continue;
            add(Move{from, core::make_square(tf, tr), std::nullopt});
        }
        if (r == 6) {
            for (int df : {-1, 0, 1}) {
                const int tf = f + df;
                if (tf < 0 || tf > 7) continue;
                for (PieceType p : promos) {
                    add(Move{from, core::make_square(tf, 7), p});
                }
            }
        }
    }
}

int MoveTable::index_of(const Move& move) const {
    const auto it = index_.find(key(move));
    if (it == index_.end()) {
        throw std::invalid_argument("move not representable in policy space");
    }
    return it->second;
}

const Move& MoveTable::move_at(int index) const {
    if (index < 0 || index >= size()) {
        throw std::out_of_range("policy index out of range");
    }
    return entries_[static_cast<std::size_t>(index)];
}

bool MoveTable::contains(const Move& move) const {
    return index_.find(key(move)) != index_.end();
}

const MoveTable& move_table() {
    static const MoveTable table;
    return table;
}

Move flip_move(const Move& move) {
    return Move{move.from ^ 56, move.to ^ 56, move.promotion};
}

int move_to_policy_index(const Move& move, const core::BoardState& state) {
    const Move relative =
        state.side_to_move == core::Color::Black ? flip_move(move) : move;
    return move_table().index_of(relative);
}

Move policy_index_to_move(int index, const core::BoardState& state) {
    Move move = move_table().move_at(index);
    if (state.side_to_move == core::Color::Black) move = flip_move(move);
    if (!move.promotion && core::rank_of(move.to) ==
                               (state.side_to_move == core::Color::White ? 7 : 0)) {
        const auto piece = state.piece_at(move.from);
        if (piece && piece->type == PieceType::Pawn) {
            move.promotion = PieceType::Knight;
        }
    }
    return move;
}

}  // namespace steerchess::enc
