#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "steerchess/core/board.hpp"

namespace steerchess::enc {

struct PolicyIndex {
    int value = 0;
};

// Bijection between the 1858 current-player-relative UCI move tokens and
// policy indices. Generation order: from-squares a1..h8; per square queen-ray
// targets (N, NE, E, SE, S, SW, W, NW, increasing distance), then knight
// targets clockwise from NNE, then promotion targets (capture-left, push,
// capture-right) x (Q, R, B). Knight promotions share the plain
// seventh-to-eighth-rank pawn entry.
class MoveTable {
public:
    static constexpr int kSize = 1858;

    MoveTable();

    int size() const { return static_cast<int>(entries_.size()); }

    // `move` must already be current-player-relative (white perspective).
    // Knight promotions and plain moves share an entry.
    int index_of(const core::Move& move) const;

    // Inverse map; promotion is Q/R/B for promotion entries, absent for
    // plain entries (including the shared knight-promotion ones).
    const core::Move& move_at(int index) const;

    bool contains(const core::Move& move) const;

private:
    static std::uint32_t key(const core::Move& move);
    std::vector<core::Move> entries_;
    std::unordered_map<std::uint32_t, int> index_;
};

const MoveTable& move_table();

// Rank-mirrors a move for the black player's perspective.
core::Move flip_move(const core::Move& move);

// Policy index of a legal move in `state`, applying the bottom-of-board
// perspective flip when black is to move.
int move_to_policy_index(const core::Move& move, const core::BoardState& state);

// Inverse lookup in the context of `state`: unflips the perspective and
// fills in the knight promotion when the mover is a pawn reaching the last
// rank through a plain entry.
core::Move policy_index_to_move(int index, const core::BoardState& state);

}  // namespace steerchess::enc
