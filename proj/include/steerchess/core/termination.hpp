#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "steerchess/core/board.hpp"

namespace steerchess::core {

// Up to the 8 most recent positions, most recent first, with a per-state
// flag marking positions already seen earlier in the game.
struct PositionHistory {
    std::vector<BoardState> states;
    std::vector<bool> repetition_flags;
};

// Builds the history window ending at `positions.back()`. `positions` is the
// full game in play order (start position first).
PositionHistory history_from_game(const std::vector<BoardState>& positions,
                                  std::size_t max_frames = 8);

enum class TerminationKind {
    Checkmate,
    Stalemate,
    InsufficientMaterial,
    ThreefoldRepetition,
    FivefoldRepetition,
    FiftyMoves,
    SeventyFiveMoves,
    Resignation,
    TimeForfeit,
    DrawAgreement,
    Abandoned,
    Other,
};

std::string_view termination_label(TerminationKind kind);
std::optional<TerminationKind> termination_from_label(std::string_view label);

struct TerminationOutcome {
    TerminationKind kind = TerminationKind::Other;
    std::optional<Color> winner;
};

struct TerminationReport {
    // What the rules alone decide from the final position and history;
    // absent when the board is not terminal and no automatic draw applies.
    std::optional<TerminationKind> rule_outcome;
    // Rule outcome merged with PGN metadata.
    TerminationOutcome outcome;
    // Result tag disagrees with the board (e.g. "0-1" after White mates).
    bool result_tag_mismatch = false;
};

// Stalemate, insufficient material, fivefold repetition or the
// seventy-five-move rule: the claim-free draws.
bool is_forced_draw(TerminationKind kind);

bool is_insufficient_material(const BoardState& state);

// `positions` is the full game in play order including the final state.
// `result_tag` is the PGN Result ("1-0", "0-1", "1/2-1/2", "*").
TerminationReport detect_termination(const BoardState& final_state,
                                     const std::vector<BoardState>& positions,
                                     std::string_view last_pgn_comment,
                                     std::string_view result_tag,
                                     std::string_view termination_header = {});

}  // namespace steerchess::core
