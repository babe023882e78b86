#pragma once

// Brute-force legal move oracle, written independently of the production
// generator: it enumerates every (from, to, promotion) triple and validates
// each against per-piece geometry predicates, then simulates the move and
// checks king safety with its own attack scan. Test-only.

#include <cstdint>
#include <optional>
#include <vector>

#include "steerchess/core/board.hpp"

namespace steerchess::oracle {

std::vector<core::Move> oracle_legal_moves(const core::BoardState& state);

std::uint64_t oracle_perft(const core::BoardState& state, int depth);

}  // namespace steerchess::oracle
