#pragma once

#include <span>
#include <vector>

#include "steerchess/core/board.hpp"
#include "steerchess/enc/move_table.hpp"

namespace steerchess::enc {

// Probabilities over the 1858-way policy space, zero off the legal set.
struct MoveDistribution {
    std::vector<double> probs;       // size 1858
    std::vector<int> legal_indices;  // ascending

    double prob_at(int index) const { return probs[static_cast<std::size_t>(index)]; }

    // Argmax with ties broken by lowest policy index.
    int argmax() const;
};

// Softmax restricted to the legal moves of `state`. Throws
// std::invalid_argument on non-finite logits or terminal positions.
MoveDistribution mask_and_normalize(std::span<const float> logits,
                                    const core::BoardState& state);
MoveDistribution mask_and_normalize(std::span<const double> logits,
                                    const core::BoardState& state);

}  // namespace steerchess::enc
