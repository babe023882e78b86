#include "steerchess/enc/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "steerchess/core/movegen.hpp"

namespace steerchess::enc {

int MoveDistribution::argmax() const {
    int best = -1;
    double best_p = -1.0;
    for (int idx : legal_indices) {
        const double p = probs[static_cast<std::size_t>(idx)];
        if (p > best_p) {
            best_p = p;
            best = idx;
        }
    }
    return best;
}

namespace {

template <typename T>
MoveDistribution mask_and_normalize_impl(std::span<const T> logits,
                                         const core::BoardState& state) {
    if (logits.size() != MoveTable::kSize) {
        throw std::invalid_argument("expected 1858 logits");
    }
    const auto moves = core::legal_moves(state);
    if (moves.empty()) {
        throw std::invalid_argument("mask_and_normalize: terminal position");
    }

    MoveDistribution out;
    out.probs.assign(MoveTable::kSize, 0.0);
    out.legal_indices.reserve(moves.size());
    for (const core::Move& m : moves) {
        out.legal_indices.push_back(move_to_policy_index(m, state));
    }
    std::sort(out.legal_indices.begin(), out.legal_indices.end());

    double max_logit = -std::numeric_limits<double>::infinity();
    for (int idx : out.legal_indices) {
        const double v = static_cast<double>(logits[static_cast<std::size_t>(idx)]);
        if (!std::isfinite(v)) throw std::invalid_argument("non-finite logit");
        max_logit = std::max(max_logit, v);
    }
    double total = 0.0;
    for (int idx : out.legal_indices) {
        const double e =
            std::exp(static_cast<double>(logits[static_cast<std::size_t>(idx)]) - max_logit);
        out.probs[static_cast<std::size_t>(idx)] = e;
        total += e;
    }
    for (int idx : out.legal_indices) {
        out.probs[static_cast<std::size_t>(idx)] /= total;
    }
    return out;
}

}  // namespace

MoveDistribution mask_and_normalize(std::span<const float> logits,
                                    const core::BoardState& state) {
    return mask_and_normalize_impl(logits, state);
}

MoveDistribution mask_and_normalize(std::span<const double> logits,
                                    const core::BoardState& state) {
    return mask_and_normalize_impl(logits, state);
}

}  // namespace steerchess::enc
