#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>

#include "steerchess/core/board.hpp"
#include "steerchess/core/termination.hpp"

namespace steerchess::enc {

// 112 x 8 x 8 network input. Layout:
//   planes 0..103   8 history frames x 13 planes each
//                   (6 our pieces P,N,B,R,Q,K, 6 their pieces, 1 repetition)
//   planes 104..107 castling: us-queenside, us-kingside, them-queenside,
//                   them-kingside
//   plane 108       side to move is black
//   plane 109       halfmove clock / 99
//   plane 110       all zeros
//   plane 111       all ones
struct InputPlanes {
    static constexpr int kPlanes = 112;
    static constexpr int kSquares = 64;

    std::array<float, kPlanes * kSquares> values{};

    float& at(int plane, int rank, int file) {
        return values[static_cast<std::size_t>(plane * kSquares + rank * 8 + file)];
    }
    float at(int plane, int rank, int file) const {
        return values[static_cast<std::size_t>(plane * kSquares + rank * 8 + file)];
    }
    std::span<float, kSquares> plane(int p) {
        return std::span<float, kSquares>(values.data() + p * kSquares, kSquares);
    }
    std::span<const float, kSquares> plane(int p) const {
        return std::span<const float, kSquares>(values.data() + p * kSquares, kSquares);
    }

    bool operator==(const InputPlanes&) const = default;
};

// Encodes from the current player's perspective: when black is to move the
// board is rank-flipped and colors are swapped, so the mover always plays
// from the bottom. Missing history frames stay zero. `history.states[0]`
// must match `state`; throws std::invalid_argument otherwise or when the
// history holds more than 8 frames.
InputPlanes encode_position(const core::PositionHistory& history,
                            const core::BoardState& state);

// Little-endian f32 tensor file with a small header, for test fixtures.
void write_planes(const std::filesystem::path& path, const InputPlanes& planes);
InputPlanes read_planes(const std::filesystem::path& path);

}  // namespace steerchess::enc
