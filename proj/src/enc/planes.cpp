#include "steerchess/enc/planes.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace steerchess::enc {

using core::BoardState;
using core::Color;
using core::PieceType;
using core::Square;

namespace {

constexpr char kMagic[4] = {'S', 'C', 'P', 'L'};
constexpr std::uint32_t kVersion = 1;

void fill_plane(InputPlanes& out, int plane, float value) {
    auto span = out.plane(plane);
    std::fill(span.begin(), span.end(), value);
}

}  // namespace

InputPlanes encode_position(const core::PositionHistory& history,
                            const core::BoardState& state) {
    if (history.states.size() > 8) {
        throw std::invalid_argument("encode_position: history longer than 8 frames");
    }
    if (history.states.size() != history.repetition_flags.size()) {
        throw std::invalid_argument("encode_position: repetition flags misaligned");
    }
    if (!history.states.empty() && !(history.states.front() == state)) {
        throw std::invalid_argument("encode_position: history[0] does not match state");
    }

    InputPlanes out;
    const Color us = state.side_to_move;
    const bool flip = us == Color::Black;

    for (std::size_t frame = 0; frame < history.states.size(); ++frame) {
        const BoardState& frame_state = history.states[frame];
        const int base = static_cast<int>(frame) * 13;
        for (Square s = 0; s < 64; ++s) {
            const auto piece = frame_state.piece_at(s);
            if (!piece) continue;
            const int rank = flip ? 7 - core::rank_of(s) : core::rank_of(s);
            const int file = core::file_of(s);
            const int side_offset = piece->color == us ? 0 : 6;
            const int plane = base + side_offset + static_cast<int>(piece->type);
            out.at(plane, rank, file) = 1.0f;
        }
        if (history.repetition_flags[frame]) fill_plane(out, base + 12, 1.0f);
    }

    const auto right = [&](core::CastlingRight white_right, core::CastlingRight black_right) {
        return state.castling[static_cast<std::size_t>(us == Color::White ? white_right
                                                                          : black_right)];
    };
    if (right(core::kWhiteQueenside, core::kBlackQueenside)) fill_plane(out, 104, 1.0f);
    if (right(core::kWhiteKingside, core::kBlackKingside)) fill_plane(out, 105, 1.0f);
    if (right(core::kBlackQueenside, core::kWhiteQueenside)) fill_plane(out, 106, 1.0f);
    if (right(core::kBlackKingside, core::kWhiteKingside)) fill_plane(out, 107, 1.0f);

    if (us == Color::Black) fill_plane(out, 108, 1.0f);
    fill_plane(out, 109, static_cast<float>(std::min(state.halfmove_clock, 99)) / 99.0f);
    // Plane 110 stays zero; plane 111 is all ones.
    fill_plane(out, 111, 1.0f);
    return out;
}

void write_planes(const std::filesystem::path& path, const InputPlanes& planes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(kMagic, 4);
    const std::uint32_t header[4] = {kVersion, InputPlanes::kPlanes, 8, 8};
    out.write(reinterpret_cast<const char*>(header), sizeof(header));
    static_assert(sizeof(float) == 4);
    out.write(reinterpret_cast<const char*>(planes.values.data()),
              static_cast<std::streamsize>(planes.values.size() * sizeof(float)));
    if (!out) throw std::runtime_error("short write to " + path.string());
}

InputPlanes read_planes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0) {
        throw std::runtime_error("bad magic in " + path.string());
    }
    std::uint32_t header[4];
    in.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!in || header[0] != kVersion || header[1] != InputPlanes::kPlanes ||
        header[2] != 8 || header[3] != 8) {
        throw std::runtime_error("bad tensor header in " + path.string());
    }
    InputPlanes planes;
    in.read(reinterpret_cast<char*>(planes.values.data()),
            static_cast<std::streamsize>(planes.values.size() * sizeof(float)));
    if (!in) throw std::runtime_error("truncated tensor file " + path.string());
    return planes;
}

}  // namespace steerchess::enc
