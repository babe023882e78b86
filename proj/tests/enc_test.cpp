#include <doctest.h>

#include <filesystem>
#include <set>

#include "steerchess/core/movegen.hpp"
#include "steerchess/core/notation.hpp"
#include "steerchess/enc/distribution.hpp"
#include "steerchess/enc/move_table.hpp"
#include "steerchess/enc/planes.hpp"
#include "steerchess/util/rng.hpp"

using namespace steerchess;
using namespace steerchess::core;
using namespace steerchess::enc;

namespace {

PositionHistory single_frame(const BoardState& state) {
    PositionHistory h;
    h.states.push_back(state);
    h.repetition_flags.push_back(false);
    return h;
}

BoardState mirror_colors(const BoardState& state) {
    BoardState out;
    for (Square s = 0; s < 64; ++s) {
        const auto p = state.piece_at(s);
        if (!p) continue;
        out.set_piece(make_square(file_of(s), 7 - rank_of(s)),
                      Piece{p->type, opposite(p->color)});
    }
    out.side_to_move = opposite(state.side_to_move);
    out.castling[kWhiteQueenside] = state.castling[kBlackQueenside];
    out.castling[kWhiteKingside] = state.castling[kBlackKingside];
    out.castling[kBlackQueenside] = state.castling[kWhiteQueenside];
    out.castling[kBlackKingside] = state.castling[kWhiteKingside];
    if (state.en_passant) {
        out.en_passant = make_square(file_of(*state.en_passant), 7 - rank_of(*state.en_passant));
    }
    out.halfmove_clock = state.halfmove_clock;
    out.fullmove_number = state.fullmove_number;
    return out;
}

std::vector<BoardState> playout_positions(int count, std::uint64_t seed) {
    std::vector<BoardState> out;
    auto rng = util::make_rng(seed);
    while (static_cast<int>(out.size()) < count) {
        BoardState s = start_position();
        const int plies = 2 + static_cast<int>(util::uniform_below(rng, 70));
        for (int i = 0; i < plies; ++i) {
            const auto moves = legal_moves(s);
            if (moves.empty()) break;
            s = apply_move_unchecked(s, moves[util::uniform_below(rng, moves.size())]);
        }
        if (!legal_moves(s).empty()) out.push_back(s);
    }
    return out;
}

// Independent re-enumeration of the documented ordering, kept separate from
// the production table so both must agree entry-for-entry.
std::vector<Move> enumerate_moves_independently() {
    std::vector<Move> all;
    for (int from = 0; from < 64; ++from) {
        const int ff = from % 8, fr = from / 8;
        // Queen-like targets grouped by direction index.
        const int dirs[8][2] = {{0, 1},  {1, 1},   {1, 0},  {1, -1},
                                {0, -1}, {-1, -1}, {-1, 0}, {-1, 1}};
        for (const auto& d : dirs) {
            for (int dist = 1; dist <= 7; ++dist) {
                const int tf = ff + d[0] * dist, tr = fr + d[1] * dist;
                if (tf < 0 || tf > 7 || tr < 0 || tr > 7) continue;
                all.push_back(Move{from, tr * 8 + tf, std::nullopt});
            }
        }
        const int knight[8][2] = {{1, 2},   {2, 1},   {2, -1}, {1, -2},
                                  {-1, -2}, {-2, -1}, {-2, 1}, {-1, 2}};
        for (const auto& d : knight) {
            const int tf = ff + d[0], tr = fr + d[1];
            if (tf < 0 || tf > 7 || tr < 0 || tr > 7) continue;
            all.push_back(Move{from, tr * 8 + tf, std::nullopt});
        }
        if (fr == 6) {
            for (int df = -1; df <= 1; ++df) {
                const int tf = ff + df;
                if (tf < 0 || tf > 7) continue;
                for (PieceType p :
                     {PieceType::Queen, PieceType::Rook, PieceType::Bishop}) {
                    all.push_back(Move{from, 56 + tf, p});
                }
            }
        }
    }
    return all;
}

}  // namespace

TEST_CASE("move table has exactly 1858 bijective entries") {
    const MoveTable& table = move_table();
    CHECK(table.size() == 1858);
    std::set<std::string> seen;
    for (int i = 0; i < table.size(); ++i) {
        const Move m = table.move_at(i);
        CHECK(table.index_of(m) == i);
        seen.insert(move_to_uci(m) +
                    (m.promotion ? std::string(1, piece_letter(*m.promotion)) : ""));
    }
    CHECK(seen.size() == 1858);
}

TEST_CASE("move table matches the independent enumeration") {
    const MoveTable& table = move_table();
    const auto expected = enumerate_moves_independently();
    REQUIRE(expected.size() == 1858);
    for (int i = 0; i < 1858; ++i) {
        CHECK(table.move_at(i) == expected[static_cast<std::size_t>(i)]);
    }
}

TEST_CASE("knight promotions share the plain seventh-to-eighth entry") {
    const MoveTable& table = move_table();
    const Move plain{parse_square("a7").value(), parse_square("a8").value(), std::nullopt};
    const Move knight{plain.from, plain.to, PieceType::Knight};
    CHECK(table.index_of(plain) == table.index_of(knight));
    // Decoding that index in a position where the mover is a pawn yields a
    // knight promotion.
    const BoardState promo = parse_fen("8/P5k1/8/8/8/8/8/4K3 w - - 0 1");
    const Move decoded = policy_index_to_move(table.index_of(plain), promo);
    CHECK(decoded.promotion == PieceType::Knight);
    // Same index in a rook-on-a7 position stays a plain move.
    const BoardState rook = parse_fen("8/R5k1/8/8/8/8/8/4K3 w - - 0 1");
    CHECK_FALSE(policy_index_to_move(table.index_of(plain), rook).promotion.has_value());
}

TEST_CASE("policy index respects the perspective flip") {
    const BoardState start = start_position();
    const int white_idx = move_to_policy_index(uci_to_move(start, "e2e4"), start);
    const BoardState after = apply_move(start, uci_to_move(start, "e2e4"));
    const int black_idx = move_to_policy_index(uci_to_move(after, "e7e5"), after);
    CHECK(white_idx == black_idx);
}

TEST_CASE("all legal moves are encodable and round-trip on random positions") {
    for (const BoardState& s : playout_positions(1000, 41)) {
        std::set<int> indices;
        for (const Move& m : legal_moves(s)) {
            const int idx = move_to_policy_index(m, s);
            CHECK(idx >= 0);
            CHECK(idx < 1858);
            CHECK(indices.insert(idx).second);  // distinct moves, distinct indices
            CHECK(policy_index_to_move(idx, s) == m);
        }
    }
}

TEST_CASE("start position planes") {
    const BoardState start = start_position();
    const InputPlanes planes = encode_position(single_frame(start), start);

    // Plane 0: our pawns, eight ones on the second rank.
    int ones = 0;
    for (int r = 0; r < 8; ++r) {
        for (int f = 0; f < 8; ++f) {
            if (planes.at(0, r, f) == 1.0f) {
                ++ones;
                CHECK(r == 1);
            } else {
                CHECK(planes.at(0, r, f) == 0.0f);
            }
        }
    }
    CHECK(ones == 8);

    // Frames 1..7 empty.
    for (int plane = 13; plane < 104; ++plane) {
        for (float v : planes.plane(plane)) CHECK(v == 0.0f);
    }
    // Castling planes all ones, side-to-move plane zero.
    for (int plane : {104, 105, 106, 107}) {
        for (float v : planes.plane(plane)) CHECK(v == 1.0f);
    }
    for (float v : planes.plane(108)) CHECK(v == 0.0f);
}

TEST_CASE("constant planes and halfmove normalization") {
    BoardState s = parse_fen("8/8/8/4k3/8/8/4K3/7R w - - 50 80");
    const InputPlanes planes = encode_position(single_frame(s), s);
    for (float v : planes.plane(109)) CHECK(std::abs(v - 50.0 / 99.0) <= 1e-7);
    for (float v : planes.plane(110)) CHECK(v == 0.0f);
    for (float v : planes.plane(111)) CHECK(v == 1.0f);
}

TEST_CASE("perspective involution") {
    for (const BoardState& s : playout_positions(100, 7)) {
        if (s.side_to_move != Color::White) continue;
        const BoardState mirrored = mirror_colors(s);
        const InputPlanes a = encode_position(single_frame(s), s);
        const InputPlanes b = encode_position(single_frame(mirrored), mirrored);
        // All piece/repetition/castling planes agree; plane 108 differs by
        // construction (side to move).
        for (int plane = 0; plane < 108; ++plane) {
            CHECK(a.plane(plane).size() == b.plane(plane).size());
            for (int i = 0; i < 64; ++i) {
                if (a.plane(plane)[i] != b.plane(plane)[i]) {
                    CAPTURE(plane);
                    CHECK(a.plane(plane)[i] == b.plane(plane)[i]);
                }
            }
        }
        for (int plane = 109; plane < 112; ++plane) {
            for (int i = 0; i < 64; ++i) CHECK(a.plane(plane)[i] == b.plane(plane)[i]);
        }
    }
}

TEST_CASE("encoding is deterministic and piece counts stay bounded") {
    for (const BoardState& s : playout_positions(50, 13)) {
        const auto h = single_frame(s);
        CHECK(encode_position(h, s) == encode_position(h, s));
        const InputPlanes planes = encode_position(h, s);
        // Piece-count ceilings: at most 8 pawn bits, 10 knight/bishop/rook
        // bits (promotions aside), 9 queens, exactly 1 king per side.
        const int ceilings[6] = {8, 10, 10, 10, 9, 1};
        for (int side = 0; side < 2; ++side) {
            for (int t = 0; t < 6; ++t) {
                int bits = 0;
                for (float v : planes.plane(side * 6 + t)) bits += v == 1.0f ? 1 : 0;
                CHECK(bits <= ceilings[t]);
            }
        }
    }
}

TEST_CASE("history frames beyond eight are rejected") {
    PositionHistory h;
    for (int i = 0; i < 9; ++i) {
        h.states.push_back(start_position());
        h.repetition_flags.push_back(false);
    }
    CHECK_THROWS_AS(encode_position(h, start_position()), std::invalid_argument);
}

TEST_CASE("plane tensor file round trip") {
    const BoardState start = start_position();
    const InputPlanes planes = encode_position(single_frame(start), start);
    const auto path = std::filesystem::temp_directory_path() / "steerchess_planes_test.bin";
    write_planes(path, planes);
    CHECK(read_planes(path) == planes);
    std::filesystem::remove(path);
}

TEST_CASE("mask_and_normalize") {
    const BoardState start = start_position();
    std::vector<float> logits(1858, 0.0f);
    const MoveDistribution uniform = mask_and_normalize(logits, start);
    CHECK(uniform.legal_indices.size() == 20);
    for (int idx : uniform.legal_indices) {
        CHECK(uniform.prob_at(idx) == doctest::Approx(0.05).epsilon(1e-12));
    }
    double total = 0.0;
    for (double p : uniform.probs) total += p;
    CHECK(std::abs(total - 1.0) <= 1e-9);

    // A very large logit dominates.
    const int e4 = move_to_policy_index(uci_to_move(start, "e2e4"), start);
    logits[static_cast<std::size_t>(e4)] = 1e4f;
    const MoveDistribution peaked = mask_and_normalize(logits, start);
    CHECK(peaked.prob_at(e4) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(peaked.argmax() == e4);

    // Normalization across random positions.
    for (const BoardState& s : playout_positions(100, 3)) {
        auto rng = util::make_rng(util::fnv1a64(position_key(s)));
        std::vector<float> random_logits(1858);
        for (float& v : random_logits) {
            v = static_cast<float>(util::uniform_unit(rng) * 4.0 - 2.0);
        }
        const MoveDistribution d = mask_and_normalize(random_logits, s);
        double sum = 0.0;
        for (double p : d.probs) sum += p;
        CHECK(std::abs(sum - 1.0) <= 1e-9);
    }

    // Terminal position is an error.
    const BoardState mate =
        parse_fen("rnb1kbnr/pppp1ppp/8/4p3/6Pq/5P2/PPPPP2P/RNBQKBNR w KQkq - 1 3");
    CHECK_THROWS_AS(mask_and_normalize(std::span<const float>(logits), mate),
                    std::invalid_argument);
}
