#include "steerchess/core/termination.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "steerchess/core/movegen.hpp"
#include "steerchess/util/text.hpp"

namespace steerchess::core {

PositionHistory history_from_game(const std::vector<BoardState>& positions,
                                  std::size_t max_frames) {
    if (positions.empty()) throw std::invalid_argument("history_from_game: empty game");
    PositionHistory h;
    std::map<std::string, int> seen;
    std::vector<bool> flags(positions.size(), false);
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const std::string key = position_key(positions[i]);
        flags[i] = seen[key]++ > 0;
    }
    const std::size_t n = std::min(max_frames, positions.size());
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t idx = positions.size() - 1 - k;
        h.states.push_back(positions[idx]);
        h.repetition_flags.push_back(flags[idx]);
    }
    return h;
}

std::string_view termination_label(TerminationKind kind) {
    switch (kind) {
        case TerminationKind::Checkmate: return "Checkmate";
        case TerminationKind::Stalemate: return "Stalemate";
        case TerminationKind::InsufficientMaterial: return "Insufficient material";
        case TerminationKind::ThreefoldRepetition: return "Threefold repetition";
        case TerminationKind::FivefoldRepetition: return "Fivefold repetition";
        case TerminationKind::FiftyMoves: return "Fifty moves";
        case TerminationKind::SeventyFiveMoves: return "Seventy-five moves";
        case TerminationKind::Resignation: return "Resigned";
        case TerminationKind::TimeForfeit: return "Time forfeit";
        case TerminationKind::DrawAgreement: return "Draw by agreement";
        case TerminationKind::Abandoned: return "Abandoned";
        case TerminationKind::Other: return "Other";
    }
    return "Other";
}

std::optional<TerminationKind> termination_from_label(std::string_view label) {
    static const std::pair<std::string_view, TerminationKind> table[] = {
        {"Checkmate", TerminationKind::Checkmate},
        {"Stalemate", TerminationKind::Stalemate},
        {"Insufficient material", TerminationKind::InsufficientMaterial},
        {"Threefold repetition", TerminationKind::ThreefoldRepetition},
        {"Fivefold repetition", TerminationKind::FivefoldRepetition},
        {"Fifty moves", TerminationKind::FiftyMoves},
        {"Seventy-five moves", TerminationKind::SeventyFiveMoves},
        {"Resigned", TerminationKind::Resignation},
        {"Time forfeit", TerminationKind::TimeForfeit},
        {"Draw by agreement", TerminationKind::DrawAgreement},
        {"Abandoned", TerminationKind::Abandoned},
        {"Other", TerminationKind::Other},
    };
    for (const auto& [name, kind] : table) {
        if (name == label) return kind;
    }
    return std::nullopt;
}

bool is_forced_draw(TerminationKind kind) {
    return kind == TerminationKind::Stalemate ||
           kind == TerminationKind::InsufficientMaterial ||
           kind == TerminationKind::FivefoldRepetition ||
           kind == TerminationKind::SeventyFiveMoves;
}

bool is_insufficient_material(const BoardState& state) {
    int knights = 0, light_bishops = 0, dark_bishops = 0;
    for (Square s = 0; s < 64; ++s) {
        const auto p = state.piece_at(s);
        if (!p) continue;
        switch (p->type) {
            case PieceType::Pawn:
            case PieceType::Rook:
            case PieceType::Queen:
                return false;
            case PieceType::Knight: ++knights; break;
            case PieceType::Bishop:
                (((file_of(s) + rank_of(s)) & 1) ? ++light_bishops : ++dark_bishops);
                break;
            case PieceType::King: break;
        }
    }
    const int minors = knights + light_bishops + dark_bishops;
    if (minors == 0) return true;                      // K vs K
    if (minors == 1) return true;                      // K+minor vs K
    if (knights == 0 && (light_bishops == 0 || dark_bishops == 0)) return true;
    return false;                                      // enough to mate in theory
}

namespace {

std::optional<Color> winner_from_result(std::string_view result_tag) {
    if (result_tag == "1-0") return Color::White;
    if (result_tag == "0-1") return Color::Black;
    return std::nullopt;
}

int max_repetition_count(const std::vector<BoardState>& positions) {
    std::map<std::string, int> counts;
    int best = 0;
    for (const BoardState& s : positions) {
        best = std::max(best, ++counts[position_key(s)]);
    }
    return best;
}

}  // namespace

TerminationReport detect_termination(const BoardState& final_state,
                                     const std::vector<BoardState>& positions,
                                     std::string_view last_pgn_comment,
                                     std::string_view result_tag,
                                     std::string_view termination_header) {
    TerminationReport report;
    const std::optional<Color> result_winner = winner_from_result(result_tag);
    const bool result_is_draw = result_tag == "1/2-1/2";

    // Rule-based outcome from the board alone.
    const bool no_moves = legal_moves(final_state).empty();
    const int reps = positions.empty() ? 0 : max_repetition_count(positions);
    if (no_moves) {
        report.rule_outcome = in_check(final_state) ? TerminationKind::Checkmate
                                                    : TerminationKind::Stalemate;
    } else if (is_insufficient_material(final_state)) {
        report.rule_outcome = TerminationKind::InsufficientMaterial;
    } else if (reps >= 5) {
        report.rule_outcome = TerminationKind::FivefoldRepetition;
    } else if (final_state.halfmove_clock >= 150) {
        report.rule_outcome = TerminationKind::SeventyFiveMoves;
    } else if (reps >= 3) {
        report.rule_outcome = TerminationKind::ThreefoldRepetition;
    } else if (final_state.halfmove_clock >= 100) {
        report.rule_outcome = TerminationKind::FiftyMoves;
    }

    // Metadata signals.
    const bool header_time = util::contains_insensitive(termination_header, "time forfeit");
    const bool header_abandoned = util::contains_insensitive(termination_header, "abandoned");
    const bool header_rules = util::contains_insensitive(termination_header, "rules infraction");
    const bool comment_resign = util::contains_insensitive(last_pgn_comment, "resign");
    const bool comment_time = util::contains_insensitive(last_pgn_comment, "on time") ||
                              util::contains_insensitive(last_pgn_comment, "forfeits");
    const bool comment_agreement = util::contains_insensitive(last_pgn_comment, "agreement") ||
                                   util::contains_insensitive(last_pgn_comment, "mutual");

    TerminationOutcome out;
    if (report.rule_outcome == TerminationKind::Checkmate) {
        out.kind = TerminationKind::Checkmate;
        // Mate is delivered by the side that just moved.
        out.winner = opposite(final_state.side_to_move);
        if (result_winner && result_winner != out.winner) report.result_tag_mismatch = true;
        if (!result_winner && result_tag != "*") report.result_tag_mismatch = true;
    } else if (report.rule_outcome == TerminationKind::Stalemate ||
               report.rule_outcome == TerminationKind::FivefoldRepetition ||
               report.rule_outcome == TerminationKind::SeventyFiveMoves ||
               (report.rule_outcome == TerminationKind::InsufficientMaterial &&
                !result_winner)) {
        // Claim-free draws end the game regardless of the result tag.
        out.kind = *report.rule_outcome;
        if (result_winner) report.result_tag_mismatch = true;
    } else if (result_winner) {
        // Decisive result without mate on the board: the clock or a
        // resignation ended the game.
        if (header_time || comment_time) {
            out.kind = TerminationKind::TimeForfeit;
        } else if (header_abandoned) {
            out.kind = TerminationKind::Abandoned;
        } else if (header_rules) {
            out.kind = TerminationKind::Other;
        } else {
            out.kind = TerminationKind::Resignation;
        }
        out.winner = result_winner;
    } else if (result_is_draw || result_tag == "*") {
        if (report.rule_outcome) {
            out.kind = *report.rule_outcome;
        } else if (header_time || comment_time) {
            // Draw on time against bare king.
            out.kind = TerminationKind::TimeForfeit;
        } else if (header_abandoned) {
            out.kind = TerminationKind::Abandoned;
        } else if (result_is_draw || comment_agreement) {
            out.kind = TerminationKind::DrawAgreement;
        } else {
            out.kind = TerminationKind::Other;
        }
    } else {
        out.kind = TerminationKind::Other;
    }

    // The resignation comment refines a decisive non-mate outcome.
    if (out.kind == TerminationKind::Resignation && !comment_resign && header_abandoned) {
        out.kind = TerminationKind::Abandoned;
    }

    report.outcome = out;
    return report;
}

}  // namespace steerchess::core
