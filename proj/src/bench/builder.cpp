#include "steerchess/bench/builder.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "steerchess/core/movegen.hpp"
#include "steerchess/eval/metrics.hpp"
#include "steerchess/core/notation.hpp"
#include "steerchess/sampling/unimax.hpp"
#include "steerchess/util/rng.hpp"
#include "steerchess/util/text.hpp"

namespace steerchess::bench {

namespace {

using core::BoardState;

// Time-control category from the Lichess event name ("Rated Blitz game"),
// falling back to the clock-based estimate.
std::optional<std::string> category_of(const pgn::Stage1Record& rec) {
    for (const char* name :
         {"UltraBullet", "Bullet", "Blitz", "Rapid", "Classical", "Correspondence"}) {
        if (util::contains_insensitive(rec.event, name)) return std::string(name);
    }
    if (rec.tc_delay && rec.tc_increment) {
        return prompt::time_control_category(*rec.tc_delay, *rec.tc_increment);
    }
    return std::nullopt;
}

prompt::MetadataContext context_of(const GameSource& game, int elo_shift) {
    const pgn::Stage1Record& s1 = game.record.stage1;
    prompt::MetadataContext ctx;
    if (s1.white_elo) ctx.white_elo = *s1.white_elo + elo_shift;
    if (s1.black_elo) ctx.black_elo = *s1.black_elo + elo_shift;
    if (!s1.white_title.empty()) ctx.white_title = s1.white_title;
    if (!s1.black_title.empty()) ctx.black_title = s1.black_title;
    if (!s1.white.empty()) ctx.white_alias = s1.white;
    if (!s1.black.empty()) ctx.black_alias = s1.black;
    ctx.tc_base_seconds = s1.tc_delay;
    ctx.tc_increment_seconds = s1.tc_increment;
    ctx.rated = util::contains_insensitive(s1.event, "rated");
    ctx.time_control_category = category_of(s1);
    if (!s1.utc_date.empty()) ctx.date = s1.utc_date;
    if (!s1.opening.empty() && s1.opening != "?") ctx.opening_name = s1.opening;
    if (!s1.result.empty()) ctx.result = s1.result;
    return ctx;
}

// Renders with the first template (in seeded order) whose fields are all
// available; counts retries.
std::optional<std::string> render_with_retry(
    const std::vector<const prompt::PromptTemplate*>& candidates,
    const prompt::MetadataContext& ctx, std::mt19937_64& rng, BuildCounters* counters) {
    if (candidates.empty()) return std::nullopt;
    std::vector<std::size_t> order(candidates.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        const std::size_t j =
            i + util::uniform_below(rng, order.size() - i);
        std::swap(order[i], order[j]);
    }
    for (std::size_t idx : order) {
        try {
            return prompt::render(*candidates[idx], ctx);
        } catch (const std::invalid_argument&) {
            if (counters) ++counters->template_retries;
        }
    }
    return std::nullopt;
}

std::string game_key(std::size_t ordinal) { return std::to_string(ordinal); }

BenchmarkPosition position_at(const GameSource& game, std::size_t ordinal,
                              std::size_t ply, const std::vector<BoardState>& boards,
                              std::string prompt_text, int elo_shift) {
    const pgn::Stage1Record& s1 = game.record.stage1;
    BenchmarkPosition pos;
    pos.id = "g" + std::to_string(ordinal) + "-p" + std::to_string(ply);
    pos.fen = core::to_fen(boards[ply]);
    pos.history_uci.assign(game.uci_moves.begin(),
                           game.uci_moves.begin() + static_cast<std::ptrdiff_t>(ply));
    pos.prompt = std::move(prompt_text);
    pos.target_uci = game.uci_moves[ply];
    if (s1.white_elo) pos.white_elo = *s1.white_elo + elo_shift;
    if (s1.black_elo) pos.black_elo = *s1.black_elo + elo_shift;
    if (!s1.time_control_name.empty() && s1.time_control_name != "-") {
        pos.time_control = s1.time_control_name;
    }
    pos.ply_index = static_cast<int>(ply);
    if (ply >= 2 && game.clocks.size() > ply - 2 && game.clocks[ply - 2]) {
        pos.active_clock_s = game.clocks[ply - 2];
    } else if (s1.tc_delay) {
        pos.active_clock_s = s1.tc_delay;
    }
    return pos;
}

std::vector<BoardState> boards_of(const GameSource& game) {
    std::vector<BoardState> boards;
    boards.reserve(game.uci_moves.size() + 1);
    boards.push_back(core::start_position());
    for (const std::string& uci : game.uci_moves) {
        boards.push_back(
            core::apply_move_unchecked(boards.back(), core::uci_to_move(boards.back(), uci)));
    }
    return boards;
}

bool passes_constraints(const GameSource& game, const BuildOptions& options,
                        BuildCounters* counters) {
    const pgn::Stage1Record& s1 = game.record.stage1;
    const auto skip = [&] {
        if (counters) ++counters->skipped_constraints;
        return false;
    };
    if (options.require_elo && (!s1.white_elo || !s1.black_elo)) return skip();
    if (options.min_mean_elo &&
        (!game.record.mean_elo || *game.record.mean_elo < *options.min_mean_elo)) {
        return skip();
    }
    if (options.max_mean_elo &&
        (!game.record.mean_elo || *game.record.mean_elo > *options.max_mean_elo)) {
        return skip();
    }
    if (options.source_month) {
        if (s1.year != options.source_month->first ||
            s1.month != options.source_month->second) {
            return skip();
        }
    }
    if (!options.player_names.empty()) {
        const bool listed =
            std::find(options.player_names.begin(), options.player_names.end(), s1.white) !=
                options.player_names.end() ||
            std::find(options.player_names.begin(), options.player_names.end(), s1.black) !=
                options.player_names.end();
        if (!listed) return skip();
    }
    return true;
}

void apply_size_cap(std::vector<BenchmarkPosition>& positions,
                    const std::optional<std::int64_t>& cap) {
    if (cap && static_cast<std::int64_t>(positions.size()) > *cap) {
        positions.resize(static_cast<std::size_t>(*cap));
    }
}

}  // namespace

std::optional<BenchmarkKind> benchmark_kind_from_name(const std::string& name) {
    static const std::pair<const char*, BenchmarkKind> table[] = {
        {"LOB-P", BenchmarkKind::LobP},   {"LOB-C", BenchmarkKind::LobC},
        {"LIF", BenchmarkKind::Lif},      {"LIF-D", BenchmarkKind::LifD},
        {"LIF-T10", BenchmarkKind::LifT10}, {"LGB", BenchmarkKind::Lgb},
        {"LIF-Aux", BenchmarkKind::LifAux}, {"LGB-Aux", BenchmarkKind::LgbAux},
        {"M1-S", BenchmarkKind::M1S},
    };
    for (const auto& [key, kind] : table) {
        if (name == key) return kind;
    }
    return std::nullopt;
}

std::string benchmark_kind_name(BenchmarkKind kind) {
    switch (kind) {
        case BenchmarkKind::LobP: return "LOB-P";
        case BenchmarkKind::LobC: return "LOB-C";
        case BenchmarkKind::Lif: return "LIF";
        case BenchmarkKind::LifD: return "LIF-D";
        case BenchmarkKind::LifT10: return "LIF-T10";
        case BenchmarkKind::Lgb: return "LGB";
        case BenchmarkKind::LifAux: return "LIF-Aux";
        case BenchmarkKind::LgbAux: return "LGB-Aux";
        case BenchmarkKind::M1S: return "M1-S";
    }
    return "LIF";
}

GameSource source_from_stage2(const pgn::Stage2Record& rec) {
    GameSource out;
    const pgn::ParsedGame parsed = pgn::parse_game(rec.stage1);
    out.record = rec;
    out.uci_moves = parsed.uci_moves;
    out.clocks = parsed.clocks;
    // SAN derived from the replay for prompt text.
    BoardState state = core::start_position();
    out.san_moves.reserve(out.uci_moves.size());
    for (const std::string& uci : out.uci_moves) {
        const core::Move move = core::uci_to_move(state, uci);
        out.san_moves.push_back(core::move_to_san(state, move));
        state = core::apply_move_unchecked(state, move);
    }
    return out;
}

std::vector<BenchmarkPosition> build_lob(const std::vector<GameSource>& games,
                                         const openings::OpeningDatabase& db,
                                         LobMode mode,
                                         const prompt::TemplateCatalog& templates,
                                         const BuildOptions& options,
                                         BuildCounters* counters) {
    // Opening templates: instruct templates that mention the opening name.
    std::vector<const prompt::PromptTemplate*> candidates;
    for (const auto* t : templates.family(prompt::TemplateFamily::Instruct)) {
        if (t->body.find("{opening}") != std::string::npos) candidates.push_back(t);
    }

    std::vector<BenchmarkPosition> out;
    for (std::size_t ordinal = 0; ordinal < games.size(); ++ordinal) {
        const GameSource& game = games[ordinal];
        if (counters) ++counters->games_in;
        if (!passes_constraints(game, options, counters)) continue;

        const pgn::Stage1Record& s1 = game.record.stage1;
        const auto match =
            db.match(s1.eco, s1.opening, options.opening_match_threshold);
        if (!match) {
            if (counters) ++counters->skipped_unmatched_opening;
            continue;
        }
        const auto prefix = openings::canonical_prefix(*match->entry, game.uci_moves);
        if (prefix.empty()) {
            if (counters) ++counters->skipped_unmatched_opening;
            continue;
        }

        const auto boards = boards_of(game);
        auto rng = util::make_rng(options.seed, game_key(ordinal));
        if (counters) ++counters->games_used;

        for (std::size_t ply = 0; ply < prefix.size(); ++ply) {
            prompt::MetadataContext ctx = context_of(game, options.elo_shift);
            ctx.opening_name = match->entry->name;
            if (mode == LobMode::Partial) {
                // Moves up to the current position only.
                ctx.opening_moves_san.assign(
                    game.san_moves.begin(),
                    game.san_moves.begin() + static_cast<std::ptrdiff_t>(ply));
            } else {
                // The canonical continuation of the matched opening.
                BoardState state = core::start_position();
                ctx.opening_moves_san.clear();
                for (const std::string& uci : prefix) {
                    const core::Move move = core::uci_to_move(state, uci);
                    ctx.opening_moves_san.push_back(core::move_to_san(state, move));
                    state = core::apply_move_unchecked(state, move);
                }
            }
            ctx.side = boards[ply].side_to_move;
            const auto text = render_with_retry(candidates, ctx, rng, counters);
            if (!text) continue;
            out.push_back(
                position_at(game, ordinal, ply, boards, *text, options.elo_shift));
            if (counters) ++counters->positions;
        }
    }
    apply_size_cap(out, options.size_cap);
    return out;
}

std::vector<BenchmarkPosition> build_lif(const std::vector<GameSource>& games,
                                         const prompt::TemplateCatalog& templates,
                                         const BuildOptions& options,
                                         BuildCounters* counters) {
    const auto pretrain = templates.family(prompt::TemplateFamily::Pretrain);
    const auto instruct = templates.family(prompt::TemplateFamily::Instruct);

    std::vector<BenchmarkPosition> out;
    for (std::size_t ordinal = 0; ordinal < games.size(); ++ordinal) {
        const GameSource& game = games[ordinal];
        if (counters) ++counters->games_in;
        if (!passes_constraints(game, options, counters)) continue;
        if (game.uci_moves.empty()) continue;

        auto rng = util::make_rng(options.seed, game_key(ordinal));
        const auto count = std::min<std::int64_t>(options.positions_per_game,
                                                  static_cast<std::int64_t>(game.uci_moves.size()));
        const auto plies = sampling::sample_plies(
            static_cast<std::int64_t>(game.uci_moves.size()), count, rng);

        prompt::MetadataContext ctx = context_of(game, options.elo_shift);
        // Opening moves available to templates that want them.
        const std::size_t opening_len = std::min<std::size_t>(game.san_moves.size(), 6);
        ctx.opening_moves_san.assign(game.san_moves.begin(),
                                     game.san_moves.begin() +
                                         static_cast<std::ptrdiff_t>(opening_len));

        const auto family = prompt::choose_family(rng);
        const auto& candidates =
            family == prompt::TemplateFamily::Pretrain ? pretrain : instruct;
        auto text = render_with_retry(candidates, ctx, rng, counters);
        if (!text) {
            // The other family may still have a template that fits.
            const auto& other =
                family == prompt::TemplateFamily::Pretrain ? instruct : pretrain;
            text = render_with_retry(other, ctx, rng, counters);
        }
        if (!text) continue;
        if (counters) ++counters->games_used;

        const auto boards = boards_of(game);
        for (std::int64_t ply : plies) {
            out.push_back(position_at(game, ordinal, static_cast<std::size_t>(ply), boards,
                                      *text, options.elo_shift));
            if (counters) ++counters->positions;
        }
    }
    apply_size_cap(out, options.size_cap);
    return out;
}

std::vector<BenchmarkPosition> build_lgb(const std::vector<GameSource>& games,
                                         const prompt::TemplateCatalog& templates,
                                         BuildOptions options,
                                         BuildCounters* counters) {
    options.elo_shift = options.elo_shift == 0 ? 500 : options.elo_shift;
    options.require_elo = true;
    return build_lif(games, templates, options, counters);
}

std::optional<double> move_delay_seconds(const GameSource& game, std::size_t ply) {
    if (ply >= game.clocks.size() || !game.clocks[ply]) return std::nullopt;
    const int after = *game.clocks[ply];
    const int increment = game.record.stage1.tc_increment.value_or(0);
    if (ply >= 2) {
        if (!game.clocks[ply - 2]) return std::nullopt;
        const int before = *game.clocks[ply - 2];
        return std::max(0.0, static_cast<double>(before - after + increment));
    }
    if (!game.record.stage1.tc_delay) return std::nullopt;
    return std::max(0.0, static_cast<double>(*game.record.stage1.tc_delay - after));
}

void build_aux_variant(std::vector<BenchmarkPosition>& positions,
                       const std::vector<GameSource>& games) {
    for (BenchmarkPosition& pos : positions) {
        // Ids have the shape g<ordinal>-p<ply>.
        const auto dash = pos.id.find("-p");
        if (dash == std::string::npos || pos.id.empty() || pos.id[0] != 'g') {
            throw std::invalid_argument("build_aux_variant: unrecognized position id " +
                                        pos.id);
        }
        const std::size_t ordinal = std::stoul(pos.id.substr(1, dash - 1));
        const std::size_t ply = std::stoul(pos.id.substr(dash + 2));
        if (ordinal >= games.size()) {
            throw std::invalid_argument("build_aux_variant: position id out of range");
        }
        const GameSource& game = games[ordinal];

        prompt::MetadataContext ctx = context_of(game, 0);
        // Clock sentence only when the previous delays and clocks are known.
        const auto active_delay = ply >= 2 ? move_delay_seconds(game, ply - 2) : std::nullopt;
        const auto opponent_delay = ply >= 1 ? move_delay_seconds(game, ply - 1) : std::nullopt;
        if (active_delay && opponent_delay && ply >= 2 && game.clocks[ply - 2] &&
            game.clocks[ply - 1]) {
            prompt::ClockInfo clocks;
            clocks.active_last_move_s = static_cast<long>(*active_delay);
            clocks.opponent_last_move_s = static_cast<long>(*opponent_delay);
            clocks.active_remaining_s = *game.clocks[ply - 2];
            clocks.opponent_remaining_s = *game.clocks[ply - 1];
            ctx.clocks = clocks;
        }
        if (ctx.tc_base_seconds && ctx.tc_increment_seconds) {
            pos.prompt += prompt::aux_suffix(ctx);
        }

        // Targets.
        const std::string& result = game.record.stage1.result;
        if (result == "1-0") {
            pos.aux.result = 1;
        } else if (result == "0-1") {
            pos.aux.result = -1;
        } else if (result == "1/2-1/2") {
            pos.aux.result = 0;
        }
        pos.aux.plies_remaining =
            static_cast<int>(game.uci_moves.size()) - static_cast<int>(ply) - 1;
        pos.aux.termination =
            std::string(core::termination_label(game.record.termination_reason));
        pos.aux.move_delay_s = move_delay_seconds(game, ply);
    }
}

std::vector<BenchmarkPosition> stratify_m1s(const std::vector<BenchmarkPosition>& positions,
                                            int stratum_cap, std::uint64_t seed) {
    std::map<std::pair<int, std::string>, std::vector<std::size_t>> strata;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const BenchmarkPosition& pos = positions[i];
        // Stratify on the active player's Elo.
        const core::BoardState state = core::parse_fen(pos.fen);
        const auto elo =
            state.side_to_move == core::Color::White ? pos.white_elo : pos.black_elo;
        if (!elo) continue;
        strata[{eval::round_to_hundred(*elo), pos.time_control.value_or("")}].push_back(i);
    }
    std::vector<std::size_t> chosen;
    for (auto& [key, indices] : strata) {
        auto rng = util::make_rng(seed, std::to_string(key.first) + "|" + key.second);
        for (std::size_t i = 0;
             i + 1 < indices.size() && i < static_cast<std::size_t>(stratum_cap); ++i) {
            const std::size_t j = i + util::uniform_below(rng, indices.size() - i);
            std::swap(indices[i], indices[j]);
        }
        for (std::size_t i = 0;
             i < indices.size() && i < static_cast<std::size_t>(stratum_cap); ++i) {
            chosen.push_back(indices[i]);
        }
    }
    std::sort(chosen.begin(), chosen.end());
    std::vector<BenchmarkPosition> out;
    out.reserve(chosen.size());
    for (std::size_t i : chosen) out.push_back(positions[i]);
    return out;
}

std::vector<BenchmarkPosition> skip_first_plies(std::vector<BenchmarkPosition> positions,
                                                int n) {
    std::erase_if(positions,
                  [n](const BenchmarkPosition& pos) { return pos.ply_index < n; });
    return positions;
}

}  // namespace steerchess::bench
