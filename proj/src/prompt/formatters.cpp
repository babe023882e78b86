#include "steerchess/prompt/formatters.hpp"

#include <sstream>
#include <stdexcept>

#include "steerchess/util/text.hpp"

namespace steerchess::prompt {

namespace {

std::string join_list(const std::vector<std::string>& parts) {
    if (parts.empty()) return "";
    if (parts.size() == 1) return parts[0];
    if (parts.size() == 2) return parts[0] + " and " + parts[1];
    std::string out;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        out += parts[i] + ", ";
    }
    out += "and " + parts.back();
    return out;
}

std::string plural_unit(long n, const char* unit) {
    return std::to_string(n) + " " + unit + (n == 1 ? "" : "s");
}

std::string title_full(std::string_view abbrev) {
    static const std::pair<std::string_view, std::string_view> table[] = {
        {"GM", "Grandmaster"},
        {"IM", "International Master"},
        {"FM", "FIDE Master"},
        {"CM", "Candidate Master"},
        {"WGM", "Woman Grandmaster"},
        {"WIM", "Woman International Master"},
        {"WFM", "Woman FIDE Master"},
        {"WCM", "Woman Candidate Master"},
        {"NM", "National Master"},
        {"LM", "Lichess Master"},
        {"BOT", "Bot"},
    };
    for (const auto& [key, full] : table) {
        if (key == abbrev) return std::string(full);
    }
    return std::string(abbrev);
}

// Skill descriptor with its article, keyed on Elo bands.
std::string rank_player_a(int elo) {
    if (elo < 1200) return "a beginner";
    if (elo < 1600) return "an intermediate player";
    if (elo < 2000) return "an advanced player";
    if (elo < 2400) return "an expert";
    return "a master";
}

std::string month_name(int month) {
    static const char* names[12] = {"January", "February", "March",     "April",
                                    "May",     "June",     "July",      "August",
                                    "September", "October", "November", "December"};
    if (month < 1 || month > 12) return "";
    return names[month - 1];
}

// "2023.01.15" -> "January 15, 2023". Unknown shapes pass through.
std::string pretty_date(const std::string& pgn_date) {
    const auto parts = util::split(pgn_date, '.');
    if (parts.size() != 3) return pgn_date;
    try {
        const int year = std::stoi(parts[0]);
        const int month = std::stoi(parts[1]);
        const int day = std::stoi(parts[2]);
        const std::string name = month_name(month);
        if (name.empty()) return pgn_date;
        return name + " " + std::to_string(day) + ", " + std::to_string(year);
    } catch (const std::exception&) {
        return pgn_date;
    }
}

// Opening moves in numbered SAN: "1. e4 c5 2. Nf3".
std::string numbered_san(const std::vector<std::string>& moves) {
    std::string out;
    for (std::size_t i = 0; i < moves.size(); ++i) {
        if (i % 2 == 0) {
            if (!out.empty()) out.push_back(' ');
            out += std::to_string(i / 2 + 1) + ".";
        }
        out.push_back(' ');
        out += moves[i];
    }
    return out;
}

std::optional<std::string> opt(std::string value) { return std::optional<std::string>(std::move(value)); }

}  // namespace

std::string duration_text(long seconds) {
    std::vector<std::string> parts;
    const long hours = seconds / 3600;
    const long minutes = (seconds % 3600) / 60;
    const long secs = seconds % 60;
    if (hours > 0) parts.push_back(plural_unit(hours, "hour"));
    if (minutes > 0) parts.push_back(plural_unit(minutes, "minute"));
    if (secs > 0) parts.push_back(plural_unit(secs, "second"));
    if (parts.empty()) parts.push_back("0 seconds");
    return join_list(parts);
}

std::string format_time_control(long base_seconds, long increment_seconds) {
    std::string out = duration_text(base_seconds);
    if (increment_seconds == 0) {
        out += " with no additional increment";
    } else {
        out += " with " + plural_unit(increment_seconds, "second") + " of increment";
    }
    return out;
}

std::string time_control_category(long base_seconds, long increment_seconds) {
    const long estimated = base_seconds + 40 * increment_seconds;
    if (estimated < 30) return "UltraBullet";
    if (estimated < 180) return "Bullet";
    if (estimated < 480) return "Blitz";
    if (estimated < 1500) return "Rapid";
    return "Classical";
}

const std::vector<std::string>& field_catalog() {
    static const std::vector<std::string> catalog = {
        "white_elo", "black_elo", "elo", "mean_elo",
        "white_title", "black_title", "white_title_full", "black_title_full",
        "white_title_full_quot_name", "black_title_full_quot_name",
        "white_title_full_paren_title", "black_title_full_paren_title",
        "white_alias", "black_alias",
        "white_alias_alias_paren", "black_alias_alias_paren",
        "white_alias_known_as_quot_name", "black_alias_known_as_quot_name",
        "white_name", "black_name",
        "white_rank_player_a", "black_rank_player_a",
        "W_lit", "B_lit", "w_lit_lower_pieces", "b_lit_lower_pieces",
        "date", "ratedness_lower",
        "time_control", "time_control_lower",
        "text_td", "td_all_seconds", "text_time_increment",
        "with_text_time_increment", "time_increment_words_without_any_increment",
        "opening", "opening_commas", "opening_variant_name_of_the_main",
        "opening_moves",
        "result",
    };
    return catalog;
}

std::optional<std::string> format_field(std::string_view name,
                                        const MetadataContext& ctx) {
    const bool has_tc = ctx.tc_base_seconds && ctx.tc_increment_seconds;
    const auto side_field = [&](const std::optional<std::string>& white_value,
                                const std::optional<std::string>& black_value,
                                bool white) { return white ? white_value : black_value; };
    (void)side_field;

    if (name == "white_elo") {
        return ctx.white_elo ? opt(std::to_string(*ctx.white_elo)) : std::nullopt;
    }
    if (name == "black_elo") {
        return ctx.black_elo ? opt(std::to_string(*ctx.black_elo)) : std::nullopt;
    }
    if (name == "elo") {
        if (ctx.elo_override) return opt(std::to_string(*ctx.elo_override));
        if (ctx.side == core::Color::Black && ctx.black_elo) {
            return opt(std::to_string(*ctx.black_elo));
        }
        if (ctx.white_elo) return opt(std::to_string(*ctx.white_elo));
        return std::nullopt;
    }
    if (name == "mean_elo") {
        if (!ctx.white_elo || !ctx.black_elo) return std::nullopt;
        return opt(std::to_string((*ctx.white_elo + *ctx.black_elo) / 2));
    }
    if (name == "white_title") return ctx.white_title;
    if (name == "black_title") return ctx.black_title;
    if (name == "white_title_full") {
        return ctx.white_title ? opt(title_full(*ctx.white_title)) : std::nullopt;
    }
    if (name == "black_title_full") {
        return ctx.black_title ? opt(title_full(*ctx.black_title)) : std::nullopt;
    }
    if (name == "white_title_full_quot_name" || name == "black_title_full_quot_name") {
        const bool white = name[0] == 'w';
        const auto& alias = white ? ctx.white_alias : ctx.black_alias;
        const auto& title = white ? ctx.white_title : ctx.black_title;
        if (!alias) return std::nullopt;
        const std::string quoted = "\"" + *alias + "\"";
        return opt(title ? title_full(*title) + " " + quoted : quoted);
    }
    if (name == "white_title_full_paren_title" || name == "black_title_full_paren_title") {
        const bool white = name[0] == 'w';
        const auto& title = white ? ctx.white_title : ctx.black_title;
        if (!title) return opt("");
        return opt(title_full(*title) + " (" + *title + ")");
    }
    if (name == "white_alias") return ctx.white_alias;
    if (name == "black_alias") return ctx.black_alias;
    if (name == "white_alias_alias_paren" || name == "black_alias_alias_paren") {
        const bool white = name[0] == 'w';
        const auto& real = white ? ctx.white_name : ctx.black_name;
        if (!real) return opt("");
        return opt("(alias " + *real + ")");
    }
    if (name == "white_alias_known_as_quot_name" || name == "black_alias_known_as_quot_name") {
        const bool white = name[0] == 'w';
        const auto& alias = white ? ctx.white_alias : ctx.black_alias;
        if (!alias) return std::nullopt;
        return opt("known as \"" + *alias + "\"");
    }
    if (name == "white_name") return ctx.white_name;
    if (name == "black_name") return ctx.black_name;
    if (name == "white_rank_player_a") {
        return ctx.white_elo ? opt(rank_player_a(*ctx.white_elo)) : std::nullopt;
    }
    if (name == "black_rank_player_a") {
        return ctx.black_elo ? opt(rank_player_a(*ctx.black_elo)) : std::nullopt;
    }
    if (name == "W_lit") return opt("White");
    if (name == "B_lit") return opt("Black");
    if (name == "w_lit_lower_pieces") return opt("white pieces");
    if (name == "b_lit_lower_pieces") return opt("black pieces");
    if (name == "date") return ctx.date ? opt(pretty_date(*ctx.date)) : std::nullopt;
    if (name == "ratedness_lower") {
        return ctx.rated ? opt(*ctx.rated ? "rated" : "casual") : std::nullopt;
    }
    if (name == "time_control") {
        if (!has_tc) return std::nullopt;
        return opt(std::to_string(*ctx.tc_base_seconds) + "+" +
                   std::to_string(*ctx.tc_increment_seconds));
    }
    if (name == "time_control_lower") {
        if (ctx.time_control_category) return opt(util::ascii_lower(*ctx.time_control_category));
        if (!has_tc) return std::nullopt;
        return opt(util::ascii_lower(
            time_control_category(*ctx.tc_base_seconds, *ctx.tc_increment_seconds)));
    }
    if (name == "text_td") {
        return has_tc ? opt(duration_text(*ctx.tc_base_seconds)) : std::nullopt;
    }
    if (name == "td_all_seconds") {
        return has_tc ? opt(plural_unit(*ctx.tc_base_seconds, "second")) : std::nullopt;
    }
    if (name == "text_time_increment") {
        return has_tc ? opt(plural_unit(*ctx.tc_increment_seconds, "second")) : std::nullopt;
    }
    if (name == "with_text_time_increment") {
        if (!has_tc) return std::nullopt;
        if (*ctx.tc_increment_seconds == 0) return opt("with no increment");
        return opt("with " + plural_unit(*ctx.tc_increment_seconds, "second") +
                   " of increment");
    }
    if (name == "time_increment_words_without_any_increment") {
        if (!has_tc) return std::nullopt;
        if (*ctx.tc_increment_seconds == 0) return opt("without any increment");
        return opt("with an increment of " +
                   plural_unit(*ctx.tc_increment_seconds, "second"));
    }
    if (name == "opening") return ctx.opening_name;
    if (name == "opening_commas") {
        if (!ctx.opening_name) return std::nullopt;
        std::string out = *ctx.opening_name;
        for (std::size_t i = 0; i + 1 < out.size(); ++i) {
            if (out[i] == ':' && out[i + 1] == ' ') out[i] = ',';
        }
        return opt(std::move(out));
    }
    if (name == "opening_variant_name_of_the_main") {
        if (!ctx.opening_name) return std::nullopt;
        // "Sicilian Defense: Najdorf Variation" -> "Najdorf Variation of the
        // Sicilian Defense"; names without a variation pass through.
        const auto pos = ctx.opening_name->find(": ");
        if (pos == std::string::npos) return ctx.opening_name;
        return opt(ctx.opening_name->substr(pos + 2) + " of the " +
                   ctx.opening_name->substr(0, pos));
    }
    if (name == "opening_moves") {
        if (ctx.opening_moves_san.empty()) return std::nullopt;
        return opt(numbered_san(ctx.opening_moves_san));
    }
    if (name == "result") return ctx.result;
    return std::nullopt;
}

std::string gm_header() {
    return
        "[White \"Magnus Carlsen\"]\n"
        "[Black \"Garry Kasparov\"]\n"
        "[WhiteElo \"2900\"]\n"
        "[BlackElo \"2800\"]\n"
        "\n";
}

std::string elo_tc_header(int white_elo, int black_elo, std::string_view time_control) {
    std::ostringstream out;
    out << "[White \"???\"]\n"
        << "[Black \"???\"]\n"
        << "[WhiteElo \"" << white_elo << "\"]\n"
        << "[BlackElo \"" << black_elo << "\"]\n"
        << "[TimeControl \"" << time_control << "\"]\n\n";
    return out.str();
}

std::string metadata_prompt(const MetadataContext& ctx) {
    if (!ctx.white_elo || !ctx.black_elo || !ctx.tc_base_seconds ||
        !ctx.tc_increment_seconds) {
        throw std::invalid_argument("metadata_prompt: needs both elos and the time control");
    }
    const std::string category =
        ctx.time_control_category
            ? *ctx.time_control_category
            : time_control_category(*ctx.tc_base_seconds, *ctx.tc_increment_seconds);
    std::string time_info = "a time control of " + duration_text(*ctx.tc_base_seconds);
    if (*ctx.tc_increment_seconds == 0) {
        time_info += " with no increment";
    } else {
        time_info += " with an increment of " + duration_text(*ctx.tc_increment_seconds);
    }
    std::ostringstream out;
    out << "An anonymous white player with an ELO of " << *ctx.white_elo
        << " plays chess against another anonymous black player, with an ELO of "
        << *ctx.black_elo << " in a " << util::ascii_lower(category)
        << " game on Lichess played with " << time_info << ".";
    return out.str();
}

std::string aux_suffix(const MetadataContext& ctx) {
    if (!ctx.tc_base_seconds || !ctx.tc_increment_seconds) {
        throw std::invalid_argument("aux_suffix: time control unknown");
    }
    const std::string category =
        ctx.time_control_category
            ? *ctx.time_control_category
            : time_control_category(*ctx.tc_base_seconds, *ctx.tc_increment_seconds);
    std::string increment_text;
    if (*ctx.tc_increment_seconds == 0) {
        increment_text = "with no additional increment";
    } else {
        increment_text =
            "with " + plural_unit(*ctx.tc_increment_seconds, "second") + " of increment";
    }
    std::string out = " The time control for this " + util::ascii_lower(category) +
                      " chess game was " + duration_text(*ctx.tc_base_seconds) + " " +
                      increment_text + ".";
    if (ctx.clocks) {
        const auto secs = [](long s) { return std::to_string(s) + "s"; };
        out += " Time taken last turn by active player: " + secs(ctx.clocks->active_last_move_s) +
               ". Time taken last turn by opponent: " + secs(ctx.clocks->opponent_last_move_s) +
               ". Time remaining for the active player: " + secs(ctx.clocks->active_remaining_s) +
               ". Time remaining for the opponent: " + secs(ctx.clocks->opponent_remaining_s) + ".";
    }
    return out;
}

}  // namespace steerchess::prompt
