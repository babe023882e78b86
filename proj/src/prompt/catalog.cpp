#include <cstdio>

#include "steerchess/prompt/templates.hpp"

namespace steerchess::prompt {

namespace {

PromptTemplate make(std::string id, TemplateFamily family, std::string body) {
    PromptTemplate t;
    t.id = std::move(id);
    t.family = family;
    t.body = std::move(body);
    for (const std::string& name : placeholders(t.body)) {
        t.required_fields.insert(name);
    }
    validate_template(t);
    return t;
}

// Optional fields render as "" when absent, so templates composing them do
// not require them.
void drop_requirements(PromptTemplate& t, std::initializer_list<const char*> names) {
    for (const char* n : names) t.required_fields.erase(n);
}

std::vector<PromptTemplate> bundled_examples() {
    std::vector<PromptTemplate> out;

    out.push_back(make(
        "pretrain-000", TemplateFamily::Pretrain,
        "This {time_control_lower} chess game was played online at Lichess.org on "
        "{date}, with each player given {td_all_seconds} and {text_time_increment} per "
        "move. The game featured {white_title_full_quot_name} {white_alias_alias_paren} "
        "as {W_lit}, with an Elo rating of {white_elo}, against "
        "{black_title_full_quot_name} {black_alias_alias_paren} as {B_lit}, who had a "
        "rating of {black_elo}. The opening used was the {opening_commas}, delineated "
        "by the moves: {opening_moves}."));
    drop_requirements(out.back(), {"white_alias_alias_paren", "black_alias_alias_paren"});

    out.push_back(make(
        "pretrain-001", TemplateFamily::Pretrain,
        "In a {ratedness_lower} {time_control_lower} chess game hosted on Lichess.org "
        "on {date}, {white_title_full_paren_title} {white_alias_known_as_quot_name}, "
        "rated {white_elo}, played as {W_lit} against {black_title_full_paren_title} "
        "{black_alias_known_as_quot_name} and rated {black_elo}. The game opened with "
        "the {opening}, starting with moves {opening_moves}. The time control for the "
        "match was {td_all_seconds} {with_text_time_increment} per move."));
    drop_requirements(out.back(),
                      {"white_title_full_paren_title", "black_title_full_paren_title"});

    out.push_back(make(
        "pretrain-002", TemplateFamily::Pretrain,
        "On {date}, at Lichess.org, {white_title_full} {white_alias} (white) with an "
        "Elo rating of {white_elo} played against {black_title_full} {black_alias} "
        "(black) who had an Elo rating of {black_elo}. This rated {time_control_lower} "
        "game had a time control of {text_td} per player "
        "{time_increment_words_without_any_increment}. The game featured the {opening}, "
        "which began with the moves {opening_moves}."));

    out.push_back(make(
        "instruct-000", TemplateFamily::Instruct,
        "Join {black_title} {black_alias}, ELO {black_elo}, as he plays {B_lit} "
        "utilizing the {opening} with the opening moves {opening_moves}. Challenge "
        "this {black_rank_player_a} to a game on Lichess and test your skills against "
        "his opening strategy."));

    out.push_back(make(
        "instruct-001", TemplateFamily::Instruct,
        "Play as {white_title_full} {white_alias}, taking the {w_lit_lower_pieces} and "
        "opening the game with {opening_moves}, known as the "
        "{opening_variant_name_of_the_main}."));

    out.push_back(make(
        "instruct-002", TemplateFamily::Instruct,
        "In this chess game on Lichess, the player, controlling the "
        "{b_lit_lower_pieces}, opens with the {opening} by playing {opening_moves}."));

    return out;
}

// The instruct grid varies nine inclusion toggles, common vs uncommon
// opening wording, and two paraphrases. Assembled from fixed clause
// fragments so every body is deterministic.
PromptTemplate grid_template(int mask, int uncommon, int paraphrase, int serial) {
    const bool with_title = mask & (1 << 0);
    const bool with_elo = mask & (1 << 1);
    const bool with_skill = mask & (1 << 2);
    const bool with_username = mask & (1 << 3);
    const bool with_realname = mask & (1 << 4);
    const bool with_opening_name = mask & (1 << 5);
    const bool with_opening_moves = mask & (1 << 6);
    const bool black_side = mask & (1 << 7);
    const bool request_framing = mask & (1 << 8);

    const char* w = black_side ? "black" : "white";
    const std::string title = std::string("{") + w + "_title_full}";
    const std::string alias = std::string("{") + w + "_alias}";
    const std::string realname = std::string("{") + w + "_name}";
    const std::string elo = std::string("{") + w + "_elo}";
    const std::string skill = std::string("{") + w + "_rank_player_a}";
    const std::string pieces =
        black_side ? "{b_lit_lower_pieces}" : "{w_lit_lower_pieces}";

    // Subject phrase.
    std::string subject;
    if (with_title) subject += title + " ";
    if (with_username) subject += alias + " ";
    if (with_realname) subject += "(" + realname + ") ";
    if (subject.empty()) subject = request_framing ? "" : "an anonymous player ";
    std::string qualifiers;
    if (with_elo) qualifiers += std::string("rated ") + elo;
    if (with_skill) {
        if (!qualifiers.empty()) qualifiers += ", ";
        qualifiers += skill;
    }

    std::string opening_clause;
    if (with_opening_name && with_opening_moves) {
        opening_clause = uncommon
                             ? std::string(" with the offbeat {opening} via {opening_moves}")
                             : std::string(" with the {opening} via {opening_moves}");
    } else if (with_opening_name) {
        opening_clause = uncommon ? " with the offbeat {opening}" : " with the {opening}";
    } else if (with_opening_moves) {
        opening_clause = " starting from the moves {opening_moves}";
    }

    std::string body;
    if (request_framing) {
        body = paraphrase == 0 ? "Play a game of chess on Lichess as " : "Take over as ";
        body += subject.empty() ? std::string("the ") + w + " player " : subject;
        if (!qualifiers.empty()) body += qualifiers + " ";
        body += "handling the " + pieces;
        body += opening_clause;
        body += paraphrase == 0 ? "." : ", and pick the next move.";
    } else {
        body = paraphrase == 0 ? "A chess game on Lichess features " : "This game has ";
        body += subject.empty() ? std::string("a player ") : subject;
        if (!qualifiers.empty()) body += qualifiers + " ";
        body += "on the " + pieces;
        body += opening_clause;
        body += paraphrase == 0 ? "." : " in progress.";
    }

    char id[32];
    std::snprintf(id, sizeof(id), "instruct-grid-%04d", serial);
    PromptTemplate t = make(id, TemplateFamily::Instruct, body);
    return t;
}

}  // namespace

TemplateCatalog builtin_catalog() {
    TemplateCatalog catalog;
    catalog.templates = bundled_examples();
    int serial = 0;
    for (int mask = 0; mask < 512; ++mask) {
        for (int uncommon = 0; uncommon < 2; ++uncommon) {
            for (int paraphrase = 0; paraphrase < 2; ++paraphrase) {
                catalog.templates.push_back(
                    grid_template(mask, uncommon, paraphrase, serial++));
            }
        }
    }
    return catalog;
}

}  // namespace steerchess::prompt
