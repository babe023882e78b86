#pragma once

#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "steerchess/prompt/formatters.hpp"

namespace steerchess::prompt {

enum class TemplateFamily { Pretrain, Instruct };

struct PromptTemplate {
    std::string id;
    TemplateFamily family = TemplateFamily::Pretrain;
    std::string body;  // text with {field} placeholders
    std::set<std::string> required_fields;
};

// Placeholder names appearing in the body, in order of first appearance.
// Throws std::invalid_argument on unbalanced braces.
std::vector<std::string> placeholders(const std::string& body);

// All placeholders must belong to the field catalog.
void validate_template(const PromptTemplate& tmpl);

// Exact substitution. Throws std::invalid_argument naming the first
// missing required or placeholder field.
std::string render(const PromptTemplate& tmpl, const MetadataContext& ctx);

// Lowercases with probability 0.1 and strips diacritics with probability
// 0.5, independently.
std::string augment(const std::string& prompt_text, std::mt19937_64& rng);

// Fair coin between the two families.
TemplateFamily choose_family(std::mt19937_64& rng);

struct TemplateCatalog {
    std::vector<PromptTemplate> templates;

    std::vector<const PromptTemplate*> family(TemplateFamily f) const;
    const PromptTemplate* by_id(const std::string& id) const;
};

// Six bundled example templates plus a generated instruct grid over the
// nine metadata inclusion toggles x common/uncommon opening x two
// paraphrases (2048 generated templates). The grid is a reconstruction:
// the combinatorics follow the published scheme, the wording is ours.
TemplateCatalog builtin_catalog();

// One JSON object per line: id, family, body, required fields.
TemplateCatalog load_catalog(const std::filesystem::path& path);
void save_catalog(const std::filesystem::path& path, const TemplateCatalog& catalog);

}  // namespace steerchess::prompt
