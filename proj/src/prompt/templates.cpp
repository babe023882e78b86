#include "steerchess/prompt/templates.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "steerchess/util/rng.hpp"
#include "steerchess/util/text.hpp"

namespace steerchess::prompt {

std::vector<std::string> placeholders(const std::string& body) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < body.size()) {
        if (body[i] == '}') throw std::invalid_argument("unbalanced '}' in template body");
        if (body[i] != '{') {
            ++i;
            continue;
        }
        const std::size_t close = body.find('}', i);
        if (close == std::string::npos) {
            throw std::invalid_argument("unbalanced '{' in template body");
        }
        const std::string name = body.substr(i + 1, close - i - 1);
        if (name.empty() || name.find('{') != std::string::npos) {
            throw std::invalid_argument("bad placeholder in template body");
        }
        if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
        i = close + 1;
    }
    return out;
}

void validate_template(const PromptTemplate& tmpl) {
    const auto& catalog = field_catalog();
    for (const std::string& name : placeholders(tmpl.body)) {
        if (std::find(catalog.begin(), catalog.end(), name) == catalog.end()) {
            throw std::invalid_argument("template " + tmpl.id +
                                        ": placeholder '" + name +
                                        "' is not in the field catalog");
        }
    }
}

std::string render(const PromptTemplate& tmpl, const MetadataContext& ctx) {
    for (const std::string& field : tmpl.required_fields) {
        if (!format_field(field, ctx)) {
            throw std::invalid_argument("render: missing required field '" + field + "'");
        }
    }
    std::string out;
    out.reserve(tmpl.body.size() + 64);
    std::size_t i = 0;
    while (i < tmpl.body.size()) {
        if (tmpl.body[i] != '{') {
            out.push_back(tmpl.body[i]);
            ++i;
            continue;
        }
        const std::size_t close = tmpl.body.find('}', i);
        const std::string name = tmpl.body.substr(i + 1, close - i - 1);
        const auto value = format_field(name, ctx);
        if (!value) {
            throw std::invalid_argument("render: missing field '" + name + "'");
        }
        out += *value;
        i = close + 1;
    }
    return out;
}

std::string augment(const std::string& prompt_text, std::mt19937_64& rng) {
    const bool lowercase = util::uniform_unit(rng) < 0.1;
    const bool strip = util::uniform_unit(rng) < 0.5;
    std::string out = prompt_text;
    if (strip) out = util::strip_diacritics(out);
    if (lowercase) out = util::ascii_lower(out);
    return out;
}

TemplateFamily choose_family(std::mt19937_64& rng) {
    return util::uniform_unit(rng) < 0.5 ? TemplateFamily::Pretrain
                                         : TemplateFamily::Instruct;
}

std::vector<const PromptTemplate*> TemplateCatalog::family(TemplateFamily f) const {
    std::vector<const PromptTemplate*> out;
    for (const PromptTemplate& t : templates) {
        if (t.family == f) out.push_back(&t);
    }
    return out;
}

const PromptTemplate* TemplateCatalog::by_id(const std::string& id) const {
    for (const PromptTemplate& t : templates) {
        if (t.id == id) return &t;
    }
    return nullptr;
}

TemplateCatalog load_catalog(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open template catalog " + path.string());
    TemplateCatalog catalog;
    std::string line;
    while (std::getline(in, line)) {
        if (util::trim(line).empty()) continue;
        const auto j = nlohmann::json::parse(line);
        PromptTemplate t;
        t.id = j.at("id").get<std::string>();
        const std::string family = j.at("family").get<std::string>();
        if (family == "pretrain") {
            t.family = TemplateFamily::Pretrain;
        } else if (family == "instruct") {
            t.family = TemplateFamily::Instruct;
        } else {
            throw std::invalid_argument("unknown template family '" + family + "'");
        }
        t.body = j.at("body").get<std::string>();
        for (const auto& f : j.at("required")) {
            t.required_fields.insert(f.get<std::string>());
        }
        validate_template(t);
        catalog.templates.push_back(std::move(t));
    }
    return catalog;
}

void save_catalog(const std::filesystem::path& path, const TemplateCatalog& catalog) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    for (const PromptTemplate& t : catalog.templates) {
        nlohmann::json j;
        j["id"] = t.id;
        j["family"] = t.family == TemplateFamily::Pretrain ? "pretrain" : "instruct";
        j["body"] = t.body;
        j["required"] = t.required_fields;
        out << j.dump() << '\n';
    }
}

}  // namespace steerchess::prompt
