#include "steerchess/util/text.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

namespace steerchess::util {

std::size_t utf8_length(std::string_view text) {
    std::size_t n = 0;
    for (unsigned char c : text) {
        if ((c & 0xC0) != 0x80) ++n;
    }
    return n;
}

namespace {

// Base letters for the Latin-1 Supplement and Latin Extended-A codepoints
// that actually occur in chess names (player names, opening names).
const std::unordered_map<char32_t, std::string_view>& folding_table() {
    static const std::unordered_map<char32_t, std::string_view> table = {
        {U'À', "A"}, {U'Á', "A"}, {U'Â', "A"}, {U'Ã', "A"}, {U'Ä', "A"}, {U'Å', "A"},
        {U'Æ', "AE"}, {U'Ç', "C"}, {U'È', "E"}, {U'É', "E"}, {U'Ê', "E"}, {U'Ë', "E"},
        {U'Ì', "I"}, {U'Í', "I"}, {U'Î', "I"}, {U'Ï', "I"}, {U'Ð', "D"}, {U'Ñ', "N"},
        {U'Ò', "O"}, {U'Ó', "O"}, {U'Ô', "O"}, {U'Õ', "O"}, {U'Ö', "O"}, {U'Ø', "O"},
        {U'Ù', "U"}, {U'Ú', "U"}, {U'Û', "U"}, {U'Ü', "U"}, {U'Ý', "Y"}, {U'ß', "ss"},
        {U'à', "a"}, {U'á', "a"}, {U'â', "a"}, {U'ã', "a"}, {U'ä', "a"}, {U'å', "a"},
        {U'æ', "ae"}, {U'ç', "c"}, {U'è', "e"}, {U'é', "e"}, {U'ê', "e"}, {U'ë', "e"},
        {U'ì', "i"}, {U'í', "i"}, {U'î', "i"}, {U'ï', "i"}, {U'ñ', "n"},
        {U'ò', "o"}, {U'ó', "o"}, {U'ô', "o"}, {U'õ', "o"}, {U'ö', "o"}, {U'ø', "o"},
        {U'ù', "u"}, {U'ú', "u"}, {U'û', "u"}, {U'ü', "u"}, {U'ý', "y"}, {U'ÿ', "y"},
        {U'Ā', "A"}, {U'ā', "a"}, {U'Ă', "A"}, {U'ă', "a"}, {U'Ą', "A"}, {U'ą', "a"},
        {U'Ć', "C"}, {U'ć', "c"}, {U'Č', "C"}, {U'č', "c"}, {U'Ď', "D"}, {U'ď', "d"},
        {U'Đ', "D"}, {U'đ', "d"}, {U'Ē', "E"}, {U'ē', "e"}, {U'Ė', "E"}, {U'ė', "e"},
        {U'Ę', "E"}, {U'ę', "e"}, {U'Ě', "E"}, {U'ě', "e"}, {U'Ğ', "G"}, {U'ğ', "g"},
        {U'Ī', "I"}, {U'ī', "i"}, {U'İ', "I"}, {U'ı', "i"}, {U'Ł', "L"}, {U'ł', "l"},
        {U'Ń', "N"}, {U'ń', "n"}, {U'Ň', "N"}, {U'ň', "n"}, {U'Ō', "O"}, {U'ō', "o"},
        {U'Ő', "O"}, {U'ő', "o"}, {U'Œ', "OE"}, {U'œ', "oe"}, {U'Ŕ', "R"}, {U'ŕ', "r"},
        {U'Ř', "R"}, {U'ř', "r"}, {U'Ś', "S"}, {U'ś', "s"}, {U'Ş', "S"}, {U'ş', "s"},
        {U'Š', "S"}, {U'š', "s"}, {U'Ť', "T"}, {U'ť', "t"}, {U'Ū', "U"}, {U'ū', "u"},
        {U'Ů', "U"}, {U'ů', "u"}, {U'Ű', "U"}, {U'ű', "u"}, {U'Ź', "Z"}, {U'ź', "z"},
        {U'Ż', "Z"}, {U'ż', "z"}, {U'Ž', "Z"}, {U'ž', "z"},
    };
    return table;
}

// Decodes one UTF-8 codepoint starting at i; advances i past it.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
    const unsigned char c0 = static_cast<unsigned char>(s[i]);
    if (c0 < 0x80) {
        ++i;
        return c0;
    }
    int extra = 0;
    char32_t cp = 0;
    if ((c0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = c0 & 0x1F;
    } else if ((c0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = c0 & 0x0F;
    } else if ((c0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = c0 & 0x07;
    } else {
        ++i;
        return 0xFFFD;
    }
    if (i + static_cast<std::size_t>(extra) >= s.size()) {
        ++i;
        return 0xFFFD;
    }
    std::size_t j = i + 1;
    for (int k = 0; k < extra; ++k, ++j) {
        const unsigned char c = static_cast<unsigned char>(s[j]);
        if ((c & 0xC0) != 0x80) {
            ++i;
            return 0xFFFD;
        }
        cp = (cp << 6) | (c & 0x3F);
    }
    i = j;
    return cp;
}

}  // namespace

std::string strip_diacritics(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const auto& table = folding_table();
    while (i < text.size()) {
        const std::size_t before = i;
        const char32_t cp = decode_utf8(text, i);
        if (cp < 0x80) {
            out.push_back(text[before]);
            continue;
        }
        auto it = table.find(cp);
        if (it != table.end()) {
            out += it->second;
        } else {
            out.append(text.substr(before, i - before));
        }
    }
    return out;
}

std::string ascii_lower(std::string_view text) {
    std::string out(text);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string trim(std::string_view text) {
    std::size_t b = 0, e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    return std::string(text.substr(b, e - b));
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) out.emplace_back(text.substr(i, j - i));
        i = j;
    }
    return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == sep) {
            out.emplace_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

bool starts_with(std::string_view text, std::string_view prefix) {
    return text.size() >= prefix.size() && text.substr(0, prefix.size()) == prefix;
}

bool contains_insensitive(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return true;
    const std::string h = ascii_lower(haystack);
    const std::string n = ascii_lower(needle);
    return h.find(n) != std::string::npos;
}

}  // namespace steerchess::util
