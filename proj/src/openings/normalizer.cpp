#include "steerchess/openings/normalizer.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "steerchess/core/movegen.hpp"
#include "steerchess/core/notation.hpp"
#include "steerchess/util/text.hpp"

namespace steerchess::openings {

namespace {

// Lowercase, diacritics stripped, punctuation replaced by spaces; token
// order preserved.
std::vector<std::string> normalized_tokens_in_order(std::string_view name) {
    std::string cleaned = util::ascii_lower(util::strip_diacritics(name));
    for (char& c : cleaned) {
        if (std::ispunct(static_cast<unsigned char>(c))) c = ' ';
    }
    return util::split_whitespace(cleaned);
}

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

// Indel distance via longest common subsequence: d = |a| + |b| - 2*LCS.
std::size_t indel_distance(std::string_view a, std::string_view b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<std::size_t> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            if (a[i - 1] == b[j - 1]) {
                cur[j] = prev[j - 1] + 1;
            } else {
                cur[j] = std::max(prev[j], cur[j - 1]);
            }
        }
        std::swap(prev, cur);
    }
    const std::size_t lcs = prev[m];
    return n + m - 2 * lcs;
}

}  // namespace

std::vector<std::string> normalize_name(std::string_view name) {
    auto tokens = normalized_tokens_in_order(name);
    std::sort(tokens.begin(), tokens.end());
    return tokens;
}

int token_sort_ratio(std::string_view a, std::string_view b) {
    const std::string sa = join(normalize_name(a));
    const std::string sb = join(normalize_name(b));
    const std::size_t total = sa.size() + sb.size();
    if (total == 0) return 100;
    const std::size_t d = indel_distance(sa, sb);
    const double ratio = 100.0 * static_cast<double>(total - d) / static_cast<double>(total);
    return static_cast<int>(ratio + 0.5);
}

OpeningDatabase OpeningDatabase::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open opening database " + path.string());
    std::map<std::pair<std::string, std::string>, std::vector<std::vector<std::string>>> grouped;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto cols = util::split(line, '\t');
        if (cols.size() != 3) {
            throw std::invalid_argument("opening db line " + std::to_string(lineno) +
                                        ": expected 3 tab-separated columns");
        }
        grouped[{util::trim(cols[0]), util::trim(cols[1])}].push_back(
            util::split_whitespace(cols[2]));
    }
    std::vector<OpeningEntry> entries;
    entries.reserve(grouped.size());
    for (auto& [key, lines] : grouped) {
        entries.push_back(OpeningEntry{key.first, key.second, std::move(lines)});
    }
    return from_entries(std::move(entries));
}

OpeningDatabase OpeningDatabase::from_entries(std::vector<OpeningEntry> entries) {
    for (const OpeningEntry& e : entries) {
        for (const auto& line : e.lines) {
            if (line.empty()) {
                throw std::invalid_argument("opening '" + e.name + "' has an empty line");
            }
            core::BoardState s = core::start_position();
            for (const std::string& uci : line) {
                s = core::apply_move_unchecked(s, core::uci_to_move(s, uci));
            }
        }
    }
    OpeningDatabase db;
    db.entries_ = std::move(entries);
    return db;
}

std::optional<MatchResult> OpeningDatabase::match(std::string_view eco,
                                                  std::string_view name,
                                                  int threshold) const {
    // Exact: same ECO and verbatim name.
    for (const OpeningEntry& e : entries_) {
        if (e.eco == eco && e.name == name) {
            return MatchResult{&e, 100, MatchMethod::Exact};
        }
    }
    // Rule: same ECO and normalized name equal with token order preserved.
    const auto ordered = normalized_tokens_in_order(name);
    for (const OpeningEntry& e : entries_) {
        if (e.eco == eco && normalized_tokens_in_order(e.name) == ordered) {
            return MatchResult{&e, 100, MatchMethod::Rule};
        }
    }

    const auto best_in = [&](bool restrict_eco) -> std::optional<MatchResult> {
        const OpeningEntry* best = nullptr;
        int best_score = -1;
        for (const OpeningEntry& e : entries_) {
            if (restrict_eco && e.eco != eco) continue;
            const int score = token_sort_ratio(e.name, name);
            const bool better =
                score > best_score ||
                (score == best_score && best != nullptr &&
                 std::tie(e.eco, e.name) < std::tie(best->eco, best->name));
            if (better) {
                best = &e;
                best_score = score;
            }
        }
        if (best == nullptr || best_score < threshold) return std::nullopt;
        return MatchResult{best, best_score, MatchMethod::Fuzzy};
    };

    if (auto r = best_in(true)) return r;
    return best_in(false);
}

std::vector<std::string> canonical_prefix(const OpeningEntry& entry,
                                          const std::vector<std::string>& played) {
    std::size_t best = 0;
    for (const auto& line : entry.lines) {
        std::size_t k = 0;
        while (k < line.size() && k < played.size() && line[k] == played[k]) ++k;
        best = std::max(best, k);
    }
    return std::vector<std::string>(played.begin(),
                                    played.begin() + static_cast<std::ptrdiff_t>(best));
}

void write_review_queue(const std::filesystem::path& path,
                        const std::vector<ReviewItem>& items) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "eco\tname\tbest_score\n";
    for (const ReviewItem& item : items) {
        out << item.eco << '\t' << item.name << '\t' << item.best_score << '\n';
    }
}

}  // namespace steerchess::openings
