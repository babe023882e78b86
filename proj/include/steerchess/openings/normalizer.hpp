#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace steerchess::openings {

struct OpeningEntry {
    std::string eco;   // 3-char code, e.g. "B22"
    std::string name;
    std::vector<std::vector<std::string>> lines;  // UCI move sequences
};

enum class MatchMethod { Exact, Rule, Fuzzy };

struct MatchResult {
    const OpeningEntry* entry = nullptr;
    int score = 0;        // 0..100
    MatchMethod method = MatchMethod::Fuzzy;
};

// Lowercased, diacritic-stripped, punctuation-free, whitespace-split and
// sorted tokens.
std::vector<std::string> normalize_name(std::string_view name);

// Token-sort ratio on normalized token-sorted joined strings, with an
// insert/delete edit distance (substitutions cost 2). Both empty -> 100.
int token_sort_ratio(std::string_view a, std::string_view b);

class OpeningDatabase {
public:
    // TSV columns: eco, name, space-separated UCI moves. Lines for the same
    // (eco, name) pair aggregate into one entry. Each line must be legal
    // from the start position; throws std::invalid_argument otherwise.
    static OpeningDatabase load(const std::filesystem::path& path);
    static OpeningDatabase from_entries(std::vector<OpeningEntry> entries);

    const std::vector<OpeningEntry>& entries() const { return entries_; }

    // Exact (eco + verbatim name), then rule (eco + normalized name in
    // order), then fuzzy token-sort ratio restricted to the same ECO, then
    // global. Fuzzy ties break lexicographically by (eco, name). Returns
    // nullopt when the best fuzzy score is below `threshold`.
    std::optional<MatchResult> match(std::string_view eco, std::string_view name,
                                     int threshold = 85) const;

private:
    std::vector<OpeningEntry> entries_;
};

// Longest prefix of any of entry.lines that is also a prefix of `played`
// (UCI moves); may be empty.
std::vector<std::string> canonical_prefix(const OpeningEntry& entry,
                                          const std::vector<std::string>& played);

struct ReviewItem {
    std::string eco;
    std::string name;
    int best_score = 0;
};

void write_review_queue(const std::filesystem::path& path,
                        const std::vector<ReviewItem>& items);

}  // namespace steerchess::openings
