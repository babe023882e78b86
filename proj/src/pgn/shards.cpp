#include "steerchess/pgn/shards.hpp"

#include <algorithm>
#include <stdexcept>

#include <json.hpp>

namespace steerchess::pgn {

ShardWriter::ShardWriter(std::filesystem::path directory, std::int64_t max_games,
                         std::string prefix)
    : directory_(std::move(directory)), max_games_(max_games), prefix_(std::move(prefix)) {
    if (max_games_ <= 0) throw std::invalid_argument("ShardWriter: max_games must be positive");
    std::filesystem::create_directories(directory_);
}

ShardWriter::~ShardWriter() {
    if (!finished_) {
        try {
            finish();
        } catch (...) {
        }
    }
}

void ShardWriter::open_next() {
    if (out_.is_open()) {
        out_.close();
        shards_.back().second = in_current_;
    }
    ++shard_index_;
    char name[64];
    std::snprintf(name, sizeof(name), "%s-%06d.jsonl", prefix_.c_str(), shard_index_);
    const auto path = directory_ / name;
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw std::runtime_error("cannot open shard " + path.string());
    shards_.emplace_back(name, 0);
    in_current_ = 0;
}

void ShardWriter::write_line(const std::string& json_line) {
    if (finished_) throw std::logic_error("ShardWriter: already finished");
    if (!out_.is_open() || in_current_ >= max_games_) open_next();
    out_ << json_line << '\n';
    ++in_current_;
    ++total_;
}

void ShardWriter::finish(const std::map<std::string, std::int64_t>& drop_counts) {
    if (finished_) return;
    finished_ = true;
    if (out_.is_open()) {
        out_.close();
        shards_.back().second = in_current_;
    }
    nlohmann::json manifest;
    manifest["total_games"] = total_;
    manifest["max_games_per_shard"] = max_games_;
    auto shard_list = nlohmann::json::array();
    for (const auto& [name, count] : shards_) {
        shard_list.push_back({{"file", name}, {"games", count}});
    }
    manifest["shards"] = shard_list;
    auto drops = nlohmann::json::object();
    for (const auto& [reason, count] : drop_counts) drops[reason] = count;
    manifest["drop_counts"] = drops;

    // Atomic replace: write to a temp name, then rename.
    const auto tmp = directory_ / "manifest.json.tmp";
    const auto final_path = directory_ / "manifest.json";
    std::ofstream m(tmp, std::ios::binary | std::ios::trunc);
    if (!m) throw std::runtime_error("cannot write manifest in " + directory_.string());
    m << manifest.dump(2) << '\n';
    m.close();
    std::filesystem::rename(tmp, final_path);
}

std::vector<std::string> read_shard_lines(const std::filesystem::path& directory) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        if (entry.path().extension() == ".jsonl") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<std::string> lines;
    for (const auto& file : files) {
        std::ifstream in(file, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open shard " + file.string());
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty()) lines.push_back(line);
        }
    }
    return lines;
}

}  // namespace steerchess::pgn
