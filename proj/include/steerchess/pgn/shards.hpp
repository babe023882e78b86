#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

namespace steerchess::pgn {

// Order-preserving writer of newline-delimited records, opening a new shard
// file every max_games records. Shard files are named
// shard-<index>.jsonl inside the target directory.
class ShardWriter {
public:
    static constexpr std::int64_t kDefaultMaxGames = std::int64_t{4096} * 1024;

    explicit ShardWriter(std::filesystem::path directory,
                         std::int64_t max_games = kDefaultMaxGames,
                         std::string prefix = "shard");
    ~ShardWriter();

    void write_line(const std::string& json_line);

    // Closes the open shard and records drop counters in the manifest.
    void finish(const std::map<std::string, std::int64_t>& drop_counts = {});

    std::int64_t total_written() const { return total_; }

private:
    void open_next();

    std::filesystem::path directory_;
    std::int64_t max_games_;
    std::string prefix_;
    std::ofstream out_;
    int shard_index_ = -1;
    std::int64_t in_current_ = 0;
    std::int64_t total_ = 0;
    std::vector<std::pair<std::string, std::int64_t>> shards_;
    bool finished_ = false;
};

// All record lines across the directory's shards, in shard order.
std::vector<std::string> read_shard_lines(const std::filesystem::path& directory);

}  // namespace steerchess::pgn
