#include "steerchess/bench/position.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace steerchess::bench {

namespace {

using nlohmann::json;

template <typename T>
void put_opt(json& j, const char* key, const std::optional<T>& value) {
    if (value) j[key] = *value;
}

template <typename T>
std::optional<T> get_opt(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

}  // namespace

std::string to_json_line(const BenchmarkPosition& pos) {
    json j;
    j["id"] = pos.id;
    j["fen"] = pos.fen;
    j["history"] = pos.history_uci;
    j["prompt"] = pos.prompt;
    j["target"] = pos.target_uci;
    put_opt(j, "white_elo", pos.white_elo);
    put_opt(j, "black_elo", pos.black_elo);
    put_opt(j, "time_control", pos.time_control);
    j["ply"] = pos.ply_index;
    put_opt(j, "active_clock_s", pos.active_clock_s);
    json aux = json::object();
    put_opt(aux, "result", pos.aux.result);
    put_opt(aux, "plies_remaining", pos.aux.plies_remaining);
    put_opt(aux, "termination", pos.aux.termination);
    put_opt(aux, "move_delay_s", pos.aux.move_delay_s);
    if (!aux.empty()) j["aux"] = aux;
    return j.dump();
}

BenchmarkPosition position_from_json(const std::string& line) {
    const json j = json::parse(line);
    BenchmarkPosition pos;
    pos.id = j.at("id").get<std::string>();
    pos.fen = j.at("fen").get<std::string>();
    if (j.contains("history")) {
        pos.history_uci = j.at("history").get<std::vector<std::string>>();
    }
    pos.prompt = j.value("prompt", "");
    pos.target_uci = j.at("target").get<std::string>();
    pos.white_elo = get_opt<int>(j, "white_elo");
    pos.black_elo = get_opt<int>(j, "black_elo");
    pos.time_control = get_opt<std::string>(j, "time_control");
    pos.ply_index = j.value("ply", 0);
    pos.active_clock_s = get_opt<int>(j, "active_clock_s");
    if (j.contains("aux")) {
        const json& aux = j.at("aux");
        pos.aux.result = get_opt<int>(aux, "result");
        pos.aux.plies_remaining = get_opt<int>(aux, "plies_remaining");
        pos.aux.termination = get_opt<std::string>(aux, "termination");
        pos.aux.move_delay_s = get_opt<double>(aux, "move_delay_s");
    }
    return pos;
}

std::vector<BenchmarkPosition> load_benchmark(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open benchmark file " + path);
    std::vector<BenchmarkPosition> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) out.push_back(position_from_json(line));
    }
    return out;
}

void save_benchmark(const std::string& path, const std::vector<BenchmarkPosition>& positions) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const BenchmarkPosition& pos : positions) {
        out << to_json_line(pos) << '\n';
    }
}

}  // namespace steerchess::bench
