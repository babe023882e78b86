#include "steerchess/sampling/unimax.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "steerchess/util/rng.hpp"

namespace steerchess::sampling {

std::int64_t Allocation::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

Allocation unimax_allocate(const std::vector<GroupSpec>& groups, std::int64_t budget,
                           double epoch_cap) {
    if (budget < 0) throw std::invalid_argument("unimax_allocate: negative budget");
    if (epoch_cap < 0) throw std::invalid_argument("unimax_allocate: negative epoch cap");
    if (groups.empty()) {
        if (budget > 0) {
            throw std::invalid_argument("unimax_allocate: no groups for a positive budget");
        }
        return {};
    }
    for (const GroupSpec& g : groups) {
        if (g.size < 0) throw std::invalid_argument("unimax_allocate: negative group size");
    }

    const std::size_t n = groups.size();
    std::vector<double> capacity(n);
    for (std::size_t i = 0; i < n; ++i) {
        capacity[i] = epoch_cap * static_cast<double>(groups[i].size);
    }

    Allocation out;
    out.keys.reserve(n);
    for (const GroupSpec& g : groups) out.keys.push_back(g.key);
    out.counts.assign(n, 0);

    std::vector<bool> saturated(n, false);
    double remaining = static_cast<double>(budget);
    std::size_t unsaturated = n;
    double share = 0.0;

    // Waterfilling fixpoint over real shares.
    while (unsaturated > 0 && remaining > 0) {
        share = remaining / static_cast<double>(unsaturated);
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (saturated[i] || capacity[i] > share) continue;
            out.counts[i] = static_cast<std::int64_t>(std::floor(capacity[i]));
            remaining -= capacity[i];
            saturated[i] = true;
            --unsaturated;
            changed = true;
        }
        if (!changed) break;
    }

    if (unsaturated == 0 || remaining <= 0) {
        return out;
    }

    // Unsaturated groups take the floored share; leftovers go one-by-one to
    // the largest-capacity unsaturated groups in deterministic key order.
    const auto floor_share = static_cast<std::int64_t>(std::floor(share));
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (saturated[i]) continue;
        out.counts[i] = floor_share;
        assigned += floor_share;
    }
    std::int64_t leftover =
        static_cast<std::int64_t>(std::floor(remaining)) - assigned +
        0;  // remaining already excludes saturated capacity
    // Guard against floating point drift.
    leftover = std::max<std::int64_t>(leftover, 0);

    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
        if (!saturated[i]) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (capacity[a] != capacity[b]) return capacity[a] > capacity[b];
        return groups[a].key < groups[b].key;
    });
    for (std::size_t i : order) {
        if (leftover == 0) break;
        if (static_cast<double>(out.counts[i] + 1) <= capacity[i]) {
            ++out.counts[i];
            --leftover;
        }
    }
    return out;
}

NestedAllocation two_stage_allocate(const std::vector<NestedGroup>& groups,
                                    std::int64_t budget, double epoch_cap) {
    std::vector<GroupSpec> outer;
    outer.reserve(groups.size());
    for (const NestedGroup& g : groups) {
        std::int64_t size = 0;
        for (const GroupSpec& sub : g.subgroups) size += sub.size;
        outer.push_back(GroupSpec{g.key, size});
    }
    const Allocation stage1 = unimax_allocate(outer, budget, epoch_cap);

    NestedAllocation out;
    out.keys = stage1.keys;
    out.counts = stage1.counts;
    out.inner.reserve(groups.size());
    for (std::size_t i = 0; i < groups.size(); ++i) {
        out.inner.push_back(
            unimax_allocate(groups[i].subgroups, stage1.counts[i], epoch_cap));
    }
    return out;
}

std::vector<std::int64_t> allocate_ply_budget(
    const std::vector<std::pair<std::string, std::int64_t>>& games,
    std::int64_t budget, PlyBudgetMode mode) {
    if (mode == PlyBudgetMode::Unimax) {
        std::vector<GroupSpec> groups;
        groups.reserve(games.size());
        for (const auto& [id, length] : games) groups.push_back(GroupSpec{id, length});
        return unimax_allocate(groups, budget).counts;
    }

    // Largest-remainder apportionment by length, capped at each game's
    // length when the budget exceeds the total.
    std::vector<std::int64_t> counts(games.size(), 0);
    std::int64_t total_length = 0;
    for (const auto& [id, length] : games) {
        if (length < 0) throw std::invalid_argument("negative game length");
        total_length += length;
    }
    if (total_length == 0 || budget <= 0) return counts;
    if (budget >= total_length) {
        for (std::size_t i = 0; i < games.size(); ++i) counts[i] = games[i].second;
        return counts;
    }

    std::vector<double> remainders(games.size());
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < games.size(); ++i) {
        const double quota = static_cast<double>(budget) *
                             static_cast<double>(games[i].second) /
                             static_cast<double>(total_length);
        counts[i] = static_cast<std::int64_t>(std::floor(quota));
        remainders[i] = quota - static_cast<double>(counts[i]);
        assigned += counts[i];
    }
    std::vector<std::size_t> order(games.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (remainders[a] != remainders[b]) return remainders[a] > remainders[b];
        return games[a].first < games[b].first;
    });
    for (std::size_t i : order) {
        if (assigned >= budget) break;
        if (counts[i] < games[i].second) {
            ++counts[i];
            ++assigned;
        }
    }
    return counts;
}

std::vector<std::int64_t> sample_plies(std::int64_t game_length, std::int64_t count,
                                       std::mt19937_64& rng) {
    if (count > game_length) {
        throw std::invalid_argument("sample_plies: count exceeds game length");
    }
    if (count < 0) throw std::invalid_argument("sample_plies: negative count");
    // Partial Fisher-Yates over the index vector.
    std::vector<std::int64_t> indices(static_cast<std::size_t>(game_length));
    std::iota(indices.begin(), indices.end(), 0);
    for (std::int64_t i = 0; i < count; ++i) {
        const std::uint64_t j =
            static_cast<std::uint64_t>(i) +
            util::uniform_below(rng, static_cast<std::uint64_t>(game_length - i));
        std::swap(indices[static_cast<std::size_t>(i)], indices[static_cast<std::size_t>(j)]);
    }
    indices.resize(static_cast<std::size_t>(count));
    std::sort(indices.begin(), indices.end());
    return indices;
}

std::string allocation_report(const std::vector<GroupSpec>& groups,
                              const Allocation& allocation, double epoch_cap) {
    std::ostringstream out;
    out << "key\tsize\tallocated\tsaturated\n";
    for (std::size_t i = 0; i < groups.size(); ++i) {
        const double capacity = epoch_cap * static_cast<double>(groups[i].size);
        const bool saturated =
            static_cast<double>(allocation.counts[i]) >= std::floor(capacity);
        out << groups[i].key << '\t' << groups[i].size << '\t' << allocation.counts[i]
            << '\t' << (saturated ? 1 : 0) << '\n';
    }
    return out.str();
}

}  // namespace steerchess::sampling
