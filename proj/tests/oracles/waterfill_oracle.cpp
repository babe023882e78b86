#include "waterfill_oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace steerchess::oracle {

std::vector<std::int64_t> oracle_waterfill(
    const std::vector<std::pair<std::string, std::int64_t>>& groups,
    std::int64_t budget) {
    const std::size_t n = groups.size();
    if (n == 0) {
        if (budget > 0) throw std::invalid_argument("no groups");
        return {};
    }
    std::vector<std::int64_t> counts(n, 0);
    std::vector<bool> done(n, false);

    // Exact fixpoint: the share is the rational remaining/unsat; a group
    // saturates when size * unsat <= remaining.
    std::int64_t remaining = budget;
    std::size_t unsat = n;
    while (true) {
        if (unsat == 0 || remaining <= 0) return counts;
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            // size_i <= remaining / unsat  <=>  size_i * unsat <= remaining
            if (groups[i].second * static_cast<std::int64_t>(unsat) <= remaining) {
                counts[i] = groups[i].second;
                remaining -= groups[i].second;
                done[i] = true;
                --unsat;
                changed = true;
            }
        }
        if (!changed) break;
    }

    // remaining/unsat is now strictly below every unsaturated size.
    const std::int64_t base = remaining / static_cast<std::int64_t>(unsat);
    std::int64_t leftover = remaining % static_cast<std::int64_t>(unsat);
    for (std::size_t i = 0; i < n; ++i) {
        if (!done[i]) counts[i] = base;
    }
    // Leftovers to largest-capacity groups, ties by key.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
        if (!done[i]) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (groups[a].second != groups[b].second) return groups[a].second > groups[b].second;
        return groups[a].first < groups[b].first;
    });
    for (std::size_t i : order) {
        if (leftover == 0) break;
        if (counts[i] + 1 <= groups[i].second) {
            ++counts[i];
            --leftover;
        }
    }
    return counts;
}

}  // namespace steerchess::oracle
