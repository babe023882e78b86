#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace steerchess::sampling {

struct GroupSpec {
    std::string key;
    std::int64_t size = 0;  // available unit count (games or plies)
};

struct Allocation {
    std::vector<std::string> keys;
    std::vector<std::int64_t> counts;

    std::int64_t total() const;
};

// Waterfilling with a per-group cap of epoch_cap * size: the remaining
// budget is shared equally among unsaturated groups, groups whose capacity
// falls at or below the share take their full capacity, and the loop
// repeats until a fixpoint. Fractional shares are floored and leftover
// units go one-by-one to the largest-capacity unsaturated groups, ties
// broken by key order. Throws std::invalid_argument on an empty group list
// with a positive budget.
Allocation unimax_allocate(const std::vector<GroupSpec>& groups, std::int64_t budget,
                           double epoch_cap = 1.0);

struct NestedGroup {
    std::string key;
    std::vector<GroupSpec> subgroups;
};

struct NestedAllocation {
    std::vector<std::string> keys;
    std::vector<std::int64_t> counts;  // stage-1 result per outer group
    std::vector<Allocation> inner;     // stage-2 result within each group
};

// Stage 1 across the outer groups (sizes = sum of subgroup sizes), then an
// independent unimax split of each group's allocation across its subgroups.
NestedAllocation two_stage_allocate(const std::vector<NestedGroup>& groups,
                                    std::int64_t budget, double epoch_cap = 1.0);

enum class PlyBudgetMode { Proportional, Unimax };

// Proportional = largest-remainder apportionment by game length;
// Unimax = unimax_allocate with sizes = lengths.
std::vector<std::int64_t> allocate_ply_budget(
    const std::vector<std::pair<std::string, std::int64_t>>& games,
    std::int64_t budget, PlyBudgetMode mode);

// Sorted distinct ply indices drawn uniformly without replacement.
// Throws std::invalid_argument when count > game_length.
std::vector<std::int64_t> sample_plies(std::int64_t game_length, std::int64_t count,
                                       std::mt19937_64& rng);

// Structured-text report: key, size, allocated, saturation flag per line.
std::string allocation_report(const std::vector<GroupSpec>& groups,
                              const Allocation& allocation, double epoch_cap = 1.0);

}  // namespace steerchess::sampling
