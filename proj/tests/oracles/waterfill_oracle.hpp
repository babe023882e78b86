#pragma once

// Exact waterfilling reference with rational arithmetic (epoch cap 1);
// independent of the production allocator. Test-only.

#include <cstdint>
#include <string>
#include <vector>

namespace steerchess::oracle {

// groups: (key, size); returns per-group counts in input order.
std::vector<std::int64_t> oracle_waterfill(
    const std::vector<std::pair<std::string, std::int64_t>>& groups,
    std::int64_t budget);

}  // namespace steerchess::oracle
