#include <doctest.h>

#include <map>
#include <numeric>
#include <stdexcept>

#include "steerchess/sampling/unimax.hpp"
#include "steerchess/util/rng.hpp"
#include "waterfill_oracle.hpp"

using namespace steerchess;
using namespace steerchess::sampling;

namespace {

std::vector<GroupSpec> make_groups(const std::vector<std::int64_t>& sizes) {
    std::vector<GroupSpec> out;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        out.push_back(GroupSpec{"g" + std::to_string(i), sizes[i]});
    }
    return out;
}

}  // namespace

TEST_CASE("unimax worked example") {
    const Allocation a = unimax_allocate(make_groups({2, 5, 50}), 10);
    CHECK(a.counts == std::vector<std::int64_t>{2, 4, 4});
    CHECK(a.total() == 10);
}

TEST_CASE("unimax capacity-limited and degenerate cases") {
    CHECK(unimax_allocate(make_groups({10, 20, 30}), 100).counts ==
          std::vector<std::int64_t>{10, 20, 30});
    CHECK(unimax_allocate(make_groups({7}), 3).counts == std::vector<std::int64_t>{3});
    CHECK(unimax_allocate({}, 0).counts.empty());
    CHECK_THROWS_AS(unimax_allocate({}, 5), std::invalid_argument);
    CHECK(unimax_allocate(make_groups({0, 0}), 9).total() == 0);
}

TEST_CASE("unimax agrees with the exact rational oracle") {
    auto rng = util::make_rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + util::uniform_below(rng, 8);
        std::vector<std::pair<std::string, std::int64_t>> raw;
        std::vector<GroupSpec> groups;
        for (std::size_t i = 0; i < n; ++i) {
            const auto size = static_cast<std::int64_t>(util::uniform_below(rng, 51));
            raw.emplace_back("g" + std::to_string(i), size);
            groups.push_back(GroupSpec{raw.back().first, size});
        }
        const auto budget = static_cast<std::int64_t>(util::uniform_below(rng, 201));
        const Allocation got = unimax_allocate(groups, budget);
        const auto want = oracle::oracle_waterfill(raw, budget);
        CAPTURE(trial);
        CAPTURE(budget);
        CHECK(got.counts == want);

        // Cap and budget bounds.
        std::int64_t total_capacity = 0;
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(got.counts[i] <= groups[i].size);
            total_capacity += groups[i].size;
        }
        CHECK(got.total() <= budget);
        if (total_capacity >= budget) CHECK(got.total() == budget);
    }
}

TEST_CASE("unimax is equivariant under group permutation") {
    auto rng = util::make_rng(5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<GroupSpec> groups = make_groups(
            {static_cast<std::int64_t>(util::uniform_below(rng, 40)),
             static_cast<std::int64_t>(util::uniform_below(rng, 40)),
             static_cast<std::int64_t>(util::uniform_below(rng, 40)),
             static_cast<std::int64_t>(util::uniform_below(rng, 40))});
        const auto budget = static_cast<std::int64_t>(util::uniform_below(rng, 80));
        const Allocation base = unimax_allocate(groups, budget);
        std::map<std::string, std::int64_t> by_key;
        for (std::size_t i = 0; i < groups.size(); ++i) by_key[base.keys[i]] = base.counts[i];

        std::vector<GroupSpec> permuted{groups[2], groups[0], groups[3], groups[1]};
        const Allocation perm = unimax_allocate(permuted, budget);
        for (std::size_t i = 0; i < permuted.size(); ++i) {
            CHECK(perm.counts[i] == by_key[perm.keys[i]]);
        }
    }
}

TEST_CASE("two-stage allocation") {
    NestedGroup one{"elo-1500", make_groups({2, 5, 50})};
    const NestedAllocation nested = two_stage_allocate({one}, 10);
    CHECK(nested.counts == std::vector<std::int64_t>{10});
    CHECK(nested.inner[0].counts == std::vector<std::int64_t>{2, 4, 4});

    NestedGroup a{"elo-a", make_groups({30, 30})};
    NestedGroup b{"elo-b", make_groups({30, 30})};
    const NestedAllocation even = two_stage_allocate({a, b}, 10);
    CHECK(even.counts == std::vector<std::int64_t>{5, 5});

    NestedGroup empty1{"e1", make_groups({0, 0})};
    NestedGroup empty2{"e2", make_groups({0})};
    const NestedAllocation zeros = two_stage_allocate({empty1, empty2}, 10);
    CHECK(zeros.counts == std::vector<std::int64_t>{0, 0});
    CHECK(zeros.inner[0].total() == 0);
}

TEST_CASE("ply budget allocation") {
    using Games = std::vector<std::pair<std::string, std::int64_t>>;
    const Games proportional{{"a", 30}, {"b", 70}};
    CHECK(allocate_ply_budget(proportional, 10, PlyBudgetMode::Proportional) ==
          std::vector<std::int64_t>{3, 7});

    const Games capped{{"a", 2}, {"b", 100}, {"c", 100}};
    CHECK(allocate_ply_budget(capped, 10, PlyBudgetMode::Unimax) ==
          std::vector<std::int64_t>{2, 4, 4});

    CHECK(allocate_ply_budget(capped, 0, PlyBudgetMode::Proportional) ==
          std::vector<std::int64_t>{0, 0, 0});

    // Largest-remainder totals are exact.
    auto rng = util::make_rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        Games games;
        std::int64_t total = 0;
        for (int i = 0; i < 5; ++i) {
            const auto len = static_cast<std::int64_t>(util::uniform_below(rng, 120));
            games.emplace_back("g" + std::to_string(i), len);
            total += len;
        }
        const auto budget = static_cast<std::int64_t>(util::uniform_below(rng, 150));
        const auto counts = allocate_ply_budget(games, budget, PlyBudgetMode::Proportional);
        const std::int64_t got = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
        CHECK(got == std::min(budget, total));
        for (std::size_t i = 0; i < games.size(); ++i) CHECK(counts[i] <= games[i].second);
    }
}

TEST_CASE("sample_plies basics") {
    auto rng = util::make_rng(1);
    CHECK(sample_plies(5, 5, rng) == std::vector<std::int64_t>{0, 1, 2, 3, 4});
    CHECK(sample_plies(5, 0, rng).empty());
    CHECK_THROWS_AS(sample_plies(3, 4, rng), std::invalid_argument);

    auto rng_a = util::make_rng(42);
    auto rng_b = util::make_rng(42);
    CHECK(sample_plies(50, 10, rng_a) == sample_plies(50, 10, rng_b));

    auto rng_c = util::make_rng(9);
    const auto draw = sample_plies(50, 10, rng_c);
    CHECK(std::is_sorted(draw.begin(), draw.end()));
    CHECK(std::adjacent_find(draw.begin(), draw.end()) == draw.end());
}

TEST_CASE("sample_plies uniformity chi-square") {
    // 1e5 draws of 3 plies from length-10 games: each index has expectation
    // 3e5/10. Chi-square with 9 dof at alpha=0.001 -> 27.877.
    auto rng = util::make_rng(31337);
    std::array<std::int64_t, 10> histogram{};
    const int trials = 100000;
    for (int t = 0; t < trials; ++t) {
        for (std::int64_t idx : sample_plies(10, 3, rng)) {
            ++histogram[static_cast<std::size_t>(idx)];
        }
    }
    const double expected = 3.0 * trials / 10.0;
    double chi2 = 0.0;
    for (std::int64_t count : histogram) {
        const double d = static_cast<double>(count) - expected;
        chi2 += d * d / expected;
    }
    CHECK(chi2 < 27.877);
}

TEST_CASE("allocation report format") {
    const auto groups = make_groups({2, 5, 50});
    const Allocation a = unimax_allocate(groups, 10);
    const std::string report = allocation_report(groups, a);
    CHECK(report ==
          "key\tsize\tallocated\tsaturated\n"
          "g0\t2\t2\t1\n"
          "g1\t5\t4\t0\n"
          "g2\t50\t4\t0\n");
}
