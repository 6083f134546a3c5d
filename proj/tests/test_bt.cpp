#include <btlab/bt.hpp>
#include <btlab/errors.hpp>
#include <btlab/knapsack.hpp>

#include "test_util.hpp"

#include <doctest.h>

#include <set>

using namespace btlab;
using test::Rng;

namespace
{
    // Structural invariant of every computation tree: each node extends its
    // parent by exactly one item, siblings share the item, child ranges are
    // consistent.
    void check_well_formed(const ComputationTree & tree)
    {
        const auto & nodes = tree.nodes();
        REQUIRE(! nodes.empty());
        CHECK(nodes[0].parent == -1);
        CHECK(nodes[0].depth == 0);
        CHECK(nodes[0].used_items == 0);
        for (std::size_t v = 1; v < nodes.size(); ++v) {
            const auto & node = nodes[v];
            const auto & parent = nodes[node.parent];
            CHECK(node.depth == parent.depth + 1);
            REQUIRE(node.item_index >= 0);
            const auto bit = std::uint64_t{1} << node.item_index;
            CHECK((parent.used_items & bit) == 0);
            CHECK(node.used_items == (parent.used_items | bit));
            // v lies in its parent's child range
            CHECK(static_cast<std::int32_t>(v) >= parent.first_child);
            CHECK(static_cast<std::int32_t>(v) < parent.first_child + parent.num_children);
        }
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            // children of one node share the next item
            const auto & node = nodes[v];
            for (std::int32_t c = 1; c < node.num_children; ++c)
                CHECK(nodes[node.first_child + c].item_index == nodes[node.first_child].item_index);
        }
    }

    auto always_stop() -> BTAlgorithm
    {
        return BTAlgorithm{
            "always_stop",
            AdaptivityClass::adaptive,
            [](const OrderingView &, const BigInt & candidate) { return -candidate; },
            [](const ChoiceView &) { return ChoiceList{ChoiceEntry::stop}; }};
    }

    auto accept_all() -> BTAlgorithm
    {
        return BTAlgorithm{
            "accept_all",
            AdaptivityClass::adaptive,
            [](const OrderingView &, const BigInt & candidate) { return -candidate; },
            [](const ChoiceView &) { return ChoiceList{ChoiceEntry::accept}; }};
    }
}

TEST_CASE("greedy trees are paths")
{
    const auto instance = test::make_instance({4, 7, 2}, 9);
    const auto tree = build_tree(greedy_largest_fit(), instance);
    check_well_formed(tree);
    REQUIRE(tree.level_sizes().size() == 4);
    for (auto size : tree.level_sizes())
        CHECK(size == 1);
    CHECK(tree_width(tree) == 1);

    const auto solutions = extract_solutions(tree, instance);
    REQUIRE(solutions.size() == 1);
    CHECK(solutions[0].sum == 9); // 7 then 2, the 4 no longer fits
}

TEST_CASE("full backtrack builds the complete binary tree")
{
    const auto instance = test::make_instance({4, 7, 2}, 9);
    const auto tree = build_tree(full_backtrack(), instance);
    check_well_formed(tree);
    CHECK(tree.level_sizes() == std::vector<std::size_t>{1, 2, 4, 8});
    CHECK(tree_width(tree) == 8);
}

TEST_CASE("a stop at the root leaves the bare root")
{
    const auto instance = test::make_instance({4, 7, 2}, 9);
    const auto tree = build_tree(always_stop(), instance);
    CHECK(tree.nodes().size() == 1);
    CHECK(tree.level_sizes() == std::vector<std::size_t>{1});
    CHECK(extract_solutions(tree, instance).empty());
}

TEST_CASE("extract_solutions lists every full-depth leaf with its sum")
{
    SUBCASE("full backtrack over two items is the power set")
    {
        const auto instance = test::make_instance({1, 2}, 3);
        const auto tree = build_tree(full_backtrack(), instance);
        const auto solutions = extract_solutions(tree, instance);
        REQUIRE(solutions.size() == 4);
        std::set<BigInt> sums;
        for (const auto & solution : solutions)
            sums.insert(solution.sum);
        CHECK(sums == std::set<BigInt>{0, 1, 2, 3});
        CHECK(best_feasible_value(solutions, instance.capacity) == BigInt(3));
    }

    SUBCASE("an infeasible-only tree has no feasible value")
    {
        const auto instance = test::make_instance({1, 2}, 2);
        const auto tree = build_tree(accept_all(), instance);
        const auto solutions = extract_solutions(tree, instance);
        REQUIRE(solutions.size() == 1);
        CHECK(solutions[0].sum == 3);
        CHECK(! best_feasible_value(solutions, instance.capacity));
    }

    SUBCASE("dead leaves below full depth yield nothing")
    {
        // stop after the first decision level
        const auto stop_late = BTAlgorithm{
            "stop_late",
            AdaptivityClass::adaptive,
            [](const OrderingView &, const BigInt & candidate) { return -candidate; },
            [](const ChoiceView & view) {
                if (view.round >= 1)
                    return ChoiceList{ChoiceEntry::stop};
                return ChoiceList{ChoiceEntry::accept, ChoiceEntry::reject};
            }};
        const auto instance = test::make_instance({1, 2}, 3);
        const auto tree = build_tree(stop_late, instance);
        CHECK(tree.level_sizes() == std::vector<std::size_t>{1, 2});
        CHECK(extract_solutions(tree, instance).empty());
        CHECK(tree_width(tree) == 2); // dead leaves still count structurally
    }
}

TEST_CASE("full backtrack leaves are the power set for random instances")
{
    Rng rng{555};
    for (int trial = 0; trial < 12; ++trial) {
        auto instance = test::random_instance(rng, 9);
        const auto tree = build_tree(full_backtrack(), instance);
        check_well_formed(tree);
        const std::size_t n = instance.size();
        CHECK(tree_width(tree) == (std::size_t{1} << n));

        const auto solutions = extract_solutions(tree, instance);
        CHECK(solutions.size() == (std::size_t{1} << n));
        std::set<std::uint64_t> masks;
        for (const auto & solution : solutions) {
            std::uint64_t mask = 0;
            BigInt sum = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (solution.decisions[i] == Decision::accept) {
                    mask |= std::uint64_t{1} << i;
                    sum += instance.items[i];
                }
            }
            CHECK(sum == solution.sum);
            masks.insert(mask);
        }
        CHECK(masks.size() == (std::size_t{1} << n));
    }
}

TEST_CASE("adaptive trees reveal the same item sequence on every branch")
{
    Rng rng{808};
    for (const auto & algorithm : {full_backtrack(), width_capped(3)}) {
        auto instance = test::random_instance(rng, 8);
        const auto tree = build_tree(algorithm, instance);
        const auto & nodes = tree.nodes();
        std::vector<std::int32_t> item_at_depth(instance.size() + 1, -1);
        for (std::size_t v = 1; v < nodes.size(); ++v) {
            auto & expected = item_at_depth[nodes[v].depth];
            if (expected == -1)
                expected = nodes[v].item_index;
            else
                CHECK(expected == nodes[v].item_index);
        }
    }
}

TEST_CASE("ordering ties between distinct values are rejected")
{
    const auto constant_key = BTAlgorithm{
        "constant_key",
        AdaptivityClass::adaptive,
        [](const OrderingView &, const BigInt &) { return BigInt(0); },
        [](const ChoiceView &) { return ChoiceList{ChoiceEntry::accept}; }};
    const auto instance = test::make_instance({4, 7}, 9);
    CHECK_THROWS_AS(build_tree(constant_key, instance), OrderingTie);

    try {
        build_tree(constant_key, instance);
    }
    catch (const OrderingTie & e) {
        const std::string what = e.what();
        CHECK(what.find("4") != std::string::npos);
        CHECK(what.find("7") != std::string::npos);
    }

    // Equal values are the same data item, not a tie.
    const auto duplicates = test::make_instance({5, 5}, 9);
    const auto tree = build_tree(greedy_largest_fit(), duplicates);
    CHECK(tree_width(tree) == 1);
    const auto solutions = extract_solutions(tree, duplicates);
    REQUIRE(solutions.size() == 1);
    CHECK(solutions[0].sum == 5);
}

TEST_CASE("check_adaptivity compares rankings across blind probe pairs")
{
    const std::vector<BigInt> candidates{3, 9, 6};
    const BigInt capacity = 50;

    std::vector<OrderingProbe> probes;
    probes.push_back(OrderingProbe{{BigInt(1)}, {Decision::accept}});
    probes.push_back(OrderingProbe{{BigInt(1)}, {Decision::reject}});
    probes.push_back(OrderingProbe{{BigInt(2)}, {Decision::accept}});

    SUBCASE("weight-only orderings pass any probe set")
    {
        const auto result = check_adaptivity(greedy_largest_fit(), candidates, capacity, probes);
        CHECK(result.passed);

        auto fixed = greedy_largest_fit();
        fixed.declared_class = AdaptivityClass::fixed;
        CHECK(check_adaptivity(fixed, candidates, capacity, probes).passed);
    }

    SUBCASE("a declared adaptive ordering that reads decisions fails")
    {
        const auto cheating = BTAlgorithm{
            "cheating",
            AdaptivityClass::adaptive,
            [](const OrderingView & view, const BigInt & candidate) {
                // smallest-first after an accept, largest-first otherwise
                int accepted = 0;
                for (auto decision : view.decisions_seen)
                    if (decision == Decision::accept)
                        ++accepted;
                return accepted % 2 == 1 ? candidate : -candidate;
            },
            [](const ChoiceView &) { return ChoiceList{ChoiceEntry::accept}; }};
        const auto result = check_adaptivity(cheating, candidates, capacity, probes);
        CHECK(! result.passed);
        REQUIRE(result.violating_pair);
        CHECK(result.violating_pair->first == 0);
        CHECK(result.violating_pair->second == 1);
    }

    SUBCASE("an adaptive ordering may read items")
    {
        const auto item_reader = BTAlgorithm{
            "item_reader",
            AdaptivityClass::adaptive,
            [](const OrderingView & view, const BigInt & candidate) {
                BigInt seen = 0;
                for (const auto & item : view.items_seen)
                    seen += item;
                return seen % 2 == 1 ? candidate : -candidate;
            },
            [](const ChoiceView &) { return ChoiceList{ChoiceEntry::accept}; }};
        CHECK(check_adaptivity(item_reader, candidates, capacity, probes).passed);

        // The same ordering declared fixed is a violation.
        auto lying = item_reader;
        lying.declared_class = AdaptivityClass::fixed;
        const auto result = check_adaptivity(lying, candidates, capacity, probes);
        CHECK(! result.passed);
        REQUIRE(result.violating_pair);
    }

    SUBCASE("fully adaptive passes vacuously")
    {
        const auto anything = BTAlgorithm{
            "anything",
            AdaptivityClass::fully_adaptive,
            [](const OrderingView & view, const BigInt & candidate) {
                return BigInt(view.decisions_seen.size()) * 7 - candidate;
            },
            [](const ChoiceView &) { return ChoiceList{ChoiceEntry::accept}; }};
        CHECK(check_adaptivity(anything, candidates, capacity, probes).passed);
    }

    SUBCASE("an empty probe set is rejected")
    {
        CHECK_THROWS_AS(check_adaptivity(greedy_largest_fit(), candidates, capacity, {}), std::invalid_argument);
    }
}

TEST_CASE("width_capped trees never exceed the cap")
{
    Rng rng{9090};
    for (int trial = 0; trial < 15; ++trial) {
        auto instance = test::random_instance(rng, 9);
        const auto cap = rng.in(1, 6);
        const auto tree = build_tree(width_capped(cap), instance);
        check_well_formed(tree);
        CHECK(tree_width(tree) <= cap);
    }
}

TEST_CASE("width_capped(1) matches greedy on distinct-valued instances")
{
    Rng rng{31337};
    for (int trial = 0; trial < 15; ++trial) {
        // distinct values so tie-breaking cannot differ
        std::set<std::uint64_t> raw;
        while (raw.size() < 6)
            raw.insert(rng.in(1, 200));
        SimpleKnapsackInstance instance;
        for (auto value : raw)
            instance.items.push_back(BigInt(value));
        instance.capacity = BigInt(rng.in(1, 400));

        const auto capped = extract_solutions(build_tree(width_capped(1), instance), instance);
        const auto greedy = extract_solutions(build_tree(greedy_largest_fit(), instance), instance);
        REQUIRE(capped.size() == 1);
        REQUIRE(greedy.size() == 1);
        CHECK(capped[0] == greedy[0]);
    }
}

TEST_CASE("full backtrack maximization equals the brute-force optimum")
{
    Rng rng{123456};
    for (int trial = 0; trial < 50; ++trial) {
        auto instance = test::random_instance(rng, 10);
        const auto tree = build_tree(full_backtrack(), instance);
        const auto solutions = extract_solutions(tree, instance);
        const auto best = best_feasible_value(solutions, instance.capacity);
        REQUIRE(best);
        CHECK(*best == optimum_bruteforce(instance).value);
    }
}

TEST_CASE("tree node budgets fail loudly")
{
    SimpleKnapsackInstance instance;
    for (int i = 0; i < 16; ++i)
        instance.items.push_back(BigInt(i + 1));
    instance.capacity = 1000;
    CHECK_THROWS_AS(build_tree(full_backtrack(), instance, 1000), BudgetExceeded);
}

TEST_CASE("the reference catalog resolves names")
{
    const auto instance = test::make_instance({1, 2, 4}, 5);
    CHECK(make_reference_algorithm("greedy_largest_fit", std::nullopt, instance).name == "greedy_largest_fit");
    CHECK(make_reference_algorithm("full_backtrack", std::nullopt, instance).name == "full_backtrack");
    CHECK(make_reference_algorithm("width_capped", 3, instance).name == "width_capped(3)");
    CHECK(make_reference_algorithm("width_capped_input_order", 2, instance).name == "width_capped_input_order(2)");
    CHECK_THROWS_AS(make_reference_algorithm("width_capped", std::nullopt, instance), std::invalid_argument);
    CHECK_THROWS_AS(make_reference_algorithm("nope", std::nullopt, instance), std::invalid_argument);
    CHECK_THROWS_AS(width_capped(0), std::invalid_argument);
}

TEST_CASE("choice lists reject repeated entries")
{
    CHECK_THROWS_AS(ChoiceList({ChoiceEntry::accept, ChoiceEntry::accept}), std::invalid_argument);
    CHECK_THROWS_AS(ChoiceList({ChoiceEntry::stop, ChoiceEntry::stop}), std::invalid_argument);
    const ChoiceList list{ChoiceEntry::reject, ChoiceEntry::stop, ChoiceEntry::accept};
    CHECK(list.explored_prefix() == std::vector<Decision>{Decision::reject});
}
