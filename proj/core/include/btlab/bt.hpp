#pragma once

#include <btlab/bigint.hpp>
#include <btlab/knapsack.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace btlab
{
    enum class Decision : std::uint8_t
    {
        reject = 0,
        accept = 1,
    };

    auto to_string(Decision decision) -> std::string;

    enum class ChoiceEntry : std::uint8_t
    {
        accept,
        reject,
        stop,
    };

    // An ordered list over {accept, reject, stop}; the prefix before the
    // first stop determines a node's children, and entries after stop are
    // never explored. Accept, reject, and stop each appear at most once.
    class ChoiceList
    {
    public:
        ChoiceList(std::initializer_list<ChoiceEntry> entries);
        explicit ChoiceList(std::vector<ChoiceEntry> entries);

        auto entries() const -> const std::vector<ChoiceEntry> & { return entries_; }

        // The decisions to branch on, in order.
        auto explored_prefix() const -> std::vector<Decision>;

    private:
        std::vector<ChoiceEntry> entries_;
    };

    enum class AdaptivityClass
    {
        fixed,          // ordering ignores everything seen so far
        adaptive,       // ordering may read items seen, never decisions
        fully_adaptive, // ordering may read both
    };

    auto to_string(AdaptivityClass cls) -> std::string;

    // What an ordering function is shown. Which of these fields it may
    // actually read is governed by the algorithm's declared class; violations
    // are caught by check_adaptivity, not prevented here.
    struct OrderingView
    {
        std::size_t round;                        // k: how many items are decided
        std::span<const BigInt> items_seen;       // D_1..D_k in path order
        std::span<const Decision> decisions_seen; // a_1..a_k
        const BigInt & capacity;
    };

    // Orderings are represented intensionally: a key evaluated on each
    // remaining candidate, smaller key first. The induced order must be
    // strict on distinct item values; key collisions between distinct values
    // are reported as OrderingTie.
    using OrderingKeyFn = std::function<BigInt(const OrderingView &, const BigInt & candidate)>;

    struct ChoiceView
    {
        std::size_t round;
        std::span<const BigInt> items_seen;
        std::span<const Decision> decisions_seen;
        const BigInt & next_item; // D_{k+1}
        const BigInt & capacity;
    };

    using ChoiceFn = std::function<ChoiceList(const ChoiceView &)>;

    struct BTAlgorithm
    {
        std::string name;
        AdaptivityClass declared_class;
        OrderingKeyFn ordering_key;
        ChoiceFn choice;
    };

    // Rooted ordered tree of partial solutions. Node 0 is the root with the
    // empty label; every other node extends its parent's label by one
    // (item, decision) pair. Dead leaves (no children before depth n) are
    // retained: width is a structural measure.
    class ComputationTree
    {
    public:
        struct Node
        {
            std::int32_t parent = -1;
            std::int32_t first_child = -1;
            std::int32_t num_children = 0;
            std::uint64_t used_items = 0; // bitmask of instance indices on the path
            std::int32_t item_index = -1; // instance index of D_depth, -1 at root
            Decision decision = Decision::reject;
            std::uint16_t depth = 0;
        };

        auto nodes() const -> const std::vector<Node> & { return nodes_; }
        auto level_sizes() const -> const std::vector<std::size_t> & { return level_sizes_; }
        auto width() const -> std::size_t;
        auto item_count() const -> std::size_t { return item_count_; }

        // Path labels from the root to a node, nearest the root first.
        auto path_item_indices(std::size_t node) const -> std::vector<std::size_t>;
        auto path_decisions(std::size_t node) const -> std::vector<Decision>;

        friend auto build_tree(const BTAlgorithm &, const SimpleKnapsackInstance &, std::size_t) -> ComputationTree;

    private:
        std::vector<Node> nodes_;
        std::vector<std::size_t> level_sizes_;
        std::size_t item_count_ = 0;
    };

    inline constexpr std::size_t default_tree_node_budget = std::size_t{1} << 24;

    auto build_tree(const BTAlgorithm & algorithm, const SimpleKnapsackInstance & instance,
        std::size_t max_nodes = default_tree_node_budget) -> ComputationTree;

    auto tree_width(const ComputationTree & tree) -> std::size_t;

    struct LeafSolution
    {
        std::vector<Decision> decisions; // indexed by instance item index
        BigInt sum;                      // total weight of accepted items

        auto operator==(const LeafSolution &) const -> bool = default;
    };

    // Every depth-n leaf's decision vector with its accepted-weight sum,
    // deduplicated and canonically ordered. Callers filter by feasibility.
    auto extract_solutions(const ComputationTree & tree, const SimpleKnapsackInstance & instance)
        -> std::vector<LeafSolution>;

    // Largest feasible leaf sum, if any leaf is feasible.
    auto best_feasible_value(std::span<const LeafSolution> solutions, const BigInt & capacity)
        -> std::optional<BigInt>;

    struct OrderingProbe
    {
        std::vector<BigInt> items_seen;
        std::vector<Decision> decisions_seen;
    };

    struct AdaptivityCheckResult
    {
        bool passed = false;
        // Indices of the first probe pair whose rankings differ although the
        // declared class must be blind to their difference.
        std::optional<std::pair<std::size_t, std::size_t>> violating_pair;
        std::string detail;
    };

    // Evaluates the algorithm's ordering over `candidates` under every probe
    // and compares the induced rankings across probe pairs the declared
    // class must not distinguish.
    auto check_adaptivity(const BTAlgorithm & algorithm, std::span<const BigInt> candidates,
        const BigInt & capacity, std::span<const OrderingProbe> probes) -> AdaptivityCheckResult;

    // Reference algorithms. All are declared adaptive.
    auto greedy_largest_fit() -> BTAlgorithm;
    auto full_backtrack() -> BTAlgorithm;

    // Keeps at most `cap` partial solutions per level, the ones with the
    // largest feasible sums; processes items largest-weight-first.
    auto width_capped(std::size_t cap) -> BTAlgorithm;

    // Same pruning, but processes items in the order of the given sequence
    // (values must be distinct). This is the shape the adversary refutation
    // needs: the revealed prefix must be explored before its completion.
    auto width_capped_following(std::size_t cap, std::vector<BigInt> item_order) -> BTAlgorithm;

    auto reference_algorithm_names() -> std::vector<std::string>;

    // Catalog lookup by name; `cap` is required for the width-capped entries.
    auto make_reference_algorithm(const std::string & name, std::optional<std::size_t> cap,
        const SimpleKnapsackInstance & instance) -> BTAlgorithm;
}
