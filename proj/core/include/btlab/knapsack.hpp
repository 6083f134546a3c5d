#pragma once

#include <btlab/bigint.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace btlab
{
    // Simple knapsack: every item's value equals its weight, all weights are
    // positive exact integers, and the goal is the largest subset sum that
    // does not exceed the capacity.
    struct SimpleKnapsackInstance
    {
        std::vector<BigInt> items;
        BigInt capacity;
        // Opaque provenance object (serialized JSON), echoed through file
        // round-trips untouched.
        std::optional<std::string> provenance;

        auto size() const -> std::size_t { return items.size(); }

        // Throws std::invalid_argument unless all items >= 1 and capacity >= 1.
        void validate() const;
    };

    // A subset of item indices, kept sorted and duplicate-free.
    struct SubsetSelector
    {
        std::vector<std::size_t> indices;

        static auto from_mask(std::uint64_t mask, std::size_t universe) -> SubsetSelector;
        auto to_mask(std::size_t universe) const -> std::uint64_t;
        void validate(std::size_t universe) const;

        auto operator==(const SubsetSelector &) const -> bool = default;
    };

    // Enumeration over all 2^n subsets; refuse anything larger than this
    // unless the caller raises the cap explicitly.
    inline constexpr unsigned default_enumeration_cap = 26;

    // Signed-sum sets hold up to 3^k elements for k generators; the default
    // budget admits k <= 16.
    auto default_signed_sum_budget() -> const BigInt &;

    // All integers expressible as sum(eps_i * x_i) with eps_i in {-1, 0, 1}.
    // This equals the set of all pairwise subset-sum differences of the
    // generators. Stored as a sorted vector; extension by one generator is a
    // three-way merge of v-y, v, v+y.
    class SignedSumSet
    {
    public:
        SignedSumSet();

        static auto of(std::span<const BigInt> items, const BigInt & budget = default_signed_sum_budget()) -> SignedSumSet;

        void extend(const BigInt & item, const BigInt & budget = default_signed_sum_budget());

        auto contains(const BigInt & value) const -> bool;
        auto values() const -> const std::vector<BigInt> & { return values_; }
        auto generators() const -> const std::vector<BigInt> & { return generators_; }
        auto size() const -> std::size_t { return values_.size(); }

    private:
        std::vector<BigInt> values_; // sorted ascending, unique, contains 0
        std::vector<BigInt> generators_;
    };

    auto subset_sum(const SimpleKnapsackInstance & instance, const SubsetSelector & selection) -> BigInt;

    struct OptimumResult
    {
        BigInt value;                          // best subset sum <= capacity
        std::vector<SubsetSelector> selectors; // every selector achieving it, canonical order
    };

    // Exhaustive over all 2^n subsets.
    auto optimum_bruteforce(const SimpleKnapsackInstance & instance,
        unsigned enumeration_cap = default_enumeration_cap) -> OptimumResult;

    auto subsets_summing_to(const SimpleKnapsackInstance & instance, const BigInt & target,
        unsigned enumeration_cap = default_enumeration_cap) -> std::vector<SubsetSelector>;

    // True iff the 2^k subset sums are pairwise distinct.
    auto all_subset_sums_distinct(std::span<const BigInt> items,
        unsigned enumeration_cap = default_enumeration_cap) -> bool;

    auto signed_sums(std::span<const BigInt> items,
        const BigInt & budget = default_signed_sum_budget()) -> SignedSumSet;
}
