#include <btlab/errors.hpp>
#include <btlab/knapsack.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace btlab
{
    void SimpleKnapsackInstance::validate() const
    {
        if (items.empty())
            throw std::invalid_argument{"instance has no items"};
        if (capacity < 1)
            throw std::invalid_argument{"capacity must be positive"};
        for (const auto & item : items)
            if (item < 1)
                throw std::invalid_argument{"items must be positive integers, got " + item.str()};
    }

    auto SubsetSelector::from_mask(std::uint64_t mask, std::size_t universe) -> SubsetSelector
    {
        SubsetSelector result;
        for (std::size_t i = 0; i < universe; ++i)
            if (mask >> i & 1u)
                result.indices.push_back(i);
        return result;
    }

    auto SubsetSelector::to_mask(std::size_t universe) const -> std::uint64_t
    {
        validate(universe);
        std::uint64_t mask = 0;
        for (auto i : indices)
            mask |= std::uint64_t{1} << i;
        return mask;
    }

    void SubsetSelector::validate(std::size_t universe) const
    {
        std::size_t previous = 0;
        bool first = true;
        for (auto i : indices) {
            if (i >= universe)
                throw std::out_of_range{"selector index " + std::to_string(i) + " out of range for " + std::to_string(universe) + " items"};
            if (! first && i <= previous)
                throw std::invalid_argument{"selector indices must be strictly increasing"};
            previous = i;
            first = false;
        }
    }

    auto default_signed_sum_budget() -> const BigInt &
    {
        static const BigInt budget = pow3(16);
        return budget;
    }

    SignedSumSet::SignedSumSet() :
        values_{BigInt(0)}
    {
    }

    auto SignedSumSet::of(std::span<const BigInt> items, const BigInt & budget) -> SignedSumSet
    {
        BigInt projected = pow3(static_cast<unsigned>(items.size()));
        if (projected > budget)
            throw BudgetExceeded{"signed-sum set over " + std::to_string(items.size()) + " generators exceeds budget", projected.str()};
        SignedSumSet result;
        for (const auto & item : items)
            result.extend(item, budget);
        return result;
    }

    void SignedSumSet::extend(const BigInt & item, const BigInt & budget)
    {
        if (item < 1)
            throw std::invalid_argument{"signed-sum generators must be positive, got " + item.str()};
        BigInt projected = BigInt(values_.size()) * 3;
        if (projected > budget)
            throw BudgetExceeded{"signed-sum extension would exceed budget", projected.str()};

        // Three-way merge of values-item, values, values+item, deduplicated.
        const auto & v = values_;
        std::vector<BigInt> merged;
        merged.reserve(v.size() * 3);
        std::size_t lo = 0, mid = 0, hi = 0;
        BigInt lo_head = v.empty() ? BigInt(0) : v[0] - item;
        BigInt hi_head = v.empty() ? BigInt(0) : v[0] + item;
        while (lo < v.size() || mid < v.size() || hi < v.size()) {
            int source = -1;
            const BigInt * head = nullptr;
            if (lo < v.size()) {
                head = &lo_head;
                source = 0;
            }
            if (mid < v.size() && (head == nullptr || v[mid] < *head)) {
                head = &v[mid];
                source = 1;
            }
            if (hi < v.size() && (head == nullptr || hi_head < *head)) {
                head = &hi_head;
                source = 2;
            }
            if (merged.empty() || merged.back() != *head)
                merged.push_back(*head);
            switch (source) {
            case 0:
                if (++lo < v.size())
                    lo_head = v[lo] - item;
                break;
            case 1:
                ++mid;
                break;
            default:
                if (++hi < v.size())
                    hi_head = v[hi] + item;
                break;
            }
        }
        values_ = std::move(merged);
        generators_.push_back(item);
    }

    auto SignedSumSet::contains(const BigInt & value) const -> bool
    {
        return std::binary_search(values_.begin(), values_.end(), value);
    }

    auto subset_sum(const SimpleKnapsackInstance & instance, const SubsetSelector & selection) -> BigInt
    {
        selection.validate(instance.size());
        BigInt sum = 0;
        for (auto i : selection.indices)
            sum += instance.items[i];
        return sum;
    }

    namespace
    {
        void require_enumerable(std::size_t count, unsigned cap)
        {
            if (count > cap)
                throw BudgetExceeded{std::to_string(count) + " items exceed the enumeration cap of " + std::to_string(cap),
                    (BigInt(1) << count).str()};
        }

        // Walks all 2^n subsets in Gray-code order so each step adjusts the
        // running sum by a single item.
        template <typename Visit>
        void for_each_subset_sum(std::span<const BigInt> items, Visit && visit)
        {
            const std::uint64_t total = std::uint64_t{1} << items.size();
            std::uint64_t mask = 0;
            BigInt sum = 0;
            visit(mask, sum);
            for (std::uint64_t g = 1; g < total; ++g) {
                const unsigned bit = std::countr_zero(g);
                mask ^= std::uint64_t{1} << bit;
                if (mask >> bit & 1u)
                    sum += items[bit];
                else
                    sum -= items[bit];
                visit(mask, sum);
            }
        }

        auto sorted_selectors(std::vector<std::uint64_t> masks, std::size_t universe) -> std::vector<SubsetSelector>
        {
            std::sort(masks.begin(), masks.end());
            std::vector<SubsetSelector> result;
            result.reserve(masks.size());
            for (auto mask : masks)
                result.push_back(SubsetSelector::from_mask(mask, universe));
            return result;
        }
    }

    auto optimum_bruteforce(const SimpleKnapsackInstance & instance, unsigned enumeration_cap) -> OptimumResult
    {
        instance.validate();
        require_enumerable(instance.size(), enumeration_cap);

        std::optional<BigInt> best;
        std::vector<std::uint64_t> best_masks;
        for_each_subset_sum(instance.items, [&](std::uint64_t mask, const BigInt & sum) {
            if (sum > instance.capacity)
                return;
            if (! best || sum > *best) {
                best = sum;
                best_masks.assign(1, mask);
            }
            else if (sum == *best) {
                best_masks.push_back(mask);
            }
        });
        // The empty subset is always feasible, so best is set.
        return OptimumResult{*best, sorted_selectors(std::move(best_masks), instance.size())};
    }

    auto subsets_summing_to(const SimpleKnapsackInstance & instance, const BigInt & target,
        unsigned enumeration_cap) -> std::vector<SubsetSelector>
    {
        instance.validate();
        require_enumerable(instance.size(), enumeration_cap);

        std::vector<std::uint64_t> masks;
        for_each_subset_sum(instance.items, [&](std::uint64_t mask, const BigInt & sum) {
            if (sum == target)
                masks.push_back(mask);
        });
        return sorted_selectors(std::move(masks), instance.size());
    }

    auto all_subset_sums_distinct(std::span<const BigInt> items, unsigned enumeration_cap) -> bool
    {
        require_enumerable(items.size(), enumeration_cap);
        std::vector<BigInt> sums;
        sums.reserve(std::size_t{1} << items.size());
        for_each_subset_sum(items, [&](std::uint64_t, const BigInt & sum) {
            sums.push_back(sum);
        });
        std::sort(sums.begin(), sums.end());
        return std::adjacent_find(sums.begin(), sums.end()) == sums.end();
    }

    auto signed_sums(std::span<const BigInt> items, const BigInt & budget) -> SignedSumSet
    {
        return SignedSumSet::of(items, budget);
    }
}
