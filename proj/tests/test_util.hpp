#pragma once

#include <btlab/bigint.hpp>
#include <btlab/knapsack.hpp>

#include <bit>
#include <cstdint>
#include <random>
#include <vector>

namespace btlab::test
{
    // mt19937_64 with a rejection-sampled bound so draws are identical on
    // every platform (std::uniform_int_distribution is not portable).
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) :
            engine_(seed)
        {
        }

        auto below(std::uint64_t bound) -> std::uint64_t
        {
            if (bound <= 1)
                return 0;
            const int bits = 64 - std::countl_zero(bound - 1);
            while (true) {
                const auto draw = engine_() >> (64 - bits);
                if (draw < bound)
                    return draw;
            }
        }

        auto in(std::uint64_t lo, std::uint64_t hi) -> std::uint64_t
        {
            return lo + below(hi - lo + 1);
        }

    private:
        std::mt19937_64 engine_;
    };

    inline auto random_items(Rng & rng, std::size_t count, std::uint64_t max_weight = 40) -> std::vector<BigInt>
    {
        std::vector<BigInt> items;
        items.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            items.push_back(BigInt(rng.in(1, max_weight)));
        return items;
    }

    inline auto random_instance(Rng & rng, std::size_t max_items = 12) -> SimpleKnapsackInstance
    {
        const auto count = rng.in(1, max_items);
        SimpleKnapsackInstance instance;
        instance.items = random_items(rng, count);
        BigInt total = 0;
        for (const auto & item : instance.items)
            total += item;
        instance.capacity = BigInt(rng.in(1, total.convert_to<std::uint64_t>()));
        return instance;
    }

    inline auto make_instance(std::initializer_list<int> items, int capacity) -> SimpleKnapsackInstance
    {
        SimpleKnapsackInstance instance;
        for (auto item : items)
            instance.items.push_back(BigInt(item));
        instance.capacity = capacity;
        return instance;
    }
}
