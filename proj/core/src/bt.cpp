#include <btlab/bt.hpp>
#include <btlab/errors.hpp>

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>

namespace btlab
{
    auto to_string(Decision decision) -> std::string
    {
        return decision == Decision::accept ? "accept" : "reject";
    }

    auto to_string(AdaptivityClass cls) -> std::string
    {
        switch (cls) {
        case AdaptivityClass::fixed: return "fixed";
        case AdaptivityClass::adaptive: return "adaptive";
        default: return "fully_adaptive";
        }
    }

    namespace
    {
        void validate_choice_entries(const std::vector<ChoiceEntry> & entries)
        {
            int accepts = 0, rejects = 0, stops = 0;
            for (auto e : entries) {
                switch (e) {
                case ChoiceEntry::accept: ++accepts; break;
                case ChoiceEntry::reject: ++rejects; break;
                case ChoiceEntry::stop: ++stops; break;
                }
            }
            if (accepts > 1 || rejects > 1 || stops > 1)
                throw std::invalid_argument{"choice list repeats an entry"};
        }
    }

    ChoiceList::ChoiceList(std::initializer_list<ChoiceEntry> entries) :
        entries_(entries)
    {
        validate_choice_entries(entries_);
    }

    ChoiceList::ChoiceList(std::vector<ChoiceEntry> entries) :
        entries_(std::move(entries))
    {
        validate_choice_entries(entries_);
    }

    auto ChoiceList::explored_prefix() const -> std::vector<Decision>
    {
        std::vector<Decision> prefix;
        for (auto e : entries_) {
            if (e == ChoiceEntry::stop)
                break;
            prefix.push_back(e == ChoiceEntry::accept ? Decision::accept : Decision::reject);
        }
        return prefix;
    }

    auto ComputationTree::width() const -> std::size_t
    {
        std::size_t best = 0;
        for (auto size : level_sizes_)
            best = std::max(best, size);
        return best;
    }

    auto ComputationTree::path_item_indices(std::size_t node) const -> std::vector<std::size_t>
    {
        std::vector<std::size_t> path;
        for (auto v = static_cast<std::int32_t>(node); v != 0; v = nodes_[v].parent)
            path.push_back(static_cast<std::size_t>(nodes_[v].item_index));
        std::reverse(path.begin(), path.end());
        return path;
    }

    auto ComputationTree::path_decisions(std::size_t node) const -> std::vector<Decision>
    {
        std::vector<Decision> path;
        for (auto v = static_cast<std::int32_t>(node); v != 0; v = nodes_[v].parent)
            path.push_back(nodes_[v].decision);
        std::reverse(path.begin(), path.end());
        return path;
    }

    namespace
    {
        struct RankedCandidate
        {
            BigInt key;
            std::size_t index;
        };

        // The next item per Definition-style semantics: the remaining item
        // whose key is smallest. Key collisions between distinct values break
        // strictness and are rejected; equal values are the same data item,
        // so the lowest index stands in for them.
        auto first_in_ordering(const BTAlgorithm & algorithm, const OrderingView & view,
            const SimpleKnapsackInstance & instance, std::uint64_t used_items) -> std::size_t
        {
            std::vector<RankedCandidate> candidates;
            for (std::size_t i = 0; i < instance.size(); ++i) {
                if (used_items >> i & 1u)
                    continue;
                candidates.push_back(RankedCandidate{algorithm.ordering_key(view, instance.items[i]), i});
            }
            std::sort(candidates.begin(), candidates.end(), [](const RankedCandidate & a, const RankedCandidate & b) {
                if (a.key != b.key)
                    return a.key < b.key;
                return a.index < b.index;
            });
            for (std::size_t i = 0; i + 1 < candidates.size(); ++i) {
                if (candidates[i].key == candidates[i + 1].key &&
                    instance.items[candidates[i].index] != instance.items[candidates[i + 1].index])
                    throw OrderingTie{"ordering ties items " + instance.items[candidates[i].index].str() +
                        " and " + instance.items[candidates[i + 1].index].str()};
            }
            return candidates.front().index;
        }
    }

    auto build_tree(const BTAlgorithm & algorithm, const SimpleKnapsackInstance & instance,
        std::size_t max_nodes) -> ComputationTree
    {
        instance.validate();
        const std::size_t n = instance.size();
        if (n > 63)
            throw BudgetExceeded{"tree builder supports at most 63 items", (BigInt(1) << n).str()};

        ComputationTree tree;
        tree.item_count_ = n;
        auto & nodes = tree.nodes_;
        nodes.push_back(ComputationTree::Node{});

        std::vector<BigInt> path_items;
        std::vector<Decision> path_decisions;
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            const auto node = nodes[v];
            if (node.depth == n)
                continue;

            path_items.clear();
            path_decisions.clear();
            for (auto u = static_cast<std::int32_t>(v); u != 0; u = nodes[u].parent) {
                path_items.push_back(instance.items[nodes[u].item_index]);
                path_decisions.push_back(nodes[u].decision);
            }
            std::reverse(path_items.begin(), path_items.end());
            std::reverse(path_decisions.begin(), path_decisions.end());

            const OrderingView ordering_view{node.depth, path_items, path_decisions, instance.capacity};
            const auto next = first_in_ordering(algorithm, ordering_view, instance, node.used_items);

            const ChoiceView choice_view{node.depth, path_items, path_decisions, instance.items[next], instance.capacity};
            const auto prefix = algorithm.choice(choice_view).explored_prefix();

            if (nodes.size() + prefix.size() > max_nodes)
                throw BudgetExceeded{"computation tree exceeds the node budget", std::to_string(max_nodes)};

            if (! prefix.empty()) {
                nodes[v].first_child = static_cast<std::int32_t>(nodes.size());
                nodes[v].num_children = static_cast<std::int32_t>(prefix.size());
            }
            for (auto decision : prefix) {
                ComputationTree::Node child;
                child.parent = static_cast<std::int32_t>(v);
                child.used_items = node.used_items | (std::uint64_t{1} << next);
                child.item_index = static_cast<std::int32_t>(next);
                child.decision = decision;
                child.depth = static_cast<std::uint16_t>(node.depth + 1);
                nodes.push_back(child);
            }
        }

        tree.level_sizes_.assign(n + 1, 0);
        for (const auto & node : nodes)
            ++tree.level_sizes_[node.depth];
        while (! tree.level_sizes_.empty() && tree.level_sizes_.back() == 0)
            tree.level_sizes_.pop_back();
        return tree;
    }

    auto tree_width(const ComputationTree & tree) -> std::size_t
    {
        return tree.width();
    }

    auto extract_solutions(const ComputationTree & tree, const SimpleKnapsackInstance & instance)
        -> std::vector<LeafSolution>
    {
        const std::size_t n = instance.size();
        std::vector<LeafSolution> solutions;
        const auto & nodes = tree.nodes();
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            if (nodes[v].depth != n)
                continue;
            LeafSolution solution;
            solution.decisions.assign(n, Decision::reject);
            solution.sum = 0;
            for (auto u = static_cast<std::int32_t>(v); u != 0; u = nodes[u].parent) {
                solution.decisions[nodes[u].item_index] = nodes[u].decision;
                if (nodes[u].decision == Decision::accept)
                    solution.sum += instance.items[nodes[u].item_index];
            }
            solutions.push_back(std::move(solution));
        }
        std::sort(solutions.begin(), solutions.end(), [](const LeafSolution & a, const LeafSolution & b) {
            if (a.decisions != b.decisions)
                return a.decisions < b.decisions;
            return a.sum < b.sum;
        });
        solutions.erase(std::unique(solutions.begin(), solutions.end()), solutions.end());
        return solutions;
    }

    auto best_feasible_value(std::span<const LeafSolution> solutions, const BigInt & capacity)
        -> std::optional<BigInt>
    {
        std::optional<BigInt> best;
        for (const auto & solution : solutions) {
            if (solution.sum > capacity)
                continue;
            if (! best || solution.sum > *best)
                best = solution.sum;
        }
        return best;
    }

    namespace
    {
        auto probe_ranking(const BTAlgorithm & algorithm, std::span<const BigInt> candidates,
            const BigInt & capacity, const OrderingProbe & probe) -> std::vector<BigInt>
        {
            const OrderingView view{probe.items_seen.size(), probe.items_seen, probe.decisions_seen, capacity};
            std::vector<std::pair<BigInt, BigInt>> keyed; // (key, value)
            for (const auto & candidate : candidates)
                keyed.emplace_back(algorithm.ordering_key(view, candidate), candidate);
            std::sort(keyed.begin(), keyed.end());
            std::vector<BigInt> ranking;
            for (auto & [key, value] : keyed)
                ranking.push_back(std::move(value));
            return ranking;
        }
    }

    auto check_adaptivity(const BTAlgorithm & algorithm, std::span<const BigInt> candidates,
        const BigInt & capacity, std::span<const OrderingProbe> probes) -> AdaptivityCheckResult
    {
        if (probes.empty())
            throw std::invalid_argument{"adaptivity check needs at least one probe"};

        if (algorithm.declared_class == AdaptivityClass::fully_adaptive)
            return AdaptivityCheckResult{true, std::nullopt, "fully adaptive orderings may read everything"};

        std::vector<std::vector<BigInt>> rankings;
        rankings.reserve(probes.size());
        for (const auto & probe : probes)
            rankings.push_back(probe_ranking(algorithm, candidates, capacity, probe));

        for (std::size_t i = 0; i < probes.size(); ++i) {
            for (std::size_t j = i + 1; j < probes.size(); ++j) {
                const bool same_items = probes[i].items_seen == probes[j].items_seen;
                const bool must_match = algorithm.declared_class == AdaptivityClass::fixed || same_items;
                if (must_match && rankings[i] != rankings[j]) {
                    return AdaptivityCheckResult{false, std::pair{i, j},
                        "declared " + to_string(algorithm.declared_class) +
                            " ordering distinguishes probes " + std::to_string(i) + " and " + std::to_string(j)};
                }
            }
        }
        return AdaptivityCheckResult{true, std::nullopt, ""};
    }

    namespace
    {
        auto accepted_sum(const ChoiceView & view) -> BigInt
        {
            BigInt sum = 0;
            for (std::size_t i = 0; i < view.decisions_seen.size(); ++i)
                if (view.decisions_seen[i] == Decision::accept)
                    sum += view.items_seen[i];
            return sum;
        }

        auto largest_first_key() -> OrderingKeyFn
        {
            return [](const OrderingView &, const BigInt & candidate) { return -candidate; };
        }

        struct CappedPartial
        {
            std::vector<Decision> decisions;
            BigInt sum;
        };

        // Ranked: larger sum first; ties broken toward the lexicographically
        // larger decision vector (accept beats reject) so pruning is a total
        // deterministic rule.
        auto ranks_before(const CappedPartial & a, const CappedPartial & b) -> bool
        {
            if (a.sum != b.sum)
                return a.sum > b.sum;
            return a.decisions > b.decisions;
        }

        // Levels of the capped search over the given item sequence: level j
        // holds the at-most-`cap` feasible partial solutions with the largest
        // sums, each extending a level j-1 survivor.
        auto capped_survivor_levels(std::span<const BigInt> items, const BigInt & capacity, std::size_t cap)
            -> std::vector<std::vector<CappedPartial>>
        {
            std::vector<std::vector<CappedPartial>> levels;
            levels.push_back({CappedPartial{{}, BigInt(0)}});
            for (const auto & item : items) {
                std::vector<CappedPartial> grown;
                for (const auto & partial : levels.back()) {
                    if (partial.sum + item <= capacity) {
                        CappedPartial accepting{partial.decisions, partial.sum + item};
                        accepting.decisions.push_back(Decision::accept);
                        grown.push_back(std::move(accepting));
                    }
                    CappedPartial rejecting{partial.decisions, partial.sum};
                    rejecting.decisions.push_back(Decision::reject);
                    grown.push_back(std::move(rejecting));
                }
                std::sort(grown.begin(), grown.end(), ranks_before);
                if (grown.size() > cap)
                    grown.resize(cap);
                levels.push_back(std::move(grown));
            }
            return levels;
        }

        auto capped_choice(std::size_t cap) -> ChoiceFn
        {
            return [cap](const ChoiceView & view) -> ChoiceList {
                std::vector<BigInt> items(view.items_seen.begin(), view.items_seen.end());
                items.push_back(view.next_item);
                const auto levels = capped_survivor_levels(items, view.capacity, cap);
                const auto & next_level = levels[view.round + 1];

                std::vector<Decision> mine(view.decisions_seen.begin(), view.decisions_seen.end());
                std::vector<ChoiceEntry> entries;
                for (auto decision : {Decision::accept, Decision::reject}) {
                    mine.push_back(decision);
                    for (const auto & survivor : next_level) {
                        if (survivor.decisions == mine) {
                            entries.push_back(decision == Decision::accept ? ChoiceEntry::accept : ChoiceEntry::reject);
                            break;
                        }
                    }
                    mine.pop_back();
                }
                if (entries.empty())
                    return ChoiceList{ChoiceEntry::stop};
                return ChoiceList{std::move(entries)};
            };
        }
    }

    auto greedy_largest_fit() -> BTAlgorithm
    {
        return BTAlgorithm{
            "greedy_largest_fit",
            AdaptivityClass::adaptive,
            largest_first_key(),
            [](const ChoiceView & view) -> ChoiceList {
                if (accepted_sum(view) + view.next_item <= view.capacity)
                    return ChoiceList{ChoiceEntry::accept};
                return ChoiceList{ChoiceEntry::reject};
            }};
    }

    auto full_backtrack() -> BTAlgorithm
    {
        return BTAlgorithm{
            "full_backtrack",
            AdaptivityClass::adaptive,
            largest_first_key(),
            [](const ChoiceView &) -> ChoiceList {
                return ChoiceList{ChoiceEntry::accept, ChoiceEntry::reject};
            }};
    }

    auto width_capped(std::size_t cap) -> BTAlgorithm
    {
        if (cap == 0)
            throw std::invalid_argument{"width cap must be at least 1"};
        return BTAlgorithm{
            "width_capped(" + std::to_string(cap) + ")",
            AdaptivityClass::adaptive,
            largest_first_key(),
            capped_choice(cap)};
    }

    auto width_capped_following(std::size_t cap, std::vector<BigInt> item_order) -> BTAlgorithm
    {
        if (cap == 0)
            throw std::invalid_argument{"width cap must be at least 1"};
        auto ranked = std::make_shared<std::vector<std::pair<BigInt, BigInt>>>(); // (value, rank)
        for (std::size_t i = 0; i < item_order.size(); ++i)
            ranked->emplace_back(item_order[i], BigInt(i));
        std::sort(ranked->begin(), ranked->end());
        for (std::size_t i = 0; i + 1 < ranked->size(); ++i)
            if ((*ranked)[i].first == (*ranked)[i + 1].first)
                throw std::invalid_argument{"item order must not repeat values"};

        return BTAlgorithm{
            "width_capped_input_order(" + std::to_string(cap) + ")",
            AdaptivityClass::adaptive,
            [ranked](const OrderingView &, const BigInt & candidate) -> BigInt {
                auto it = std::lower_bound(ranked->begin(), ranked->end(), candidate,
                    [](const std::pair<BigInt, BigInt> & entry, const BigInt & value) { return entry.first < value; });
                if (it == ranked->end() || it->first != candidate)
                    throw std::invalid_argument{"candidate " + candidate.str() + " not in the followed item order"};
                return it->second;
            },
            capped_choice(cap)};
    }

    auto reference_algorithm_names() -> std::vector<std::string>
    {
        return {"greedy_largest_fit", "full_backtrack", "width_capped", "width_capped_input_order"};
    }

    auto make_reference_algorithm(const std::string & name, std::optional<std::size_t> cap,
        const SimpleKnapsackInstance & instance) -> BTAlgorithm
    {
        if (name == "greedy_largest_fit" || name == "greedy")
            return greedy_largest_fit();
        if (name == "full_backtrack")
            return full_backtrack();
        if (name == "width_capped") {
            if (! cap)
                throw std::invalid_argument{"width_capped needs a cap"};
            return width_capped(*cap);
        }
        if (name == "width_capped_input_order") {
            if (! cap)
                throw std::invalid_argument{"width_capped_input_order needs a cap"};
            return width_capped_following(*cap, instance.items);
        }
        throw std::invalid_argument{"unknown algorithm '" + name + "'"};
    }
}
