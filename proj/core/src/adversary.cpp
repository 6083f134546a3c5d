#include <btlab/adversary.hpp>
#include <btlab/bt.hpp>
#include <btlab/errors.hpp>

#include <algorithm>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>

namespace btlab
{
    namespace
    {
        auto rational_times_n_as_unsigned(const Rational & fraction, unsigned n, const char * what) -> unsigned
        {
            const Rational scaled = fraction * n;
            if (! is_integer(scaled))
                throw std::logic_error{std::string{what} + " is not an integer"};
            return numerator(scaled).convert_to<unsigned>();
        }
    }

    auto AdversaryParams::standard(unsigned n) -> AdversaryParams
    {
        AdversaryParams params;
        params.n = n;
        params.beta = Rational(1, 2);
        params.gamma = Rational(1, 4);
        params.alpha = 3;
        params.capacity = params.default_capacity();
        params.slack = params.default_slack();
        return params;
    }

    auto AdversaryParams::default_capacity() const -> BigInt
    {
        return BigInt(10) * n * pow3(n);
    }

    auto AdversaryParams::default_slack() const -> BigInt
    {
        return pow3(n);
    }

    auto AdversaryParams::revealed_rounds() const -> unsigned
    {
        return rational_times_n_as_unsigned(beta, n, "beta*n");
    }

    auto AdversaryParams::subset_size() const -> unsigned
    {
        return rational_times_n_as_unsigned(gamma, n, "gamma*n");
    }

    auto AdversaryParams::completion_size() const -> unsigned
    {
        return rational_times_n_as_unsigned(Rational(1) - beta, n, "(1-beta)*n");
    }

    auto params_feasible(const AdversaryParams & params) -> FeasibilityReport
    {
        const auto fail = [](std::string violation) {
            return FeasibilityReport{false, std::move(violation)};
        };

        if (params.n < 2)
            return fail("n must be at least 2");
        if (params.capacity < 1)
            return fail("capacity must be positive");
        if (params.slack < 1)
            return fail("slack must be positive");
        if (! (params.beta > params.gamma))
            return fail("beta > gamma violated");
        if (! (params.gamma > 0))
            return fail("gamma > 0 violated");
        if (! (params.beta + params.gamma < 1))
            return fail("beta + gamma < 1 violated");
        if (! (params.alpha * (Rational(1) - params.beta) > 1))
            return fail("alpha*(1-beta) > 1 violated");
        if (! (params.alpha * params.gamma < 1))
            return fail("alpha*gamma < 1 violated");
        if (! is_integer(params.beta * params.n))
            return fail("beta*n must be an integer");
        if (! is_integer(params.gamma * params.n))
            return fail("gamma*n must be an integer");
        if (params.revealed_rounds() < 1)
            return fail("beta*n must be at least 1");
        if (params.subset_size() < 1)
            return fail("gamma*n must be at least 1");
        if (params.completion_size() < 2)
            return fail("(1-beta)*n must be at least 2");

        // Window containment for the worst-case revealed subset, with margin
        // for the closing-pair scan: the smallest candidate stays positive
        // and the largest stays below alpha*capacity/n.
        const Rational capacity{params.capacity};
        const Rational slack{params.slack};
        const Rational completion_count{params.completion_size()};
        const Rational scan_margin = Rational(5, 2) * slack + 1;

        const Rational lowest = (capacity - params.gamma * params.alpha * capacity) / completion_count - scan_margin;
        if (! (lowest > 0))
            return fail("window containment violated: (capacity - gamma*alpha*capacity)/((1-beta)*n) - (5/2)*slack - 1 > 0 fails");

        const Rational highest = capacity / completion_count + scan_margin;
        if (! (highest < params.alpha * capacity / params.n))
            return fail("window containment violated: capacity/((1-beta)*n) + (5/2)*slack + 1 < alpha*capacity/n fails");

        // Counting margin for the closing-pair scan: at most 2*3^(n-2) of the
        // slack+1 candidate pairs can be eliminated.
        if (! (2 * pow3(params.n - 2) < params.slack + 1))
            return fail("closing-pair counting margin violated: 2*3^(n-2) < slack + 1 fails");

        return FeasibilityReport{true, ""};
    }

    auto to_string(ForbiddenRule rule) -> std::string
    {
        switch (rule) {
        case ForbiddenRule::none: return "none";
        case ForbiddenRule::subset_sum_difference: return "difference of two revealed subset sums";
        default: return "completes a revealed subset to the capacity";
        }
    }

    GameState::GameState(AdversaryParams params) :
        params_(std::move(params)),
        subset_sums_{BigInt(0)}
    {
    }

    auto GameState::forbidden(const BigInt & value) const -> ForbiddenRule
    {
        if (signed_sums_.contains(abs(value)))
            return ForbiddenRule::subset_sum_difference;
        if (std::binary_search(subset_sums_.begin(), subset_sums_.end(), params_.capacity - value))
            return ForbiddenRule::completes_to_capacity;
        return ForbiddenRule::none;
    }

    namespace
    {
        // Merge sums with sums+pick; a collision would mean two subsets share
        // a sum, which the rules are supposed to prevent.
        void extend_subset_sums(std::vector<BigInt> & sums, const BigInt & pick)
        {
            std::vector<BigInt> merged;
            merged.reserve(sums.size() * 2);
            std::size_t plain = 0, shifted = 0;
            BigInt shifted_head = sums.empty() ? BigInt(0) : sums[0] + pick;
            while (plain < sums.size() || shifted < sums.size()) {
                if (shifted >= sums.size() || (plain < sums.size() && sums[plain] < shifted_head)) {
                    merged.push_back(sums[plain++]);
                }
                else if (plain >= sums.size() || shifted_head < sums[plain]) {
                    merged.push_back(shifted_head);
                    if (++shifted < sums.size())
                        shifted_head = sums[shifted] + pick;
                }
                else {
                    throw InternalCheckFailure{"subset sums collided after an allowed pick"};
                }
            }
            sums = std::move(merged);
        }
    }

    void GameState::play(const BigInt & pick, const BigInt & signed_sum_budget)
    {
        if (round() >= params_.revealed_rounds())
            throw std::logic_error{"game over: all rounds already played"};
        if (pick <= 0 || Rational(pick * params_.n) >= params_.alpha * Rational(params_.capacity))
            throw std::invalid_argument{"pick " + pick.str() + " outside the item domain (0, alpha*capacity/n)"};
        if (auto rule = forbidden(pick); rule != ForbiddenRule::none)
            throw std::invalid_argument{"pick " + pick.str() + " is forbidden: " + to_string(rule)};

        signed_sums_.extend(pick, signed_sum_budget);
        extend_subset_sums(subset_sums_, pick);
        picks_.push_back(pick);
    }

    auto smallest_feasible_solver() -> SolverFn
    {
        return [](const GameState & state) -> BigInt {
            const auto & params = state.params();
            const Rational domain_top = params.alpha * Rational(params.capacity);
            BigInt candidate = 1;
            while (state.forbidden(candidate) != ForbiddenRule::none) {
                ++candidate;
                if (Rational(candidate * params.n) >= domain_top)
                    throw InternalCheckFailure{"solver exhausted the item domain"};
            }
            return candidate;
        };
    }

    namespace
    {
        // Uniform integer in [1, top] built from raw 64-bit engine words, so
        // the sequence is identical on every platform.
        auto uniform_positive(std::mt19937_64 & engine, const BigInt & top) -> BigInt
        {
            const unsigned bits = msb(top) + 1;
            const unsigned words = (bits + 63) / 64;
            while (true) {
                BigInt draw = 0;
                for (unsigned w = 0; w < words; ++w) {
                    draw <<= 64;
                    draw += BigInt(engine());
                }
                draw >>= (words * 64 - bits);
                if (draw < top)
                    return draw + 1;
            }
        }
    }

    auto random_feasible_solver(std::uint64_t seed) -> SolverFn
    {
        auto engine = std::make_shared<std::mt19937_64>(seed);
        return [engine](const GameState & state) -> BigInt {
            const auto & params = state.params();
            // Largest integer strictly below alpha*capacity/n.
            const BigInt top = ceil_rational(params.alpha * Rational(params.capacity) / params.n) - 1;
            if (top < 1)
                throw InternalCheckFailure{"item domain is empty"};
            for (unsigned attempts = 0; attempts < 1'000'000; ++attempts) {
                BigInt candidate = uniform_positive(*engine, top);
                if (state.forbidden(candidate) == ForbiddenRule::none)
                    return candidate;
            }
            throw InternalCheckFailure{"random solver failed to find an allowed pick"};
        };
    }

    auto solver_by_name(const std::string & name, std::uint64_t seed) -> SolverFn
    {
        if (name == "smallest")
            return smallest_feasible_solver();
        if (name == "random")
            return random_feasible_solver(seed);
        throw std::invalid_argument{"unknown solver '" + name + "'"};
    }

    auto play_game(const SolverFn & solver, const AdversaryParams & params,
        const BigInt & signed_sum_budget) -> GameState
    {
        if (auto report = params_feasible(params); ! report.feasible)
            throw InfeasibleParams{report.violation};

        GameState state{params};
        const unsigned rounds = params.revealed_rounds();
        for (unsigned round = 0; round < rounds; ++round)
            state.play(solver(state), signed_sum_budget);
        return state;
    }

    auto construct_completion(const GameState & state, const SubsetSelector & target,
        const BigInt & signed_sum_budget) -> ConstructionState
    {
        const auto & params = state.params();
        if (state.round() != params.revealed_rounds())
            throw std::invalid_argument{"construction needs a finished game"};
        target.validate(state.picks().size());
        if (target.indices.size() != params.subset_size())
            throw std::invalid_argument{"target subset must have gamma*n = " +
                std::to_string(params.subset_size()) + " indices, got " + std::to_string(target.indices.size())};

        const unsigned completion_count = params.completion_size();
        BigInt target_sum = 0;
        for (auto i : target.indices)
            target_sum += state.picks()[i];

        ConstructionState result;
        result.target = target;
        result.center = Rational(params.capacity - target_sum, BigInt(completion_count));
        result.window_lo = ceil_rational(result.center - params.slack);
        result.window_hi = floor_rational(result.center + params.slack);

        // Running elimination machinery over revealed items plus the
        // completion so far.
        SignedSumSet differences = state.pick_signed_sums();
        std::vector<BigInt> sums = state.pick_subset_sums();
        const auto forbidden_here = [&](const BigInt & value) {
            return differences.contains(value) ||
                std::binary_search(sums.begin(), sums.end(), params.capacity - value);
        };

        // Bulk phase: pick completion_count - 2 integers from the window,
        // each time the allowed integer nearest the center on whichever side
        // keeps the running deviation smallest.
        Rational deviation = 0;
        for (unsigned step = 0; step + 2 < completion_count; ++step) {
            BigInt above = ceil_rational(result.center);
            while (forbidden_here(above)) {
                ++above;
                if (above > result.window_hi)
                    throw InternalCheckFailure{"bulk scan above the center left the window"};
            }
            BigInt below = floor_rational(result.center);
            while (forbidden_here(below)) {
                --below;
                if (below < result.window_lo)
                    throw InternalCheckFailure{"bulk scan below the center left the window"};
            }
            const Rational deviation_above = deviation + (Rational(above) - result.center);
            const Rational deviation_below = deviation + (Rational(below) - result.center);
            const BigInt & pick = abs(deviation_above) <= abs(deviation_below) ? above : below;
            deviation = abs(deviation_above) <= abs(deviation_below) ? deviation_above : deviation_below;

            differences.extend(pick, signed_sum_budget);
            extend_subset_sums(sums, pick);
            result.completion.push_back(pick);
            result.bulk_sum += pick;
        }

        if (abs(Rational(result.bulk_sum) - result.center * (completion_count - 2)) > Rational(params.slack))
            throw InternalCheckFailure{"bulk deviation exceeded the slack radius"};

        // Closing pair: scan outward from half the remainder until both
        // halves avoid every signed sum of the items picked so far. The
        // counting margin certified by params_feasible guarantees a hit
        // within slack + 1 steps.
        result.pair_target = params.capacity - target_sum - result.bulk_sum;
        if (result.pair_target < 2)
            throw InternalCheckFailure{"closing-pair target too small"};
        const BigInt half_low = result.pair_target / 2;
        const BigInt half_high = result.pair_target - half_low;

        bool found = false;
        for (BigInt offset = 1; offset <= params.slack + 1; ++offset) {
            const BigInt low = half_low - offset;
            const BigInt high = half_high + offset;
            if (low < 1)
                throw InternalCheckFailure{"closing-pair scan left the item domain"};
            if (! differences.contains(low) && ! differences.contains(high)) {
                result.pair_low = low;
                result.pair_high = high;
                found = true;
                break;
            }
        }
        if (! found)
            throw InternalCheckFailure{"no closing pair within the counting margin"};
        if (Rational(result.pair_high * params.n) >= params.alpha * Rational(params.capacity))
            throw InternalCheckFailure{"closing pair left the item domain above"};

        result.completion.push_back(result.pair_low);
        result.completion.push_back(result.pair_high);
        return result;
    }

    auto completed_instance(const GameState & state, const ConstructionState & construction)
        -> SimpleKnapsackInstance
    {
        SimpleKnapsackInstance instance;
        instance.items = state.picks();
        instance.items.insert(instance.items.end(), construction.completion.begin(), construction.completion.end());
        instance.capacity = state.params().capacity;
        return instance;
    }

    auto verify_unique_solution(const GameState & state, const ConstructionState & construction,
        unsigned enumeration_cap) -> Certificate
    {
        Certificate certificate;
        certificate.instance = completed_instance(state, construction);
        certificate.designated = construction.target;
        for (std::size_t i = 0; i < construction.completion.size(); ++i)
            certificate.designated.indices.push_back(state.picks().size() + i);
        certificate.enumeration = BigInt(1) << certificate.instance.size();

        const auto matches = subsets_summing_to(certificate.instance, certificate.instance.capacity, enumeration_cap);
        certificate.verified = matches.size() == 1 && matches.front() == certificate.designated;
        return certificate;
    }

    namespace
    {
        // Lexicographic k-combinations of {0..n-1}; stop early when the
        // visitor returns false.
        template <typename Visit>
        void for_each_combination(std::size_t n, std::size_t k, Visit && visit)
        {
            std::vector<std::size_t> combination(k);
            for (std::size_t i = 0; i < k; ++i)
                combination[i] = i;
            while (true) {
                if (! visit(std::as_const(combination)))
                    return;
                std::size_t i = k;
                while (i > 0 && combination[i - 1] == n - k + i - 1)
                    --i;
                if (i == 0)
                    return;
                ++combination[i - 1];
                for (std::size_t j = i; j < k; ++j)
                    combination[j] = combination[j - 1] + 1;
            }
        }
    }

    auto witness_all_subsets(const GameState & state, unsigned enumeration_cap,
        const BigInt & signed_sum_budget) -> WitnessReport
    {
        WitnessReport report;
        report.params = state.params();
        report.picks = state.picks();

        const auto expected = binomial(state.params().revealed_rounds(), state.params().subset_size());

        for_each_combination(state.picks().size(), state.params().subset_size(),
            [&](const std::vector<std::size_t> & combination) {
                WitnessEntry entry;
                entry.target = SubsetSelector{combination};
                try {
                    const auto construction = construct_completion(state, entry.target, signed_sum_budget);
                    const auto certificate = verify_unique_solution(state, construction, enumeration_cap);
                    entry.completion = construction.completion;
                    entry.pair_low = construction.pair_low;
                    entry.pair_high = construction.pair_high;
                    entry.verified = certificate.verified;
                    entry.enumeration = certificate.enumeration;
                    if (! certificate.verified)
                        entry.failure = "enumeration found a different subset summing to the capacity";
                }
                catch (const InternalCheckFailure & e) {
                    entry.failure = e.what();
                }
                if (entry.verified)
                    ++report.successes;
                report.entries.push_back(std::move(entry));
                return true;
            });

        report.bound = BigInt(report.successes);
        report.complete = BigInt(report.successes) == expected;
        return report;
    }

    auto refute_capped_solver(const GameState & state, std::size_t cap,
        unsigned enumeration_cap, const BigInt & signed_sum_budget) -> RefutationRecord
    {
        const auto & params = state.params();
        const auto total_patterns = binomial(params.revealed_rounds(), params.subset_size());
        if (cap == 0)
            throw std::invalid_argument{"width cap must be at least 1"};
        if (BigInt(cap) >= total_patterns)
            throw std::invalid_argument{"width cap " + std::to_string(cap) +
                " is not below binomial(beta*n, gamma*n) = " + total_patterns.str()};

        // Capped run over the revealed prefix alone; its depth-(beta*n)
        // survivors are the only accept patterns the search still holds.
        SimpleKnapsackInstance prefix;
        prefix.items = state.picks();
        prefix.capacity = params.capacity;
        const auto prefix_tree = build_tree(width_capped_following(cap, prefix.items), prefix);

        std::set<std::uint64_t> survivor_patterns;
        const auto & nodes = prefix_tree.nodes();
        for (std::size_t v = 0; v < nodes.size(); ++v) {
            if (nodes[v].depth != prefix.size())
                continue;
            std::uint64_t pattern = 0;
            for (auto u = static_cast<std::int32_t>(v); u != 0; u = nodes[u].parent)
                if (nodes[u].decision == Decision::accept)
                    pattern |= std::uint64_t{1} << nodes[u].item_index;
            survivor_patterns.insert(pattern);
        }

        // Some accept-exactly-this pattern of the right size must be absent:
        // there are more of them than survivors.
        std::optional<SubsetSelector> excluded;
        for_each_combination(prefix.size(), params.subset_size(),
            [&](const std::vector<std::size_t> & combination) {
                SubsetSelector candidate{combination};
                if (! survivor_patterns.contains(candidate.to_mask(prefix.size()))) {
                    excluded = std::move(candidate);
                    return false;
                }
                return true;
            });
        if (! excluded)
            throw std::logic_error{"every pattern survived; the cap cannot be refuted"};

        RefutationRecord record;
        record.cap = cap;
        record.excluded = *excluded;

        const auto construction = construct_completion(state, *excluded, signed_sum_budget);
        record.instance = completed_instance(state, construction);

        const auto full_tree = build_tree(width_capped_following(cap, record.instance.items), record.instance);
        const auto solutions = extract_solutions(full_tree, record.instance);
        record.capped_best = best_feasible_value(solutions, record.instance.capacity).value_or(BigInt(0));
        record.optimum = optimum_bruteforce(record.instance, enumeration_cap).value;
        record.refuted = record.capped_best < record.optimum;
        return record;
    }
}
