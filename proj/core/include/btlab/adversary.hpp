#pragma once

#include <btlab/bigint.hpp>
#include <btlab/knapsack.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace btlab
{
    // Parameters of the lower-bound game. The solver reveals beta*n items,
    // every size-(gamma*n) subset of them is made indispensable by a
    // completion of (1-beta)*n items, and alpha scales the open item domain
    // (0, alpha*capacity/n). The slack radius controls both the completion
    // window and the closing-pair scan.
    struct AdversaryParams
    {
        unsigned n = 0;
        Rational beta;
        Rational gamma;
        Rational alpha;
        BigInt capacity;
        BigInt slack; // default 3^n

        // (1/2, 1/4, 3) with capacity 10*n*3^n and slack 3^n.
        static auto standard(unsigned n) -> AdversaryParams;

        auto default_capacity() const -> BigInt; // 10*n*3^n
        auto default_slack() const -> BigInt;    // 3^n

        // These require that the divisibility checks passed.
        auto revealed_rounds() const -> unsigned;   // beta*n
        auto subset_size() const -> unsigned;       // gamma*n
        auto completion_size() const -> unsigned;   // (1-beta)*n
    };

    struct FeasibilityReport
    {
        bool feasible = false;
        std::string violation; // first violated inequality, empty when feasible
    };

    // Exact-rational check of every inequality the construction relies on:
    // parameter constraints, divisibility, window containment in the item
    // domain for the worst-case subset, and the closing-pair counting margin.
    auto params_feasible(const AdversaryParams & params) -> FeasibilityReport;

    enum class ForbiddenRule
    {
        none,
        subset_sum_difference, // value is a signed sum of the revealed items
        completes_to_capacity, // capacity - value is a subset sum
    };

    auto to_string(ForbiddenRule rule) -> std::string;

    // The game after some number of rounds: the revealed items plus the
    // incrementally maintained machinery that decides which future items the
    // adversary has eliminated.
    class GameState
    {
    public:
        explicit GameState(AdversaryParams params);

        auto params() const -> const AdversaryParams & { return params_; }
        auto picks() const -> const std::vector<BigInt> & { return picks_; }
        auto round() const -> std::size_t { return picks_.size(); }
        auto pick_signed_sums() const -> const SignedSumSet & { return signed_sums_; }
        auto pick_subset_sums() const -> const std::vector<BigInt> & { return subset_sums_; }

        // Why `value` is unavailable to the solver, or none.
        auto forbidden(const BigInt & value) const -> ForbiddenRule;

        // Reveal one item. Throws std::invalid_argument naming the violated
        // rule if the pick is out of range or forbidden, std::logic_error if
        // the game is already over.
        void play(const BigInt & pick, const BigInt & signed_sum_budget = default_signed_sum_budget());

    private:
        AdversaryParams params_;
        std::vector<BigInt> picks_;
        SignedSumSet signed_sums_;
        std::vector<BigInt> subset_sums_; // sorted, all distinct by invariant
    };

    using SolverFn = std::function<BigInt(const GameState &)>;

    // Scans 1, 2, 3, ... and returns the first pick the adversary allows.
    auto smallest_feasible_solver() -> SolverFn;

    // Uniform over the allowed range via rejection sampling on a fixed
    // 64-bit generator, so runs are reproducible across platforms.
    auto random_feasible_solver(std::uint64_t seed) -> SolverFn;

    auto solver_by_name(const std::string & name, std::uint64_t seed) -> SolverFn;

    // Plays all beta*n rounds. Throws InfeasibleParams when params_feasible
    // fails.
    auto play_game(const SolverFn & solver, const AdversaryParams & params,
        const BigInt & signed_sum_budget = default_signed_sum_budget()) -> GameState;

    // The completion record for one revealed subset: bulk items picked near
    // the window center plus the closing pair.
    struct ConstructionState
    {
        SubsetSelector target;            // indices into the revealed items
        std::vector<BigInt> completion;   // bulk items in pick order, then the pair
        Rational center;                  // (capacity - target sum) / completion size
        BigInt window_lo;                 // ceil(center - slack)
        BigInt window_hi;                 // floor(center + slack)
        BigInt bulk_sum;                  // sum of the bulk items
        BigInt pair_target;               // what the closing pair must sum to
        BigInt pair_low;
        BigInt pair_high;
    };

    // Builds the completion making `target` indispensable. Requires
    // |target| = gamma*n and feasible parameters; a scan failure after a
    // feasibility pass is an InternalCheckFailure.
    auto construct_completion(const GameState & state, const SubsetSelector & target,
        const BigInt & signed_sum_budget = default_signed_sum_budget()) -> ConstructionState;

    struct Certificate
    {
        SimpleKnapsackInstance instance; // revealed items then completion
        SubsetSelector designated;       // the unique subset summing to capacity
        bool verified = false;
        BigInt enumeration;              // 2^n when verification ran
    };

    // Brute-force check that the designated subset is the unique one summing
    // to the capacity.
    auto verify_unique_solution(const GameState & state, const ConstructionState & construction,
        unsigned enumeration_cap = default_enumeration_cap) -> Certificate;

    // Builds an instance (revealed items then completion) without verifying.
    auto completed_instance(const GameState & state, const ConstructionState & construction)
        -> SimpleKnapsackInstance;

    struct WitnessEntry
    {
        SubsetSelector target;
        std::vector<BigInt> completion;
        BigInt pair_low;
        BigInt pair_high;
        bool verified = false;
        BigInt enumeration;
        std::optional<std::string> failure;
    };

    struct WitnessReport
    {
        AdversaryParams params;
        std::vector<BigInt> picks;
        std::vector<WitnessEntry> entries; // canonical subset order
        std::size_t successes = 0;
        BigInt bound;                      // the implied width lower bound
        bool complete = false;
    };

    // Runs the construction and verification for every size-(gamma*n)
    // subset of the revealed items.
    auto witness_all_subsets(const GameState & state,
        unsigned enumeration_cap = default_enumeration_cap,
        const BigInt & signed_sum_budget = default_signed_sum_budget()) -> WitnessReport;

    struct RefutationRecord
    {
        std::size_t cap = 0;
        SubsetSelector excluded;           // pattern absent from the capped run
        SimpleKnapsackInstance instance;   // revealed items then completion
        BigInt capped_best;                // best value the capped search reaches
        BigInt optimum;                    // brute-force optimum (the capacity)
        bool refuted = false;              // capped_best < optimum
    };

    // Demonstrates that a width-`cap` search with cap < binomial(beta*n,
    // gamma*n) misses some indispensable pattern: completes the instance for
    // an absent pattern and records the capped search falling short of the
    // optimum. Requires cap >= 1 and cap < binomial(beta*n, gamma*n).
    auto refute_capped_solver(const GameState & state, std::size_t cap,
        unsigned enumeration_cap = default_enumeration_cap,
        const BigInt & signed_sum_budget = default_signed_sum_budget()) -> RefutationRecord;
}
