#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace btlab
{
    // Every oracle in this project is exponential by design; anything that
    // would silently blow past an explicit cap throws this instead.
    struct BudgetExceeded : std::runtime_error
    {
        std::string required;

        BudgetExceeded(const std::string & what, std::string required_estimate) :
            std::runtime_error(what + " (required budget: " + required_estimate + ")"),
            required(std::move(required_estimate))
        {
        }
    };

    // An ordering function compared two distinct item values as equal.
    struct OrderingTie : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // Adversary parameters failed a feasibility inequality.
    struct InfeasibleParams : std::runtime_error
    {
        std::string violation;

        explicit InfeasibleParams(std::string violated) :
            std::runtime_error("infeasible parameters: " + violated),
            violation(std::move(violated))
        {
        }
    };

    struct ParseError : std::runtime_error
    {
        using std::runtime_error::runtime_error;
    };

    // A construction phase could not complete even though the parameters were
    // certified feasible. Indicates a bug, never user error.
    struct InternalCheckFailure : std::logic_error
    {
        using std::logic_error::logic_error;
    };
}
