#pragma once

#include <btlab/bigint.hpp>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace btlab::bounds
{
    // Exponential growth rate of binomial(beta*n, gamma*n):
    // beta*ln(beta) - gamma*ln(gamma) - (beta-gamma)*ln(beta-gamma).
    // The last term is taken as 0 in the gamma -> beta limit.
    auto entropy_exponent(double beta, double gamma) -> double;

    // The exponent along the boundary beta = 1 - gamma, and its derivative
    // 2*ln(1-2*gamma) - ln(gamma) - ln(1-gamma). Domain (0, 1/2).
    auto boundary_exponent(double gamma) -> double;
    auto boundary_exponent_derivative(double gamma) -> double;

    struct GammaOptimum
    {
        double closed_form;  // (5 - sqrt(5)) / 10
        double numeric_root; // bisection root of the boundary derivative
    };

    auto optimal_gamma() -> GammaOptimum;

    // exp(boundary_exponent(optimal gamma)); numerically the golden ratio.
    auto optimal_base() -> double;

    // True iff the exponent is strictly increasing along the grid for this
    // fixed gamma. Grid points must lie in (gamma, 1 - gamma].
    auto monotonicity_check(double gamma, std::span<const double> beta_grid) -> bool;

    auto binomial_exact(unsigned n, unsigned k) -> BigInt;

    struct StirlingEstimate
    {
        double full;       // the three-factorial Stirling form
        double simplified; // constant * base^n / sqrt(n)
        double constant;   // sqrt(beta / (2*pi*gamma*(beta-gamma)))
    };

    auto stirling_binomial(double beta, double gamma, unsigned n) -> StirlingEstimate;

    struct AlphaInterval
    {
        double lower;  // 1 / (1 - beta)
        double upper;  // 1 / gamma
        double midpoint;
    };

    // Nonempty exactly when beta + gamma < 1.
    auto alpha_interval(double beta, double gamma) -> AlphaInterval;

    struct BoundConfig
    {
        double beta;
        double gamma;
        std::optional<unsigned> n;
    };

    struct BoundRow
    {
        double beta = 0;
        double gamma = 0;
        std::optional<unsigned> n;
        std::optional<double> exponent;      // entropy exponent value
        std::optional<double> base;          // e^exponent
        std::optional<double> exponent_log2; // exponent / ln(2)
        std::optional<BigInt> binomial;
        std::optional<double> stirling;
        std::optional<double> ratio;         // exact / stirling
        std::optional<std::string> error;
    };

    // One row per config; a bad config yields a row carrying its error while
    // the others are unaffected.
    auto bound_table(std::span<const BoundConfig> configs) -> std::vector<BoundRow>;
}
