#include <btlab/bounds.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

using namespace btlab;
using doctest::Approx;

TEST_CASE("the entropy exponent matches its closed form")
{
    // The Theorem-1 point: base sqrt(2).
    CHECK(bounds::entropy_exponent(0.5, 0.25) == Approx(std::numbers::ln2 / 2).epsilon(1e-14));
    CHECK(std::exp(bounds::entropy_exponent(0.5, 0.25)) == Approx(std::numbers::sqrt2).epsilon(1e-13));

    CHECK(bounds::entropy_exponent(0.75, 0.25) == Approx(0.4773856262211096).epsilon(1e-12));

    // gamma -> beta limit: binomial(k, k) growth is flat.
    CHECK(bounds::entropy_exponent(0.4, 0.4) == Approx(0.0));

    CHECK_THROWS_AS(bounds::entropy_exponent(0.25, 0.5), std::domain_error);
    CHECK_THROWS_AS(bounds::entropy_exponent(0.5, 0.0), std::domain_error);
    CHECK_THROWS_AS(bounds::entropy_exponent(1.0, 0.5), std::domain_error);
}

TEST_CASE("the log transform is faithful")
{
    std::mt19937_64 engine{2024};
    std::uniform_real_distribution<double> unit(0.02, 0.98);
    for (int trial = 0; trial < 200; ++trial) {
        double beta = unit(engine), gamma = unit(engine);
        if (gamma >= beta)
            std::swap(beta, gamma);
        if (gamma == beta)
            continue;
        const double direct = std::pow(beta, beta) / (std::pow(gamma, gamma) * std::pow(beta - gamma, beta - gamma));
        CHECK(std::exp(bounds::entropy_exponent(beta, gamma)) == Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("the boundary restriction agrees with the exponent")
{
    for (double gamma = 0.05; gamma < 0.5; gamma += 0.025)
        CHECK(bounds::boundary_exponent(gamma) == Approx(bounds::entropy_exponent(1 - gamma, gamma)).epsilon(1e-14));

    CHECK(bounds::boundary_exponent(0.25) == Approx(0.4773856262211096).epsilon(1e-12));
    CHECK_THROWS_AS(bounds::boundary_exponent(0.5), std::domain_error);
    CHECK_THROWS_AS(bounds::boundary_exponent(0.0), std::domain_error);
}

TEST_CASE("the boundary derivative matches its formula and finite differences")
{
    CHECK(bounds::boundary_exponent_derivative(0.25) == Approx(std::log(4.0 / 3.0)).epsilon(1e-14));

    const double h = 1e-6;
    for (double gamma = 0.05; gamma <= 0.45; gamma += 0.01) {
        const double central =
            (bounds::boundary_exponent(gamma + h) - bounds::boundary_exponent(gamma - h)) / (2 * h);
        CHECK(bounds::boundary_exponent_derivative(gamma) == Approx(central).epsilon(0).scale(1).margin(1e-6));
    }
}

TEST_CASE("the optimal gamma is the quadratic root in (0, 1/2)")
{
    const auto optimum = bounds::optimal_gamma();
    const double expected = (5.0 - std::sqrt(5.0)) / 10.0;
    CHECK(optimum.closed_form == Approx(expected).epsilon(1e-15));
    CHECK(std::abs(optimum.numeric_root - optimum.closed_form) < 1e-10);

    // It solves 5g^2 - 5g + 1 = 0.
    const double g = optimum.closed_form;
    CHECK(5 * g * g - 5 * g + 1 == Approx(0.0).scale(1).margin(1e-14));

    // The derivative vanishes there.
    CHECK(bounds::boundary_exponent_derivative(g) == Approx(0.0).scale(1).margin(1e-12));

    // The other quadratic root lies outside the domain entirely.
    const double other = (5.0 + std::sqrt(5.0)) / 10.0;
    CHECK(other > 0.5);
    CHECK_THROWS_AS(bounds::boundary_exponent_derivative(other), std::domain_error);
}

TEST_CASE("the optimal base is the golden ratio")
{
    const double base = bounds::optimal_base();
    CHECK(std::abs(base - (1 + std::sqrt(5.0)) / 2) < 1e-9);
    CHECK(std::abs(std::log2(base) - 0.6942419) < 1e-6);

    // A non-optimal interior point stays strictly below the maximum.
    const double at_quarter = std::exp(bounds::boundary_exponent(0.25));
    CHECK(at_quarter == Approx(1.6117).epsilon(1e-4));
    CHECK(at_quarter < base);
}

TEST_CASE("the exponent is strictly increasing in beta")
{
    const std::vector<double> grid{0.3, 0.5, 0.7, 0.75};
    CHECK(bounds::monotonicity_check(0.25, grid));

    // Analytic derivative ln(beta) - ln(beta - gamma) stays positive.
    for (auto beta : grid)
        CHECK(std::log(beta) - std::log(beta - 0.25) > 0);

    const std::vector<double> single{0.5};
    CHECK(bounds::monotonicity_check(0.25, single));

    const std::vector<double> outside{0.8};
    CHECK_THROWS_AS(bounds::monotonicity_check(0.25, outside), std::domain_error);
}

TEST_CASE("exact binomials")
{
    CHECK(bounds::binomial_exact(4, 2) == 6);
    CHECK(bounds::binomial_exact(6, 3) == 20);
    CHECK(bounds::binomial_exact(8, 4) == 70);
    CHECK(bounds::binomial_exact(0, 0) == 1);
    CHECK(bounds::binomial_exact(80, 40) == BigInt("107507208733336176461620"));
    CHECK_THROWS_AS(bounds::binomial_exact(3, 4), std::domain_error);
}

TEST_CASE("Stirling estimates approach the exact binomial")
{
    const auto small = bounds::stirling_binomial(0.5, 0.25, 8);
    CHECK(small.full == Approx(6.3831).epsilon(1e-4));
    CHECK(6.0 / small.full == Approx(0.94).epsilon(1e-2));

    // At (1/2, 1/4) the simplified constant is 2/sqrt(pi).
    CHECK(small.constant == Approx(2 / std::sqrt(std::numbers::pi)).epsilon(1e-14));

    double previous_ratio = 0;
    for (unsigned n : {40u, 80u, 160u, 320u}) {
        const auto estimate = bounds::stirling_binomial(0.5, 0.25, n);
        const double exact = bounds::binomial_exact(n / 2, n / 4).convert_to<double>();
        const double ratio = exact / estimate.full;
        CHECK(ratio > previous_ratio); // monotone toward 1 from below
        CHECK(ratio < 1.0);
        previous_ratio = ratio;

        // The simplified form tracks the full form.
        CHECK(estimate.simplified == Approx(estimate.full).epsilon(0.01));
    }

    CHECK_THROWS_AS(bounds::stirling_binomial(0.5, 0.25, 2), std::domain_error);
    CHECK_THROWS_AS(bounds::stirling_binomial(0.25, 0.5, 40), std::domain_error);
}

TEST_CASE("alpha intervals")
{
    const auto standard = bounds::alpha_interval(0.5, 0.25);
    CHECK(standard.lower == Approx(2.0));
    CHECK(standard.upper == Approx(4.0));
    CHECK(standard.midpoint == Approx(3.0));

    const double gamma_star = (5.0 - std::sqrt(5.0)) / 10.0;
    const auto near_optimal = bounds::alpha_interval(1 - gamma_star - 0.01, gamma_star);
    CHECK(near_optimal.lower == Approx(3.4917).epsilon(1e-4));
    CHECK(near_optimal.upper == Approx(3.6180).epsilon(1e-4));

    CHECK_THROWS_AS(bounds::alpha_interval(0.75, 0.25), std::domain_error);
}

TEST_CASE("bound tables isolate per-row failures")
{
    std::vector<bounds::BoundConfig> configs{
        {0.5, 0.25, 8},
        {0.25, 0.5, std::nullopt}, // invalid: beta < gamma
        {0.5, 0.25, std::nullopt},
    };
    const auto rows = bounds::bound_table(configs);
    REQUIRE(rows.size() == 3);

    CHECK(rows[0].binomial == BigInt(6));
    CHECK(rows[0].exponent_log2 == Approx(0.5));
    CHECK(! rows[0].error);

    CHECK(rows[1].error);
    CHECK(! rows[1].exponent);

    CHECK(! rows[2].error);
    CHECK(! rows[2].binomial);

    CHECK(bounds::bound_table({}).empty());
}
