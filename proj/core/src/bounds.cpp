#include <btlab/bounds.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace btlab::bounds
{
    namespace
    {
        void require(bool condition, const char * message)
        {
            if (! condition)
                throw std::domain_error{message};
        }
    }

    auto entropy_exponent(double beta, double gamma) -> double
    {
        require(gamma > 0 && gamma <= beta && beta < 1, "entropy exponent needs 0 < gamma <= beta < 1");
        const double difference = beta - gamma;
        double tail = 0;
        if (difference > 0)
            tail = difference * std::log(difference);
        return beta * std::log(beta) - gamma * std::log(gamma) - tail;
    }

    auto boundary_exponent(double gamma) -> double
    {
        require(gamma > 0 && gamma < 0.5, "boundary exponent needs gamma in (0, 1/2)");
        return entropy_exponent(1 - gamma, gamma);
    }

    auto boundary_exponent_derivative(double gamma) -> double
    {
        require(gamma > 0 && gamma < 0.5, "boundary derivative needs gamma in (0, 1/2)");
        return 2 * std::log(1 - 2 * gamma) - std::log(gamma) - std::log(1 - gamma);
    }

    auto optimal_gamma() -> GammaOptimum
    {
        const double closed_form = (5.0 - std::sqrt(5.0)) / 10.0;

        // The derivative is strictly decreasing on (0, 1/2), so bisection is
        // unconditionally safe.
        double lo = 1e-6, hi = 0.5 - 1e-6;
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if (boundary_exponent_derivative(mid) > 0)
                lo = mid;
            else
                hi = mid;
        }
        return GammaOptimum{closed_form, 0.5 * (lo + hi)};
    }

    auto optimal_base() -> double
    {
        return std::exp(boundary_exponent(optimal_gamma().closed_form));
    }

    auto monotonicity_check(double gamma, std::span<const double> beta_grid) -> bool
    {
        bool first = true;
        double previous = 0, previous_value = 0;
        for (auto beta : beta_grid) {
            require(beta > gamma && beta <= 1 - gamma, "grid point outside (gamma, 1 - gamma]");
            if (! first) {
                require(beta > previous, "grid must be strictly increasing");
                if (entropy_exponent(beta, gamma) <= previous_value)
                    return false;
            }
            previous = beta;
            previous_value = entropy_exponent(beta, gamma);
            first = false;
        }
        return true;
    }

    auto binomial_exact(unsigned n, unsigned k) -> BigInt
    {
        if (k > n)
            throw std::domain_error{"binomial needs k <= n"};
        return binomial(n, k);
    }

    namespace
    {
        // ln of the Stirling factor sqrt(2*pi*x) * (x/e)^x.
        auto log_stirling_factor(double x) -> double
        {
            return 0.5 * std::log(2 * std::numbers::pi * x) + x * std::log(x) - x;
        }
    }

    auto stirling_binomial(double beta, double gamma, unsigned n) -> StirlingEstimate
    {
        require(beta > gamma && gamma > 0 && beta < 1, "Stirling estimate needs 0 < gamma < beta < 1");
        require(beta * n >= 1 && gamma * n >= 1, "Stirling estimate needs beta*n and gamma*n >= 1");

        const double top = beta * n;
        const double left = gamma * n;
        const double right = (beta - gamma) * n;
        const double full = std::exp(log_stirling_factor(top) - log_stirling_factor(left) - log_stirling_factor(right));

        const double base = std::exp(entropy_exponent(beta, gamma));
        const double constant = std::sqrt(beta / (2 * std::numbers::pi * gamma * (beta - gamma)));
        const double simplified = constant * std::pow(base, static_cast<double>(n)) / std::sqrt(static_cast<double>(n));

        return StirlingEstimate{full, simplified, constant};
    }

    auto alpha_interval(double beta, double gamma) -> AlphaInterval
    {
        require(beta > 0 && gamma > 0 && beta < 1 && gamma < 1, "alpha interval needs beta, gamma in (0, 1)");
        if (beta + gamma >= 1)
            throw std::domain_error{"no valid alpha: beta + gamma must be strictly below 1"};
        const double lower = 1 / (1 - beta);
        const double upper = 1 / gamma;
        return AlphaInterval{lower, upper, 0.5 * (lower + upper)};
    }

    auto bound_table(std::span<const BoundConfig> configs) -> std::vector<BoundRow>
    {
        std::vector<BoundRow> rows;
        rows.reserve(configs.size());
        for (const auto & config : configs) {
            BoundRow row;
            row.beta = config.beta;
            row.gamma = config.gamma;
            row.n = config.n;
            try {
                row.exponent = entropy_exponent(config.beta, config.gamma);
                row.base = std::exp(*row.exponent);
                row.exponent_log2 = *row.exponent / std::numbers::ln2;
                if (config.n) {
                    const double scaled_top = config.beta * *config.n;
                    const double scaled_left = config.gamma * *config.n;
                    const auto top = static_cast<unsigned>(std::llround(scaled_top));
                    const auto left = static_cast<unsigned>(std::llround(scaled_left));
                    if (std::abs(scaled_top - top) > 1e-9 || std::abs(scaled_left - left) > 1e-9)
                        throw std::domain_error{"beta*n and gamma*n must be integers"};
                    row.binomial = binomial_exact(top, left);
                    const auto estimate = stirling_binomial(config.beta, config.gamma, *config.n);
                    row.stirling = estimate.full;
                    row.ratio = row.binomial->convert_to<double>() / estimate.full;
                }
            }
            catch (const std::exception & e) {
                row.error = e.what();
            }
            rows.push_back(std::move(row));
        }
        return rows;
    }
}
