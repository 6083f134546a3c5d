#include <btlab/bigint.hpp>
#include <btlab/errors.hpp>

#include <cctype>

namespace btlab
{
    auto pow3(unsigned exponent) -> BigInt
    {
        return boost::multiprecision::pow(BigInt(3), exponent);
    }

    namespace
    {
        auto is_plain_integer(const std::string & text) -> bool
        {
            if (text.empty())
                return false;
            std::size_t start = (text[0] == '-') ? 1 : 0;
            if (start == text.size())
                return false;
            for (std::size_t i = start; i < text.size(); ++i)
                if (! std::isdigit(static_cast<unsigned char>(text[i])))
                    return false;
            return true;
        }
    }

    auto parse_decimal(const std::string & text) -> BigInt
    {
        if (! is_plain_integer(text))
            throw ParseError{"not a decimal integer: '" + text + "'"};
        return BigInt(text);
    }

    auto to_decimal(const BigInt & value) -> std::string
    {
        return value.str();
    }

    auto parse_fraction(const std::string & text) -> Rational
    {
        auto slash = text.find('/');
        if (slash == std::string::npos) {
            return Rational(parse_decimal(text));
        }
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (! is_plain_integer(num) || ! is_plain_integer(den))
            throw ParseError{"not a fraction: '" + text + "'"};
        BigInt d(den);
        if (d == 0)
            throw ParseError{"zero denominator in '" + text + "'"};
        return Rational(BigInt(num), d);
    }

    auto to_fraction(const Rational & value) -> std::string
    {
        auto num = numerator(value);
        auto den = denominator(value);
        if (den == 1)
            return num.str();
        return num.str() + "/" + den.str();
    }

    auto floor_rational(const Rational & value) -> BigInt
    {
        auto num = numerator(value);
        auto den = denominator(value); // always positive in canonical form
        BigInt q = num / den;          // truncates toward zero
        if (num % den != 0 && num < 0)
            --q;
        return q;
    }

    auto ceil_rational(const Rational & value) -> BigInt
    {
        auto num = numerator(value);
        auto den = denominator(value);
        BigInt q = num / den;
        if (num % den != 0 && num > 0)
            ++q;
        return q;
    }

    auto is_integer(const Rational & value) -> bool
    {
        return denominator(value) == 1;
    }

    auto binomial(unsigned n, unsigned k) -> BigInt
    {
        if (k > n)
            return 0;
        if (k > n - k)
            k = n - k;
        BigInt result = 1;
        for (unsigned i = 1; i <= k; ++i) {
            result *= (n - k + i);
            result /= i; // exact at every step
        }
        return result;
    }
}
